//! Invariants of a cyclic group acting on a polynomial ring by permuting
//! variables. Dimensions are characteristic-free, so everything here works
//! in the modular case where `p` divides the group order.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Polynomial;
use crate::ring::{Monomial, RingCtx};
use crate::sample::monomials_of_degree;

/// The cyclic group generated by a permutation `σ` of the variables,
/// acting by `σ(x_i) = x_{perm[i]}`.
#[derive(Clone, Debug)]
pub struct CyclicAction {
    ctx: Arc<RingCtx>,
    perm: Vec<usize>,
    order: u64,
}

impl CyclicAction {
    /// The shift `x_i ↦ x_{i+1 mod n}`.
    pub fn rotation(ctx: &Arc<RingCtx>) -> Result<Self> {
        let n = ctx.nvars();
        Self::from_permutation(ctx, (0..n).map(|i| (i + 1) % n).collect())
    }

    pub fn from_permutation(ctx: &Arc<RingCtx>, perm: Vec<usize>) -> Result<Self> {
        if ctx.has_modulus() {
            return Err(Error::InvalidRing("invariants are computed in a polynomial ring".into()));
        }
        let n = ctx.nvars();
        if perm.len() != n {
            return Err(Error::InvalidArgument(format!(
                "permutation has {} entries, ring has {n} variables",
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &j in &perm {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
        }
        let order = cycle_lengths(&perm).into_iter().fold(1u64, |acc, l| lcm(acc, l as u64));
        Ok(CyclicAction { ctx: Arc::clone(ctx), perm, order })
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The permutation of `σ^k`.
    fn power(&self, k: u64) -> Vec<usize> {
        (0..self.perm.len()).map(|i| (0..k).fold(i, |j, _| self.perm[j])).collect()
    }

    fn apply_monomial(perm: &[usize], m: &Monomial) -> Monomial {
        let mut exps = vec![0u32; perm.len()];
        for (i, &e) in m.exps().iter().enumerate() {
            exps[perm[i]] = e;
        }
        Monomial::new(&exps)
    }

    /// The σ-orbit of `m`.
    pub fn orbit(&self, m: &Monomial) -> Vec<Monomial> {
        let mut out = vec![m.clone()];
        loop {
            let next = Self::apply_monomial(&self.perm, out.last().unwrap());
            if &next == m {
                return out;
            }
            out.push(next);
        }
    }
}

fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `σ^k(f)`; negative `k` applies the inverse.
pub fn apply_action(f: &Polynomial, act: &CyclicAction, k: i64) -> Result<Polynomial> {
    let f = f.in_ctx(&act.ctx)?;
    let perm = act.power(k.rem_euclid(act.order as i64) as u64);
    Ok(f.map_monomials(&act.ctx, |m| CyclicAction::apply_monomial(&perm, m)))
}

pub fn is_invariant(f: &Polynomial, act: &CyclicAction) -> Result<bool> {
    Ok(apply_action(f, act, 1)? == f.in_ctx(&act.ctx)?)
}

/// A σ-orbit of monomials with its lex-least exponent vector as
/// representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub representative: Monomial,
    pub members: Vec<Monomial>,
}

impl Orbit {
    pub fn sum(&self, ctx: &Arc<RingCtx>) -> Polynomial {
        Polynomial::from_terms(ctx, self.members.iter().map(|m| (m.clone(), 1)))
    }
}

/// Orbits of degree-`d` monomials, ordered by their largest member in the
/// ring's monomial order, descending.
pub fn orbits(act: &CyclicAction, d: u32) -> Vec<Orbit> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in monomials_of_degree(&act.ctx, d) {
        if seen.contains(&m) {
            continue;
        }
        let members = act.orbit(&m);
        seen.extend(members.iter().cloned());
        let representative = members.iter().min_by(|a, b| a.exps().cmp(b.exps())).unwrap().clone();
        out.push(Orbit { representative, members });
    }
    out
}

/// Orbit sums of degree `d`: a basis of the degree-`d` invariants.
pub fn orbit_sum_basis(act: &CyclicAction, d: u32) -> Vec<Polynomial> {
    orbits(act, d).iter().map(|o| o.sum(&act.ctx)).collect()
}

/// Number of degree-`d` monomials fixed by a permutation with the given
/// cycle lengths: exponents are constant on cycles.
fn fixed_monomials(cycles: &[usize], d: u32) -> u128 {
    let d = d as usize;
    let mut ways = vec![0u128; d + 1];
    ways[0] = 1;
    for &len in cycles {
        for t in len..=d {
            ways[t] += ways[t - len];
        }
    }
    ways[d]
}

/// Dimension of the degree-`d` invariants by Burnside's lemma.
pub fn hilbert_burnside(act: &CyclicAction, d: u32) -> u64 {
    let total: u128 = (0..act.order).map(|k| fixed_monomials(&cycle_lengths(&act.power(k)), d)).sum();
    (total / act.order as u128) as u64
}

/// Row echelon form over GF(p), filled one vector at a time.
struct Echelon {
    field: PrimeField,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    fn new(field: PrimeField) -> Self {
        Echelon { field, rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    fn insert(&mut self, mut v: Vec<u32>) -> bool {
        let k = self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = k.sub(*x, k.mul(c, r));
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = k.inv(v[pivot]);
        v.iter_mut().for_each(|x| *x = k.mul(*x, inv));
        for (_, row) in &mut self.rows {
            let c = row[pivot];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = k.sub(*x, k.mul(c, r));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Dimension of the kernel of `σ - id` on degree-`d` forms, by exact rank
/// computation over GF(p).
pub fn hilbert_linear(act: &CyclicAction, d: u32) -> u64 {
    let basis = monomials_of_degree(&act.ctx, d);
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let k = act.ctx.field();
    let mut ech = Echelon::new(k);
    for m in &basis {
        let mut col = vec![0u32; basis.len()];
        let image = CyclicAction::apply_monomial(&act.perm, m);
        col[index[&image]] = k.add(col[index[&image]], 1);
        col[index[m]] = k.sub(col[index[m]], 1);
        ech.insert(col);
    }
    (basis.len() - ech.rank()) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeSpan {
    pub degree: u32,
    /// Dimension of the span of products of generators in this degree.
    pub span: u64,
    /// Dimension of all invariants in this degree.
    pub expected: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    pub degrees: Vec<DegreeSpan>,
    pub first_deficient: Option<u32>,
}

impl GenerationReport {
    pub fn success(&self) -> bool {
        self.first_deficient.is_none()
    }
}

/// Compares, degree by degree up to `max_degree`, the span of products of
/// `gens` (together with the constants) against the invariants. Generators
/// must be invariant and homogeneous.
pub fn generates_up_to(act: &CyclicAction, gens: &[Polynomial], max_degree: u32) -> Result<GenerationReport> {
    let mut graded: Vec<(u32, Polynomial)> = Vec::new();
    for g in gens {
        let g = g.in_ctx(&act.ctx)?;
        if !is_invariant(&g, act)? {
            return Err(Error::NotInvariant(g.to_string()));
        }
        if !g.is_homogeneous() {
            return Err(Error::InvalidArgument(format!("generator {g} is not homogeneous")));
        }
        match g.total_degree() {
            Some(d) if d > 0 => graded.push((d as u32, g)),
            _ => {}
        }
    }

    let k = act.ctx.field();
    // spanning sets of the subalgebra, degree by degree
    let mut spans: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(&act.ctx)]];
    let mut degrees = vec![DegreeSpan { degree: 0, span: 1, expected: 1 }];
    let mut first_deficient = None;
    for d in 1..=max_degree {
        let basis = monomials_of_degree(&act.ctx, d);
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = Echelon::new(k);
        let mut kept = Vec::new();
        for (e, g) in &graded {
            if *e > d {
                continue;
            }
            for a in &spans[(d - e) as usize] {
                let prod = g * a;
                let mut v = vec![0u32; basis.len()];
                for (m, c) in prod.terms() {
                    v[index[m]] = *c;
                }
                if ech.insert(v) {
                    kept.push(prod);
                }
            }
        }
        let span = ech.rank() as u64;
        let expected = hilbert_burnside(act, d);
        if span < expected && first_deficient.is_none() {
            first_deficient = Some(d);
        }
        degrees.push(DegreeSpan { degree: d, span, expected });
        spans.push(kept);
    }
    Ok(GenerationReport { degrees, first_deficient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::MonomialOrder;

    fn bertin() -> CyclicAction {
        let ctx = RingCtx::new(2, &["x0", "x1", "x2", "x3"], MonomialOrder::Grevlex).unwrap();
        CyclicAction::rotation(&ctx).unwrap()
    }

    fn poly(act: &CyclicAction, s: &str) -> Polynomial {
        parse_poly(s, act.ctx()).unwrap()
    }

    #[test]
    fn shift_and_order() {
        let act = bertin();
        assert_eq!(act.order(), 4);
        let x0 = poly(&act, "x0");
        assert_eq!(apply_action(&x0, &act, 1).unwrap(), poly(&act, "x1"));
        assert_eq!(apply_action(&x0, &act, -1).unwrap(), poly(&act, "x3"));
        let f = poly(&act, "x0^3*x1+x2*x3+1");
        assert_eq!(apply_action(&f, &act, 4).unwrap(), f);
        let fixed = poly(&act, "x0*x2+x1*x3");
        assert_eq!(apply_action(&fixed, &act, 1).unwrap(), fixed);
    }

    #[test]
    fn invariance() {
        let act = bertin();
        assert!(is_invariant(&poly(&act, "x0+x1+x2+x3"), &act).unwrap());
        assert!(!is_invariant(&poly(&act, "x0"), &act).unwrap());
        assert!(is_invariant(&poly(&act, "x0*x2+x1*x3"), &act).unwrap());
    }

    #[test]
    fn permutation_order_is_lcm_of_cycles() {
        let ctx = RingCtx::new(3, &["a", "b", "c", "d", "e"], MonomialOrder::Grevlex).unwrap();
        let act = CyclicAction::from_permutation(&ctx, vec![1, 0, 3, 4, 2]).unwrap();
        assert_eq!(act.order(), 6);
        assert!(CyclicAction::from_permutation(&ctx, vec![0, 0, 1, 2, 3]).is_err());
    }

    #[test]
    fn orbit_sums_low_degree() {
        let act = bertin();
        let show = |d| orbit_sum_basis(&act, d).iter().map(|f| f.to_string()).collect::<Vec<_>>();
        assert_eq!(show(0), ["1"]);
        assert_eq!(show(1), ["x0+x1+x2+x3"]);
        assert_eq!(show(2), ["x0^2+x1^2+x2^2+x3^2", "x0*x1+x1*x2+x0*x3+x2*x3", "x0*x2+x1*x3"]);
        let reps: Vec<_> = orbits(&act, 2).into_iter().map(|o| o.representative).collect();
        assert_eq!(reps[2], Monomial::new(&[0, 1, 0, 1]));
    }

    #[test]
    fn hilbert_values() {
        let act = bertin();
        let expected = [1, 1, 3, 5, 10, 14, 22, 30, 43];
        for (d, &want) in expected.iter().enumerate() {
            let d = d as u32;
            assert_eq!(hilbert_burnside(&act, d), want);
            assert_eq!(hilbert_linear(&act, d), want);
            assert_eq!(orbit_sum_basis(&act, d).len() as u64, want);
        }
    }

    #[test]
    fn generation_checks() {
        let act = bertin();
        let e1 = poly(&act, "x0+x1+x2+x3");
        let report = generates_up_to(&act, std::slice::from_ref(&e1), 2).unwrap();
        assert_eq!(report.first_deficient, Some(2));
        assert_eq!(report.degrees[2], DegreeSpan { degree: 2, span: 1, expected: 3 });

        assert!(generates_up_to(&act, &[], 0).unwrap().success());

        let all: Vec<_> = (1..=3).flat_map(|d| orbit_sum_basis(&act, d)).collect();
        assert!(generates_up_to(&act, &all, 3).unwrap().success());

        let err = generates_up_to(&act, &[poly(&act, "x0")], 2).unwrap_err();
        assert!(matches!(err, Error::NotInvariant(_)));
    }
}
