//! Buchberger's algorithm and the ideal operations built on it.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{Monomial, MonomialOrder, RingCtx};

/// A reduced Gröbner basis: monic elements, no term of any element divisible
/// by another element's leading monomial. Sorted by descending leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.elements.iter().map(|g| g.leading_monomial().unwrap()).collect()
    }

    /// Every S-polynomial reduces to zero modulo the basis.
    pub fn satisfies_buchberger_criterion(&self) -> Result<bool> {
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j]);
                if !s.remainder(&self.elements)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// No term of any element is divisible by another element's leading
    /// monomial, and every element is monic.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.elements.iter().enumerate().all(|(i, g)| {
            g.leading_coeff() == Some(1)
                && g.terms().iter().all(|(m, _)| lms.iter().enumerate().all(|(j, lm)| j == i || !lm.divides(m)))
        })
    }
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let k = f.ctx().field();
    let (lf, cf) = f.leading_term().expect("nonzero");
    let (lg, cg) = g.leading_term().expect("nonzero");
    let l = lf.lcm(lg);
    let a = f.mul_term(&l.div(lf).unwrap(), k.inv(cf));
    let b = g.mul_term(&l.div(lg).unwrap(), k.inv(cg));
    &a - &b
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `polys` in their ambient
/// polynomial ring. Uses the coprime-leading-monomial and chain criteria with
/// normal (lowest lcm first) pair selection.
pub fn groebner_basis(ctx: &Arc<RingCtx>, polys: &[Polynomial]) -> Result<GroebnerBasis> {
    let limits = ctx.limits();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();

    let add = |basis: &mut Vec<Polynomial>, pending: &mut Vec<Pair>, g: Polynomial| {
        let g = g.monic();
        let lm = g.leading_monomial().unwrap().clone();
        let new = basis.len();
        for (i, b) in basis.iter().enumerate() {
            pending.push(Pair { i, j: new, lcm: b.leading_monomial().unwrap().lcm(&lm) });
        }
        basis.push(g);
    };

    for f in polys {
        ctx.check_compatible(f.ctx())?;
        let f = f.in_ctx(&ctx.polynomial_ring())?;
        let r = f.remainder(&basis)?;
        if !r.is_zero() {
            if r.is_constant() {
                return Ok(unit_basis(ctx));
            }
            add(&mut basis, &mut pending, r);
        }
    }

    let mut processed = 0usize;
    while !pending.is_empty() {
        let idx = select_pair(ctx, &pending);
        let pair = pending.swap_remove(idx);
        let (lmi, lmj) = (basis[pair.i].leading_monomial().unwrap(), basis[pair.j].leading_monomial().unwrap());
        if lmi.is_coprime(lmj) || chain_criterion(&basis, &pending, &pair) {
            continue;
        }
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::ResourceBound(format!("Buchberger exceeded {} S-pair reductions", limits.max_pairs)));
        }
        ctx.check_degree(pair.lcm.degree())?;
        let s = s_polynomial(&basis[pair.i], &basis[pair.j]);
        let r = s.remainder(&basis)?;
        if !r.is_zero() {
            if r.is_constant() {
                return Ok(unit_basis(ctx));
            }
            add(&mut basis, &mut pending, r);
        }
    }

    Ok(GroebnerBasis { elements: reduce_basis(basis)?, order: ctx.order().clone() })
}

fn unit_basis(ctx: &Arc<RingCtx>) -> GroebnerBasis {
    GroebnerBasis { elements: vec![Polynomial::one(&ctx.polynomial_ring())], order: ctx.order().clone() }
}

fn select_pair(ctx: &RingCtx, pending: &[Pair]) -> usize {
    let mut best = 0;
    for (idx, p) in pending.iter().enumerate().skip(1) {
        let b = &pending[best];
        let better = p
            .lcm
            .degree()
            .cmp(&b.lcm.degree())
            .then_with(|| ctx.cmp_monomials(&p.lcm, &b.lcm))
            .then_with(|| (p.j, p.i).cmp(&(b.j, b.i)))
            .is_lt();
        if better {
            best = idx;
        }
    }
    best
}

/// Skip (i, j) if some k has lm_k | lcm(i, j) and neither (i, k) nor (j, k)
/// is still pending.
fn chain_criterion(basis: &[Polynomial], pending: &[Pair], pair: &Pair) -> bool {
    let is_pending = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        pending.iter().any(|p| p.i == a && p.j == b)
    };
    (0..basis.len()).any(|k| {
        k != pair.i
            && k != pair.j
            && basis[k].leading_monomial().unwrap().divides(&pair.lcm)
            && !is_pending(pair.i, k)
            && !is_pending(pair.j, k)
    })
}

fn reduce_basis(basis: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    // minimalize
    let mut keep: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading_monomial().unwrap();
            j != i && lh.divides(lm) && (lh != lm || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Polynomial> =
            keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        out.push(keep[i].remainder(&others)?.monic());
    }
    if let Some(first) = out.first() {
        let ctx = Arc::clone(first.ctx());
        out.sort_by(|a, b| ctx.cmp_monomials(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    }
    Ok(out)
}

/// The unique remainder of `f` modulo a Gröbner basis.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    f.remainder(&gb.elements)
}

/// A finitely generated ideal. In a quotient context S/(F) it denotes the
/// image of its generators; all computations run on the preimage with F
/// adjoined.
#[derive(Debug)]
pub struct Ideal {
    ctx: Arc<RingCtx>,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { ctx: Arc::clone(&self.ctx), gens: self.gens.clone(), gb }
    }
}

impl Ideal {
    /// Zero generators are pruned.
    pub fn new(ctx: &Arc<RingCtx>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            let g = g.in_ctx(ctx)?;
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(Ideal { ctx: Arc::clone(ctx), gens: kept, gb: OnceLock::new() })
    }

    pub fn principal(f: &Polynomial) -> Self {
        Ideal::new(f.ctx(), vec![f.clone()]).expect("same context")
    }

    pub fn unit(ctx: &Arc<RingCtx>) -> Self {
        Ideal::new(ctx, vec![Polynomial::one(ctx)]).expect("same context")
    }

    pub fn zero(ctx: &Arc<RingCtx>) -> Self {
        Ideal::new(ctx, Vec::new()).expect("same context")
    }

    fn with_basis(ctx: &Arc<RingCtx>, gb: GroebnerBasis) -> Self {
        let gens = gb.elements.iter().map(|g| g.in_ctx(ctx).unwrap()).collect();
        let cell = OnceLock::new();
        let _ = cell.set(gb);
        Ideal { ctx: Arc::clone(ctx), gens, gb: cell }
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Generators of the preimage in the ambient polynomial ring.
    pub fn ambient_gens(&self) -> Vec<Polynomial> {
        let s = self.ctx.polynomial_ring();
        let mut out: Vec<Polynomial> = self.gens.iter().map(|g| g.in_ctx(&s).unwrap()).collect();
        if let Some(f) = self.ctx.modulus() {
            out.push(f);
        }
        out
    }

    /// Reduced Gröbner basis of the preimage, computed once.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = groebner_basis(&self.ctx, &self.ambient_gens())?;
        Ok(self.gb.get_or_init(|| gb))
    }

    /// Membership in this ideal of the ring it lives in.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.ctx.check_compatible(f.ctx())?;
        if f.is_zero() {
            return Ok(true);
        }
        let f = f.in_ctx(&self.ctx.polynomial_ring())?;
        Ok(normal_form(&f, self.groebner()?)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality by mutual membership of generators.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }
}

/// Reduced Gröbner basis of an ideal (of its preimage, for quotients).
pub fn buchberger(ideal: &Ideal) -> Result<GroebnerBasis> {
    ideal.groebner().cloned()
}

/// Membership in the ideal of the ambient polynomial ring generated by
/// `ideal`'s generators, ignoring any modulus.
pub fn ideal_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    let s = ideal.ctx().polynomial_ring();
    let plain = Ideal::new(&s, ideal.gens().to_vec())?;
    plain.contains(f)
}

/// `f ∈ I + (F)` where `F` is the modulus of `ctx`.
pub fn quotient_member(f: &Polynomial, ideal: &Ideal, ctx: &Arc<RingCtx>) -> Result<bool> {
    if !ctx.has_modulus() {
        return Err(Error::InvalidArgument("quotient membership needs a modulus".into()));
    }
    let lifted = Ideal::new(ctx, ideal.gens().to_vec())?;
    lifted.contains(f)
}

/// Generators of `I ∩ J`, by eliminating `t` from `t I + (1 - t) J`.
pub fn ideal_intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.ctx().check_compatible(j.ctx())?;
    let ctx = i.ctx();
    let elim = ctx.elimination_ring();
    let n = ctx.nvars();
    let lift = |f: &Polynomial| {
        f.map_monomials(&elim, |m| {
            let mut e = Monomial::one(n + 1);
            e.0[1..].copy_from_slice(&m.0);
            e
        })
    };
    let t = Polynomial::var(&elim, 0);
    let one_minus_t = &Polynomial::one(&elim) - &t;
    let mut gens = Vec::new();
    for f in i.ambient_gens() {
        gens.push(&t * &lift(&f));
    }
    for g in j.ambient_gens() {
        gens.push(&one_minus_t * &lift(&g));
    }
    let gb = groebner_basis(&elim, &gens)?;
    let s = ctx.polynomial_ring();
    let kept: Vec<Polynomial> = gb
        .elements
        .iter()
        .filter(|g| g.degree_in(0) == 0)
        .map(|g| g.map_monomials(&s, |m| Monomial::new(&m.0[1..])))
        .collect();
    let basis = GroebnerBasis { elements: kept, order: ctx.order().clone() };
    Ok(Ideal::with_basis(ctx, basis))
}

/// Result of a colon computation. `degenerate` marks the `(I : 0) = R`
/// convention.
#[derive(Clone, Debug)]
pub struct ColonIdeal {
    pub ideal: Ideal,
    pub degenerate: bool,
}

/// `(I : f) = { g : g f ∈ I }`, computed as `(I ∩ (f)) / f`.
pub fn colon_ideal(ideal: &Ideal, f: &Polynomial) -> Result<ColonIdeal> {
    let ctx = ideal.ctx();
    ctx.check_compatible(f.ctx())?;
    let f_in_ctx = f.in_ctx(ctx)?;
    if Ideal::zero(ctx).contains(&f_in_ctx)? {
        return Ok(ColonIdeal { ideal: Ideal::unit(ctx), degenerate: true });
    }
    let s = ctx.polynomial_ring();
    let f_s = f.in_ctx(&s)?;
    let preimage = Ideal::new(&s, ideal.ambient_gens())?;
    let inter = ideal_intersect(&preimage, &Ideal::principal(&f_s))?;
    let mut gens = Vec::with_capacity(inter.gens().len());
    for g in inter.gens() {
        let q = g.in_ctx(&s)?.div_exact(&f_s)?.expect("every element of I ∩ (f) is a multiple of f");
        gens.push(q);
    }
    let gb = groebner_basis(ctx, &{
        let mut all = gens;
        if let Some(m) = ctx.modulus() {
            all.push(m);
        }
        all
    })?;
    Ok(ColonIdeal { ideal: Ideal::with_basis(ctx, gb), degenerate: false })
}

/// The bracket power `I^[p^e]`, generated by the `p^e`-th powers of the
/// generators.
pub fn frobenius_power_ideal(ideal: &Ideal, e: u32) -> Result<Ideal> {
    let gens = ideal.gens().iter().map(|g| g.frobenius_power(e)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ctx(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_list};

    fn ring(p: u32, vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(p, vars, MonomialOrder::Grevlex).unwrap()
    }

    fn pp(ctx: &Arc<RingCtx>, s: &str) -> Polynomial {
        parse_poly(s, ctx).unwrap()
    }

    fn ideal(ctx: &Arc<RingCtx>, s: &str) -> Ideal {
        Ideal::new(ctx, parse_poly_list(s, ctx).unwrap()).unwrap()
    }

    fn strs(gb: &GroebnerBasis) -> Vec<String> {
        gb.elements().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn singleton_is_its_own_basis() {
        let r = ring(2, &["x", "y", "z"]);
        let gb = buchberger(&ideal(&r, "x*y-z^2")).unwrap();
        assert_eq!(strs(&gb), ["x*y+z^2"]);
    }

    #[test]
    fn quintic_with_linear_forms() {
        let r = ring(11, &["x", "y", "z", "u", "v"]);
        let gb = buchberger(&ideal(&r, "y,z,u,v,x^5+y^5+z^5+u^5+v^5")).unwrap();
        assert_eq!(strs(&gb), ["x^5", "y", "z", "u", "v"]);
        assert!(gb.is_reduced());
    }

    #[test]
    fn monomial_pair_basis() {
        let r = ring(2, &["x", "y"]);
        let gb = buchberger(&ideal(&r, "x^2,x*y")).unwrap();
        assert_eq!(strs(&gb), ["x^2", "x*y"]);
        assert!(gb.satisfies_buchberger_criterion().unwrap());
    }

    #[test]
    fn cyclic_three_basis_is_valid() {
        let r = ring(7, &["a", "b", "c"]);
        let i = ideal(&r, "a+b+c,a*b+b*c+c*a,a*b*c-1");
        let gb = buchberger(&i).unwrap();
        assert!(gb.satisfies_buchberger_criterion().unwrap());
        assert!(gb.is_reduced());
        for g in i.gens() {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn unit_ideal_detected() {
        let r = ring(3, &["x", "y"]);
        let gb = buchberger(&ideal(&r, "x*y-1,x")).unwrap();
        assert!(gb.is_unit());
        assert_eq!(strs(&gb), ["1"]);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(11, &["x", "y", "z", "u", "v"]);
        let i = ideal(&r, "y,z,u,v,x^5+y^5+z^5+u^5+v^5");
        let gb = buchberger(&i).unwrap();
        assert_eq!(normal_form(&pp(&r, "x^4"), &gb).unwrap(), pp(&r, "x^4"));
        assert!(normal_form(&pp(&r, "x^5"), &gb).unwrap().is_zero());
        assert!(!ideal_member(&pp(&r, "x^4"), &i).unwrap());
        assert!(ideal_member(&pp(&r, "x^5"), &i).unwrap());
        assert!(ideal_member(&Polynomial::zero(&r), &i).unwrap());
    }

    #[test]
    fn quotient_membership() {
        let s = ring(11, &["x", "y", "z", "u", "v"]);
        let q = s.with_modulus(&pp(&s, "x^5+y^5+z^5+u^5+v^5")).unwrap();
        let i = ideal(&q, "y,z,u,v");
        assert!(quotient_member(&pp(&q, "x^5"), &i, &q).unwrap());
        assert!(!quotient_member(&pp(&q, "x^4"), &i, &q).unwrap());
        assert!(quotient_member(&pp(&q, "x^5+y^5+z^5+u^5+v^5"), &Ideal::zero(&q), &q).unwrap());
        assert!(quotient_member(&pp(&q, "x"), &i, &s).is_err());
    }

    #[test]
    fn intersections() {
        let r = ring(2, &["x", "y"]);
        let gens = |i: &Ideal| i.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>();
        assert_eq!(gens(&ideal_intersect(&ideal(&r, "x"), &ideal(&r, "y")).unwrap()), ["x*y"]);
        assert_eq!(gens(&ideal_intersect(&ideal(&r, "x*y^2"), &ideal(&r, "x^2*y")).unwrap()), ["x^2*y^2"]);
        let f = ideal(&r, "x^2+x*y+1");
        assert_eq!(gens(&ideal_intersect(&f, &f).unwrap()), ["x^2+x*y+1"]);
        assert!(ideal_intersect(&Ideal::zero(&r), &f).unwrap().gens().is_empty());
    }

    #[test]
    fn colons() {
        let r = ring(2, &["x", "y"]);
        let c = colon_ideal(&ideal(&r, "x*y"), &pp(&r, "x")).unwrap();
        assert!(!c.degenerate);
        assert!(c.ideal.same_ideal(&ideal(&r, "y")).unwrap());
        let c = colon_ideal(&ideal(&r, "x*y^2"), &pp(&r, "x^2*y")).unwrap();
        assert!(c.ideal.same_ideal(&ideal(&r, "y")).unwrap());
        let c = colon_ideal(&ideal(&r, "x"), &Polynomial::zero(&r)).unwrap();
        assert!(c.degenerate);
        assert!(c.ideal.is_unit().unwrap());
    }

    #[test]
    fn colon_in_quintic_quotient_of_polynomial_ring() {
        let r = ring(11, &["x", "y", "z", "u", "v"]);
        let i = ideal(&r, "y,z,u,v,x^5+y^5+z^5+u^5+v^5");
        let c = colon_ideal(&i, &pp(&r, "x^4")).unwrap();
        assert!(c.ideal.same_ideal(&ideal(&r, "x,y,z,u,v")).unwrap());
    }

    #[test]
    fn colon_in_quotient_ring() {
        let s = ring(2, &["x", "y", "z"]);
        let q = s.with_modulus(&pp(&s, "x*y+z^2")).unwrap();
        let c = colon_ideal(&ideal(&q, "x"), &pp(&q, "z")).unwrap();
        assert!(c.ideal.same_ideal(&ideal(&q, "x,z")).unwrap());
        // z^2 = xy vanishes nowhere in R, but F itself is zero there
        assert!(colon_ideal(&ideal(&q, "x"), &pp(&q, "x*y+z^2")).unwrap().degenerate);
    }

    #[test]
    fn bracket_powers() {
        let r = ring(2, &["x", "y", "z"]);
        let b = frobenius_power_ideal(&ideal(&r, "y,z"), 2).unwrap();
        assert_eq!(b.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["y^4", "z^4"]);
        let b = frobenius_power_ideal(&ideal(&r, "x+y"), 1).unwrap();
        assert_eq!(b.gens()[0].to_string(), "x^2+y^2");
        let r11 = ring(11, &["x", "y", "z", "u", "v"]);
        let b = frobenius_power_ideal(&ideal(&r11, "y,z,u,v"), 1).unwrap();
        assert_eq!(b.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["y^11", "z^11", "u^11", "v^11"]);
    }

    #[test]
    fn resource_bound_is_reported() {
        let r = ring(7, &["a", "b", "c", "d"]).with_limits(crate::ring::Limits { max_pairs: 3, ..Default::default() });
        let i = ideal(&r, "a+b+c+d,a*b+b*c+c*d+d*a,a*b*c+b*c*d+c*d*a+d*a*b,a*b*c*d-1");
        assert!(matches!(buchberger(&i), Err(Error::ResourceBound(_))));
    }
}
