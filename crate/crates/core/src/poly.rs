//! Sparse multivariate polynomials over GF(p).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::ring::{Monomial, RingCtx};

/// A polynomial in `GF(p)[vars]`. Terms are kept sorted in strictly
/// descending monomial order with no zero coefficients, so structural
/// equality is polynomial equality.
#[derive(Clone)]
pub struct Polynomial {
    ctx: Arc<RingCtx>,
    terms: Vec<(Monomial, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic; fails when the operands live in different rings.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    f.ctx.check_compatible(&g.ctx)?;
    Ok(match op {
        ArithOp::Add => f + g,
        ArithOp::Sub => f - g,
        ArithOp::Mul => f * g,
    })
}

impl Polynomial {
    pub fn zero(ctx: &Arc<RingCtx>) -> Self {
        Polynomial { ctx: Arc::clone(ctx), terms: Vec::new() }
    }

    pub fn one(ctx: &Arc<RingCtx>) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: &Arc<RingCtx>, c: u32) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.nvars()), c)
    }

    pub fn var(ctx: &Arc<RingCtx>, i: usize) -> Self {
        Self::monomial(ctx, Monomial::variable(ctx.nvars(), i), 1)
    }

    pub fn var_named(ctx: &Arc<RingCtx>, name: &str) -> Result<Self> {
        let i = ctx.var_index(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        Ok(Self::var(ctx, i))
    }

    pub fn monomial(ctx: &Arc<RingCtx>, m: Monomial, c: u32) -> Self {
        assert_eq!(m.nvars(), ctx.nvars(), "monomial arity does not match ring");
        let c = ctx.field().reduce(c as u64);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { ctx: Arc::clone(ctx), terms }
    }

    /// Builds a canonical polynomial from arbitrary terms: coefficients are
    /// reduced, like terms combined and zeros dropped.
    pub fn from_terms<I>(ctx: &Arc<RingCtx>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let k = ctx.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ctx.nvars(), "monomial arity does not match ring");
            let e = acc.entry(m).or_insert(0);
            *e = k.add(*e, k.reduce(c as u64));
        }
        Self::from_map(ctx, acc)
    }

    fn from_map(ctx: &Arc<RingCtx>, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| ctx.cmp_monomials(&b.0, &a.0));
        Polynomial { ctx: Arc::clone(ctx), terms }
    }

    /// Terms must already be canonical and sorted descending.
    pub(crate) fn from_sorted_terms(ctx: Arc<RingCtx>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ctx.cmp_monomials(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Polynomial { ctx, terms }
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    /// The same polynomial viewed in a compatible ring context.
    pub fn in_ctx(&self, ctx: &Arc<RingCtx>) -> Result<Self> {
        self.ctx.check_compatible(ctx)?;
        Ok(Polynomial { ctx: Arc::clone(ctx), terms: self.terms.clone() })
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    /// Number of terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    /// Zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.terms.first().map(|(_, c)| *c)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        let c = self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| *c).unwrap_or(0);
        self.ctx.field().element(c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: u32) -> Self {
        let k = self.ctx.field();
        let c = k.reduce(c as u64);
        if c == 0 {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), k.mul(*a, c))).collect();
        Polynomial { ctx: Arc::clone(&self.ctx), terms }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Self {
        let k = self.ctx.field();
        let c = k.reduce(c as u64);
        if c == 0 {
            return Self::zero(&self.ctx);
        }
        // monomial orders are multiplicative, so the order is preserved
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), k.mul(*a, c))).collect();
        Polynomial { ctx: Arc::clone(&self.ctx), terms }
    }

    /// Normalizes the leading coefficient to 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(self.ctx.field().inv(lc)),
        }
    }

    pub fn pow(&self, mut k: u64) -> Result<Self> {
        if let Some(d) = self.total_degree() {
            self.ctx.check_degree(d.saturating_mul(k))?;
        }
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `f^(p^e)`: exponents scale by `p^e`; coefficients are fixed because
    /// Frobenius is the identity on GF(p).
    pub fn frobenius_power(&self, e: u32) -> Result<Self> {
        if e == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        let q = (self.ctx.characteristic() as u64)
            .checked_pow(e)
            .filter(|q| *q <= u32::MAX as u64)
            .ok_or(Error::DegreeBound { degree: u64::MAX, max: self.ctx.limits().max_degree })?;
        let deg = self.total_degree().unwrap_or(0);
        self.ctx.check_degree(deg.saturating_mul(q))?;
        let q = q as u32;
        let terms = self.terms.iter().map(|(m, c)| (m.scale(q), *c)).collect();
        Ok(Polynomial { ctx: Arc::clone(&self.ctx), terms })
    }

    /// The unique `g` with `g^p = self`, if every exponent is divisible by p.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.ctx.characteristic();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.0.iter().any(|e| e % p != 0) {
                return None;
            }
            terms.push((Monomial(m.0.iter().map(|e| e / p).collect()), *c));
        }
        Some(Polynomial { ctx: Arc::clone(&self.ctx), terms })
    }

    /// Division with remainder by an ordered list of divisors:
    /// `self = sum q_i d_i + r` with no term of `r` divisible by any leading
    /// monomial. The first divisor whose leading monomial divides wins.
    pub fn divide(&self, divisors: &[Polynomial]) -> Result<(Vec<Polynomial>, Polynomial)> {
        for d in divisors {
            self.ctx.check_compatible(&d.ctx)?;
            if d.is_zero() {
                return Err(Error::ZeroDivisor);
            }
        }
        let (q, r) = reduce(self, divisors, true)?;
        Ok((q.unwrap_or_default(), r))
    }

    /// Remainder only.
    pub fn remainder(&self, divisors: &[Polynomial]) -> Result<Polynomial> {
        for d in divisors {
            if d.is_zero() {
                return Err(Error::ZeroDivisor);
            }
        }
        Ok(reduce(self, divisors, false)?.1)
    }

    /// `self / d` when `d` divides `self` exactly, `None` otherwise.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        let (mut q, r) = self.divide(std::slice::from_ref(d))?;
        Ok(r.is_zero().then(|| q.pop().unwrap()))
    }

    pub fn divides(&self, f: &Polynomial) -> Result<bool> {
        if self.is_zero() {
            return Ok(f.is_zero());
        }
        Ok(f.div_exact(self)?.is_some())
    }

    /// Coefficients with respect to `var`: entry `i` is the coefficient of
    /// `var^i`, a polynomial not involving `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut rest = m.clone();
            rest.0[var] = 0;
            buckets[e].push((rest, *c));
        }
        buckets.into_iter().map(|t| Polynomial::from_sorted_or_sort(&self.ctx, t)).collect()
    }

    fn from_sorted_or_sort(ctx: &Arc<RingCtx>, mut terms: Vec<(Monomial, u32)>) -> Self {
        if !terms.windows(2).all(|w| ctx.cmp_monomials(&w[0].0, &w[1].0) == Ordering::Greater) {
            terms.sort_unstable_by(|a, b| ctx.cmp_monomials(&b.0, &a.0));
        }
        Polynomial { ctx: Arc::clone(ctx), terms }
    }

    /// Applies a map on exponent vectors, landing in `target`.
    pub fn map_monomials<F>(&self, target: &Arc<RingCtx>, f: F) -> Polynomial
    where
        F: Fn(&Monomial) -> Monomial,
    {
        Polynomial::from_terms(target, self.terms.iter().map(|(m, c)| (f(m), *c)))
    }

    fn add_impl(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert!(
            self.ctx.compatible(&other.ctx),
            "polynomial arithmetic across incompatible rings: {} vs {}",
            self.ctx,
            other.ctx
        );
        let k = self.ctx.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.ctx.cmp_monomials(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { k.neg(b[j].1) } else { b[j].1 };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { k.sub(a[i].1, b[j].1) } else { k.add(a[i].1, b[j].1) };
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate { k.neg(*c) } else { *c })));
        Polynomial { ctx: Arc::clone(&self.ctx), terms: out }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        assert!(
            self.ctx.compatible(&other.ctx),
            "polynomial arithmetic across incompatible rings: {} vs {}",
            self.ctx,
            other.ctx
        );
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, self.terms[0].1).with_ctx_of(self);
        }
        let k = self.ctx.field();
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len().saturating_mul(other.terms.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = k.add(*e, k.mul(*ca, *cb));
            }
        }
        Polynomial::from_map(&self.ctx, acc)
    }

    fn with_ctx_of(mut self, other: &Polynomial) -> Polynomial {
        self.ctx = Arc::clone(&other.ctx);
        self
    }
}

/// The reduction engine behind division and normal forms. Pending terms live
/// in an ordered map keyed by an order-preserving encoding, so each monomial
/// is handled once, largest first.
pub(crate) fn reduce(
    f: &Polynomial,
    divisors: &[Polynomial],
    track_quotients: bool,
) -> Result<(Option<Vec<Polynomial>>, Polynomial)> {
    let ctx = &f.ctx;
    let order = ctx.order();
    let n = ctx.nvars();
    let k = ctx.field();
    let max_degree = ctx.limits().max_degree as u64;

    let lms: Vec<&Monomial> = divisors.iter().map(|d| d.leading_monomial().expect("nonzero divisor")).collect();
    let lc_inv: Vec<u32> = divisors.iter().map(|d| k.inv(d.leading_coeff().unwrap())).collect();

    let mut pending: BTreeMap<SmallVec<[u32; 9]>, u32> = BTreeMap::new();
    for (m, c) in &f.terms {
        pending.insert(order.key(&m.0), *c);
    }
    let mut quotients: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); if track_quotients { divisors.len() } else { 0 }];
    let mut rem = Vec::new();

    while let Some((key, c)) = pending.pop_last() {
        let m = order.decode(&key, n);
        let hit = lms.iter().position(|lm| lm.divides(&m));
        match hit {
            None => rem.push((m, c)),
            Some(i) => {
                let q = m.div(lms[i]).unwrap();
                let coef = k.mul(c, lc_inv[i]);
                for (tm, tc) in &divisors[i].terms[1..] {
                    let prod = q.mul(tm);
                    if prod.degree() > max_degree {
                        return Err(Error::DegreeBound { degree: prod.degree(), max: ctx.limits().max_degree });
                    }
                    let delta = k.neg(k.mul(coef, *tc));
                    let key = order.key(&prod.0);
                    match pending.entry(key) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(delta);
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            let s = k.add(*o.get(), delta);
                            if s == 0 {
                                o.remove();
                            } else {
                                *o.get_mut() = s;
                            }
                        }
                    }
                }
                if track_quotients {
                    quotients[i].push((q, coef));
                }
            }
        }
    }

    let quotients = track_quotients
        .then(|| quotients.into_iter().map(|t| Polynomial::from_sorted_terms(Arc::clone(ctx), t)).collect());
    Ok((quotients, Polynomial::from_sorted_terms(Arc::clone(ctx), rem)))
}

pub(crate) fn format_terms(ctx: &RingCtx, terms: &[(Monomial, u32)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        if i > 0 {
            s.push('+');
        }
        if m.is_one() {
            s.push_str(&c.to_string());
        } else if *c == 1 {
            s.push_str(&ctx.format_monomial(m));
        } else {
            s.push_str(&format!("{}*{}", c, ctx.format_monomial(m)));
        }
    }
    s
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.ctx, &self.terms))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ctx)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.compatible(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_impl(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let k = self.ctx.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), k.neg(*c))).collect();
        Polynomial { ctx: Arc::clone(&self.ctx), terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::MonomialOrder;

    fn ring(p: u32, vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(p, vars, MonomialOrder::Grevlex).unwrap()
    }

    fn lex(p: u32, vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(p, vars, MonomialOrder::Lex).unwrap()
    }

    fn pp(ctx: &Arc<RingCtx>, s: &str) -> Polynomial {
        parse_poly(s, ctx).unwrap()
    }

    #[test]
    fn char_two_cancellation_and_squaring() {
        let r = ring(2, &["x", "y"]);
        let f = pp(&r, "x+y");
        assert!((&f + &f).is_zero());
        assert_eq!(&f * &f, pp(&r, "x^2+y^2"));
    }

    #[test]
    fn difference_of_squares_mod_eleven() {
        let r = ring(11, &["x"]);
        let prod = poly_arith(&pp(&r, "x+1"), &pp(&r, "x+10"), ArithOp::Mul).unwrap();
        assert_eq!(prod, pp(&r, "x^2+10"));
    }

    #[test]
    fn arith_rejects_mismatched_rings() {
        let a = ring(2, &["x", "y"]);
        let b = ring(3, &["x", "y"]);
        let c = ring(2, &["x", "z"]);
        let f = Polynomial::var(&a, 0);
        assert!(matches!(poly_arith(&f, &Polynomial::var(&b, 0), ArithOp::Add), Err(Error::ContextMismatch(_))));
        assert!(poly_arith(&f, &Polynomial::var(&c, 0), ArithOp::Mul).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(pp(&r, "x+y").frobenius_power(1).unwrap(), pp(&r, "x^2+y^2"));
        let f = pp(&r, "x*y+1");
        assert_eq!(f.frobenius_power(0).unwrap(), f);
        let r3 = ring(3, &["x"]);
        assert_eq!(pp(&r3, "2*x+1").frobenius_power(1).unwrap(), pp(&r3, "2*x^3+1"));
    }

    #[test]
    fn frobenius_degree_guard() {
        let r = ring(11, &["x"]).with_limits(crate::ring::Limits { max_degree: 100, ..Default::default() });
        let x = Polynomial::var(&r, 0);
        assert!(x.frobenius_power(1).is_ok());
        assert!(matches!(x.frobenius_power(2), Err(Error::DegreeBound { degree: 121, max: 100 })));
    }

    #[test]
    fn pth_root_examples() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(pp(&r, "x^2*y^4").pth_root(), Some(pp(&r, "x*y^2")));
        assert_eq!(pp(&r, "x+y^2").pth_root(), None);
        let r3 = ring(3, &["x"]);
        assert_eq!(pp(&r3, "2*x^3").pth_root(), Some(pp(&r3, "2*x")));
        assert_eq!(Polynomial::zero(&r).pth_root(), Some(Polynomial::zero(&r)));
    }

    #[test]
    fn divide_examples() {
        let r = ring(7, &["x", "y"]);
        let f = pp(&r, "x^2*y+3*x*y+5");
        let (q, rem) = f.divide(std::slice::from_ref(&f)).unwrap();
        assert!(q[0].is_one());
        assert!(rem.is_zero());

        let s = lex(11, &["x", "y", "z", "u", "v"]);
        let quintic = pp(&s, "x^5+y^5+z^5+u^5+v^5");
        let (_, rem) = pp(&s, "x^5").divide(&[quintic]).unwrap();
        assert_eq!(rem, pp(&s, "10*y^5+10*z^5+10*u^5+10*v^5"));

        let l = lex(2, &["x", "y"]);
        let (_, rem) = pp(&l, "x^2*y").divide(&[pp(&l, "x^2"), pp(&l, "y")]).unwrap();
        assert!(rem.is_zero());
    }

    #[test]
    fn divide_rejects_zero_divisor() {
        let r = ring(2, &["x"]);
        let f = Polynomial::var(&r, 0);
        assert_eq!(f.divide(&[Polynomial::zero(&r)]).unwrap_err(), Error::ZeroDivisor);
    }

    #[test]
    fn printing_is_descending() {
        let r = ring(5, &["x", "y"]);
        let f = pp(&r, "3 + y^2 + 2*x*y + x^2");
        assert_eq!(f.to_string(), "x^2+2*x*y+y^2+3");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn coefficients_in_variable() {
        let r = ring(5, &["x", "y"]);
        let f = pp(&r, "x^2*y + 3*x + y + 1");
        let cs = f.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], pp(&r, "y+1"));
        assert_eq!(cs[1], pp(&r, "3"));
        assert_eq!(cs[2], pp(&r, "y"));
    }
}
