//! Arithmetic in the perfection of a polynomial ring over GF(p).
//!
//! An element is a pair `(f, e)` standing for `f^(1/p^e)`. Every element has
//! a unique normal form in which either `e = 0` or `f` is not a p-th power,
//! so equality of normal forms is equality in the perfection. Two elements
//! are compared, added or multiplied after lifting both to the larger of
//! their levels.
//!
//! Since the base ring is a UFD, `(a : b)` is principal, generated by
//! `A / gcd(A, B)` at the common level where `A`, `B` are the lifted bodies.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcd::{gcd_with_power, poly_gcd};
use crate::groebner::{frobenius_power_ideal, Ideal};
use crate::poly::Polynomial;
use crate::ring::RingCtx;

/// `body^(1/p^level)`, always in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PerfElement {
    body: Polynomial,
    level: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerfOp {
    Add,
    Mul,
}

fn require_polynomial_ring(ctx: &Arc<RingCtx>) -> Result<()> {
    match ctx.modulus() {
        Some(m) => Err(Error::QuotientRing(m.to_string())),
        None => Ok(()),
    }
}

/// Extracts p-th roots while possible, lowering the level each time.
pub fn perf_normalize(f: Polynomial, e: u32) -> Result<PerfElement> {
    require_polynomial_ring(f.ctx())?;
    let mut body = f;
    let mut level = e;
    if body.is_zero() {
        level = 0;
    }
    while level > 0 {
        match body.pth_root() {
            Some(root) => {
                body = root;
                level -= 1;
            }
            None => break,
        }
    }
    let max = body.ctx().limits().max_level;
    if level > max {
        return Err(Error::LevelBound { level, max });
    }
    Ok(PerfElement { body, level })
}

impl PerfElement {
    pub fn from_poly(f: Polynomial) -> Result<Self> {
        perf_normalize(f, 0)
    }

    pub fn zero(ctx: &Arc<RingCtx>) -> Result<Self> {
        Self::from_poly(Polynomial::zero(ctx))
    }

    pub fn one(ctx: &Arc<RingCtx>) -> Result<Self> {
        Self::from_poly(Polynomial::one(ctx))
    }

    pub fn body(&self) -> &Polynomial {
        &self.body
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        self.body.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// The body at a level `n >= self.level`, i.e. `self^(p^n)` as a
    /// polynomial.
    pub fn lift_to(&self, n: u32) -> Result<Polynomial> {
        assert!(n >= self.level, "cannot lift to a lower level");
        self.body.frobenius_power(n - self.level)
    }

    /// `self^p`.
    pub fn frobenius(&self) -> Result<Self> {
        if self.level > 0 {
            Ok(PerfElement { body: self.body.clone(), level: self.level - 1 })
        } else {
            perf_normalize(self.body.frobenius_power(1)?, 0)
        }
    }

    /// `self^(1/p)`.
    pub fn pth_root(&self) -> Result<Self> {
        perf_normalize(self.body.clone(), self.level + 1)
    }

    /// Same element with a monic body.
    pub fn monic(&self) -> Self {
        PerfElement { body: self.body.monic(), level: self.level }
    }
}

impl fmt::Display for PerfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root({},{})", self.body, self.level)
    }
}

impl Serialize for PerfElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_pair(a: &PerfElement, b: &PerfElement) -> Result<()> {
    a.ctx().check_compatible(b.ctx())
}

pub fn perf_arith(a: &PerfElement, b: &PerfElement, op: PerfOp) -> Result<PerfElement> {
    check_pair(a, b)?;
    let n = a.level.max(b.level);
    let (fa, fb) = (a.lift_to(n)?, b.lift_to(n)?);
    let body = match op {
        PerfOp::Add => &fa + &fb,
        PerfOp::Mul => &fa * &fb,
    };
    perf_normalize(body, n)
}

/// Does `a` divide `b` in the perfection? Decided at the common level: an
/// element of the fraction field whose p-power lies in a normal domain
/// already lies in it.
pub fn perf_divides(a: &PerfElement, b: &PerfElement) -> Result<bool> {
    check_pair(a, b)?;
    if a.is_zero() {
        return Ok(b.is_zero());
    }
    if b.is_zero() {
        return Ok(true);
    }
    if a.level >= b.level {
        // a's body against b lifted by q
        let q = pow_p(a.ctx(), a.level - b.level);
        let g = gcd_with_power(&a.body, &b.body, q)?;
        Ok(g == a.body.monic())
    } else {
        let lifted = a.lift_to(b.level)?;
        lifted.divides(&b.body)
    }
}

fn pow_p(ctx: &RingCtx, k: u32) -> u64 {
    (ctx.characteristic() as u64).pow(k)
}

/// `gcd(A, B)` at the common level, where one side is a pure Frobenius power
/// that is never expanded.
fn lifted_gcd(a: &PerfElement, b: &PerfElement) -> Result<(u32, Polynomial)> {
    let n = a.level.max(b.level);
    let g = if a.level == b.level {
        poly_gcd(&a.body, &b.body)?
    } else if a.level > b.level {
        gcd_with_power(&a.body, &b.body, pow_p(a.ctx(), a.level - b.level))?
    } else {
        gcd_with_power(&b.body, &a.body, pow_p(a.ctx(), b.level - a.level))?
    };
    Ok((n, g))
}

/// Greatest common divisor with a monic body; `gcd(0, 0) = 0`.
pub fn perf_gcd(a: &PerfElement, b: &PerfElement) -> Result<PerfElement> {
    check_pair(a, b)?;
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    let (n, g) = lifted_gcd(a, b)?;
    perf_normalize(g, n)
}

/// `a b / gcd(a, b)`, with a monic body.
pub fn perf_lcm(a: &PerfElement, b: &PerfElement) -> Result<PerfElement> {
    check_pair(a, b)?;
    if a.is_zero() || b.is_zero() {
        return PerfElement::zero(a.ctx());
    }
    let g = perf_gcd(a, b)?;
    let prod = perf_arith(a, b, PerfOp::Mul)?;
    Ok(perf_div_exact(&prod, &g)?.expect("gcd divides the product").monic())
}

/// `a / b` when `b` divides `a`.
pub fn perf_div_exact(a: &PerfElement, b: &PerfElement) -> Result<Option<PerfElement>> {
    check_pair(a, b)?;
    if b.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let n = a.level.max(b.level);
    let (fa, fb) = (a.lift_to(n)?, b.lift_to(n)?);
    match fa.div_exact(&fb)? {
        Some(q) => Ok(Some(perf_normalize(q, n)?)),
        None => Ok(None),
    }
}

/// Principal generator of `(a : b)`, with a monic body. Conventions:
/// `(0 : b) = 0` for `b != 0` and `(a : 0) = 1`; `(0 : 0)` is an error.
pub fn perf_colon(a: &PerfElement, b: &PerfElement) -> Result<PerfElement> {
    check_pair(a, b)?;
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(Error::Degenerate("(0 : 0) has no principal generator".into())),
        (true, false) => return PerfElement::zero(a.ctx()),
        (false, true) => return PerfElement::one(a.ctx()),
        _ => {}
    }
    let (n, g) = lifted_gcd(a, b)?;
    let body_a = a.lift_to(n)?;
    let c = body_a.div_exact(&g)?.expect("gcd divides its argument");
    Ok(perf_normalize(c, n)?.monic())
}

/// Outcome of a bounded Frobenius-closure search. `Found(e)` certifies
/// membership; `NotFoundUpTo(E)` is inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClosureSearch {
    Found(u32),
    NotFoundUpTo(u32),
}

/// Least `1 <= e <= bound` with `r^(p^e) ∈ I^[p^e]` in the ring `ctx`
/// (modulo its hypersurface, if any).
pub fn frobenius_closure_member(
    r: &Polynomial,
    ideal: &Ideal,
    ctx: &Arc<RingCtx>,
    bound: u32,
) -> Result<ClosureSearch> {
    if bound == 0 {
        return Err(Error::InvalidArgument("closure bound must be at least 1".into()));
    }
    let ideal = Ideal::new(ctx, ideal.gens().to_vec())?;
    for e in 1..=bound {
        let bracket = frobenius_power_ideal(&ideal, e)?;
        if bracket.contains(&r.frobenius_power(e)?)? {
            return Ok(ClosureSearch::Found(e));
        }
    }
    Ok(ClosureSearch::NotFoundUpTo(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_list};
    use crate::ring::MonomialOrder;

    fn ring(p: u32, vars: &[&str]) -> Arc<RingCtx> {
        RingCtx::new(p, vars, MonomialOrder::Grevlex).unwrap()
    }

    fn el(ctx: &Arc<RingCtx>, s: &str, e: u32) -> PerfElement {
        perf_normalize(parse_poly(s, ctx).unwrap(), e).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(el(&r, "x^2*y^2", 1), el(&r, "x*y", 0));
        assert_eq!(el(&r, "x^2*y^2", 1).level(), 0);
        assert_eq!(el(&r, "x+y", 1).level(), 1);
        let r1 = ring(2, &["x"]);
        assert_eq!(el(&r1, "x^4", 2), el(&r1, "x", 0));
        assert_eq!(el(&r1, "0", 3).level(), 0);
    }

    #[test]
    fn level_cap() {
        let r = ring(2, &["x"]);
        assert!(matches!(perf_normalize(Polynomial::var(&r, 0), 7), Err(Error::LevelBound { level: 7, max: 6 })));
        // normalizes below the cap first
        assert!(perf_normalize(parse_poly("x^2", &r).unwrap(), 7).is_ok());
    }

    #[test]
    fn rejects_quotient_rings() {
        let r = ring(2, &["x", "y"]);
        let q = r.with_modulus(&parse_poly("x*y", &r).unwrap()).unwrap();
        assert!(matches!(PerfElement::from_poly(Polynomial::var(&q, 0)), Err(Error::QuotientRing(_))));
    }

    #[test]
    fn arith_examples() {
        let r = ring(2, &["x"]);
        let s = el(&r, "x", 1);
        assert_eq!(perf_arith(&s, &s, PerfOp::Mul).unwrap(), el(&r, "x", 0));
        assert!(perf_arith(&s, &s, PerfOp::Add).unwrap().is_zero());
        let r2 = ring(2, &["x", "y"]);
        let sum = perf_arith(&el(&r2, "x", 1), &el(&r2, "y", 1), PerfOp::Add).unwrap();
        assert_eq!(sum, el(&r2, "x+y", 1));
    }

    #[test]
    fn divides_examples() {
        let r = ring(2, &["x", "y"]);
        assert!(perf_divides(&el(&r, "x", 1), &el(&r, "x", 0)).unwrap());
        assert!(!perf_divides(&el(&r, "x", 0), &el(&r, "x", 1)).unwrap());
        assert!(!perf_divides(&el(&r, "x", 0), &el(&r, "y", 0)).unwrap());
        let a = el(&r, "x^3+x*y+1", 2);
        assert!(perf_divides(&a, &a).unwrap());
        let zero = PerfElement::zero(&r).unwrap();
        assert!(perf_divides(&zero, &zero).unwrap());
        assert!(!perf_divides(&zero, &a).unwrap());
        assert!(perf_divides(&a, &zero).unwrap());
    }

    #[test]
    fn gcd_examples() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(perf_gcd(&el(&r, "x*y^2", 1), &el(&r, "x^2*y", 1)).unwrap(), el(&r, "x*y", 1));
        let r1 = ring(2, &["x"]);
        assert_eq!(perf_gcd(&el(&r1, "x", 1), &el(&r1, "x", 2)).unwrap(), el(&r1, "x", 2));
        let a = el(&r, "x^2+x*y+y", 1);
        assert_eq!(perf_gcd(&a, &a).unwrap(), a);
        assert!(perf_gcd(&PerfElement::zero(&r).unwrap(), &PerfElement::zero(&r).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn colon_examples() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(perf_colon(&el(&r, "x*y^2", 1), &el(&r, "x^2*y", 1)).unwrap(), el(&r, "y", 1));
        let a = el(&r, "x^3+y", 2);
        let one = PerfElement::one(&r).unwrap();
        let zero = PerfElement::zero(&r).unwrap();
        assert_eq!(perf_colon(&a, &a).unwrap(), one);
        assert_eq!(perf_colon(&a, &one).unwrap(), a);
        assert_eq!(perf_colon(&zero, &a).unwrap(), zero);
        assert_eq!(perf_colon(&a, &zero).unwrap(), one);
        assert!(matches!(perf_colon(&zero, &zero), Err(Error::Degenerate(_))));
    }

    #[test]
    fn colon_is_monic_mod_five() {
        let r = ring(5, &["x", "y"]);
        let c = perf_colon(&el(&r, "3*x^2*y", 0), &el(&r, "2*x", 1)).unwrap();
        assert_eq!(c.body().leading_coeff(), Some(1));
        // x^2 y over x^(1/5): at level 1, x^10 y^5 / x = x^9 y^5
        assert_eq!(c, el(&r, "x^9*y^5", 1));
    }

    #[test]
    fn frobenius_and_root_are_inverse() {
        let r = ring(3, &["x", "y"]);
        let a = el(&r, "x^2+2*y", 1);
        assert_eq!(a.frobenius().unwrap().pth_root().unwrap(), a);
        assert_eq!(a.pth_root().unwrap().frobenius().unwrap(), a);
    }

    #[test]
    fn lcm_and_exact_division() {
        let r = ring(2, &["x", "y"]);
        let a = el(&r, "x*y^2", 1);
        let b = el(&r, "x^2*y", 1);
        assert_eq!(perf_lcm(&a, &b).unwrap(), el(&r, "x*y", 0));
        assert_eq!(perf_div_exact(&el(&r, "x", 0), &el(&r, "x", 1)).unwrap(), Some(el(&r, "x", 1)));
        assert_eq!(perf_div_exact(&el(&r, "x", 0), &el(&r, "y", 1)).unwrap(), None);
    }

    #[test]
    fn frobenius_closure_in_cusp_like_quotient() {
        let s = ring(2, &["x", "y", "z"]);
        let q = s.with_modulus(&parse_poly("z^2+x^2*y+x*y^2", &s).unwrap()).unwrap();
        let i = Ideal::new(&q, parse_poly_list("x,y", &q).unwrap()).unwrap();
        let z = parse_poly("z", &q).unwrap();
        assert_eq!(frobenius_closure_member(&z, &i, &q, 4).unwrap(), ClosureSearch::Found(1));
        assert!(!i.contains(&z).unwrap());
    }

    #[test]
    fn frobenius_closure_in_polynomial_ring() {
        let r = ring(2, &["x", "y"]);
        let i = Ideal::new(&r, parse_poly_list("x", &r).unwrap()).unwrap();
        let y = parse_poly("y", &r).unwrap();
        assert_eq!(frobenius_closure_member(&y, &i, &r, 3).unwrap(), ClosureSearch::NotFoundUpTo(3));
        let x2 = parse_poly("x^2+x*y", &r).unwrap();
        assert_eq!(frobenius_closure_member(&x2, &i, &r, 3).unwrap(), ClosureSearch::Found(1));
        assert!(frobenius_closure_member(&y, &i, &r, 0).is_err());
    }
}
