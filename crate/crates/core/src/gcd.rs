//! Multivariate GCD over GF(p) by recursive primitive pseudo-remainder
//! sequences.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Monomial;

/// Monic greatest common divisor in the polynomial ring. `gcd(f, 0)` is
/// monic `f`, `gcd(0, 0)` is `0`.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    check_polynomial_ring(f)?;
    check_polynomial_ring(g)?;
    f.ctx().check_compatible(g.ctx())?;
    Ok(gcd_rec(f, g)?.monic())
}

/// Monic least common multiple; zero if either input is zero.
pub fn poly_lcm(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() || g.is_zero() {
        return Ok(Polynomial::zero(f.ctx()));
    }
    let d = poly_gcd(f, g)?;
    let q = f.div_exact(&d)?.expect("gcd divides its argument");
    Ok((&q * g).monic())
}

/// `gcd(f, g^q)` without expanding `g^q`: repeatedly peel `gcd(f', g)` off
/// `f'`. After k rounds the exponent of each prime in the accumulated
/// product is `min(s, k t)`.
pub fn gcd_with_power(f: &Polynomial, g: &Polynomial, q: u64) -> Result<Polynomial> {
    if q == 0 {
        return poly_gcd(f, &Polynomial::one(f.ctx()));
    }
    if f.is_zero() {
        return g.pow(q).map(|p| p.monic());
    }
    if g.is_zero() {
        return Ok(f.monic());
    }
    let mut acc = Polynomial::one(f.ctx());
    let mut rest = f.clone();
    for _ in 0..q {
        let h = poly_gcd(&rest, g)?;
        if h.is_constant() {
            break;
        }
        rest = rest.div_exact(&h)?.expect("gcd divides its argument");
        acc = &acc * &h;
    }
    Ok(acc.monic())
}

fn check_polynomial_ring(f: &Polynomial) -> Result<()> {
    match f.ctx().modulus() {
        Some(m) => Err(Error::QuotientRing(m.to_string())),
        None => Ok(()),
    }
}

/// Unnormalized gcd.
fn gcd_rec(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Ok(g.clone());
    }
    if g.is_zero() {
        return Ok(f.clone());
    }
    if f.is_constant() || g.is_constant() {
        return Ok(Polynomial::one(f.ctx()));
    }
    if f.is_monomial() && g.is_monomial() {
        let m: Monomial = f.leading_monomial().unwrap().gcd(g.leading_monomial().unwrap());
        return Ok(Polynomial::monomial(f.ctx(), m, 1));
    }
    let n = f.ctx().nvars();
    let v = (0..n)
        .rev()
        .find(|&i| f.degree_in(i) > 0 || g.degree_in(i) > 0)
        .expect("non-constant polynomial involves a variable");

    let (df, dg) = (f.degree_in(v), g.degree_in(v));
    if df == 0 {
        return gcd_with_coefficients(f, g, v);
    }
    if dg == 0 {
        return gcd_with_coefficients(g, f, v);
    }

    let cf = content(f, v)?;
    let cg = content(g, v)?;
    let c = gcd_rec(&cf, &cg)?;
    let mut a = f.div_exact(&cf)?.expect("content divides");
    let mut b = g.div_exact(&cg)?.expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            b = Polynomial::one(f.ctx());
            break;
        }
        a = b;
        b = primitive_part(&r, v)?;
    }
    let b = primitive_part(&b, v)?;
    Ok(&c * &b)
}

/// `g` not involving `v`: the gcd with `f` is the gcd of `g` with all
/// coefficients of `f` in `v`.
fn gcd_with_coefficients(g: &Polynomial, f: &Polynomial, v: usize) -> Result<Polynomial> {
    let mut acc = g.clone();
    for c in f.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c)?;
        if acc.is_constant() {
            return Ok(Polynomial::one(f.ctx()));
        }
    }
    Ok(acc)
}

/// Gcd of the coefficients of `f` as a polynomial in `v`.
fn content(f: &Polynomial, v: usize) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(f.ctx());
    for c in f.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c)?;
        if acc.is_constant() {
            return Ok(Polynomial::one(f.ctx()));
        }
    }
    Ok(acc)
}

fn primitive_part(f: &Polynomial, v: usize) -> Result<Polynomial> {
    let c = content(f, v)?;
    if c.is_constant() {
        return Ok(f.clone());
    }
    Ok(f.div_exact(&c)?.expect("content divides"))
}

/// `lc(b)^k a - q b` with `deg_v` below `deg_v b`, for the smallest k the
/// elimination needs. The missing power of `lc(b)` is irrelevant once
/// primitive parts are taken, since `b` is primitive.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let ctx = a.ctx();
    let db = b.degree_in(v);
    let lcb = b.coefficients_in(v).pop().unwrap();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.coefficients_in(v).pop().unwrap();
        let mut shift = Monomial::one(ctx.nvars());
        shift.0[v] = dr - db;
        r = &(&lcb * &r) - &(&lcr * &b.mul_term(&shift, 1));
    }
    r
}
