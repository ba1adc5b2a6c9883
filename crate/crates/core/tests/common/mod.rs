#![allow(dead_code)]

use std::sync::Arc;

use perfcalc::groebner::Ideal;
use perfcalc::parse::{parse_poly, parse_poly_list};
use perfcalc::perfection::{perf_normalize, PerfElement};
use perfcalc::poly::Polynomial;
use perfcalc::ring::{Monomial, MonomialOrder, RingCtx};
use proptest::prelude::*;

pub fn ring(p: u32, vars: &[&str]) -> Arc<RingCtx> {
    RingCtx::new(p, vars, MonomialOrder::Grevlex).unwrap()
}

pub fn quotient(p: u32, vars: &[&str], f: &str) -> Arc<RingCtx> {
    let s = ring(p, vars);
    let f = parse_poly(f, &s).unwrap();
    s.with_modulus(&f).unwrap()
}

pub fn poly(ctx: &Arc<RingCtx>, s: &str) -> Polynomial {
    parse_poly(s, ctx).unwrap()
}

pub fn ideal(ctx: &Arc<RingCtx>, s: &str) -> Ideal {
    Ideal::new(ctx, parse_poly_list(s, ctx).unwrap()).unwrap()
}

/// Raw terms: exponent vectors of length `n` with entries at most
/// `max_exp`, and coefficients in `1..p`.
pub fn terms(n: usize, p: u32, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), 1..p), 0..=max_terms)
}

pub fn build(ctx: &Arc<RingCtx>, raw: &[(Vec<u32>, u32)]) -> Polynomial {
    Polynomial::from_terms(ctx, raw.iter().map(|(e, c)| (Monomial::new(e), *c)))
}

/// Polynomials over GF(p)[x,y,z] for a small prime `p` drawn alongside.
pub fn poly_in(ctx: Arc<RingCtx>, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let (n, p) = (ctx.nvars(), ctx.characteristic());
    terms(n, p, max_exp, max_terms).prop_map(move |raw| build(&ctx, &raw))
}

pub fn nonzero_poly_in(ctx: Arc<RingCtx>, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly_in(ctx, max_exp, max_terms).prop_filter("nonzero", |f| !f.is_zero())
}

pub fn perf_in(
    ctx: Arc<RingCtx>,
    max_exp: u32,
    max_terms: usize,
    max_level: u32,
) -> impl Strategy<Value = PerfElement> {
    (poly_in(ctx, max_exp, max_terms), 0..=max_level).prop_map(|(f, e)| perf_normalize(f, e).unwrap())
}
