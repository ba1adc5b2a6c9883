//! Seeded random polynomials for experiments and property suites.

use std::sync::Arc;

use rand::Rng;

use crate::poly::Polynomial;
use crate::ring::{Monomial, RingCtx};

/// Uniform random monomial of total degree at most `max_degree`.
pub fn random_monomial<R: Rng>(ctx: &RingCtx, rng: &mut R, max_degree: u32) -> Monomial {
    let n = ctx.nvars();
    let target = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u32; n];
    for _ in 0..target {
        exps[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(&exps)
}

/// A polynomial with up to `max_terms` terms of degree at most
/// `max_degree`; may be zero.
pub fn random_poly<R: Rng>(ctx: &Arc<RingCtx>, rng: &mut R, max_degree: u32, max_terms: usize) -> Polynomial {
    let p = ctx.characteristic();
    let count = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(Monomial, u32)> =
        (0..count).map(|_| (random_monomial(ctx, rng, max_degree), rng.gen_range(1..p))).collect();
    Polynomial::from_terms(ctx, terms)
}

/// Like [`random_poly`] but never zero.
pub fn random_nonzero_poly<R: Rng>(ctx: &Arc<RingCtx>, rng: &mut R, max_degree: u32, max_terms: usize) -> Polynomial {
    loop {
        let f = random_poly(ctx, rng, max_degree, max_terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// All monomials of total degree exactly `d`, in descending order under the
/// ring's monomial order.
pub fn monomials_of_degree(ctx: &RingCtx, d: u32) -> Vec<Monomial> {
    let n = ctx.nvars();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fill(&mut exps, 0, d, &mut out);
    out.sort_by(|a, b| ctx.cmp_monomials(b, a));
    out
}

fn fill(exps: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Monomial>) {
    if i + 1 == exps.len() {
        exps[i] = left;
        out.push(Monomial::new(exps));
        return;
    }
    for e in 0..=left {
        exps[i] = e;
        fill(exps, i + 1, left - e, out);
    }
    exps[i] = 0;
}
