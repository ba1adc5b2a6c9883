//! F-singularity checks: Fedder's criterion for hypersurfaces, bounded
//! tight-closure verification and witness search, cyclic F-purity spot
//! checks, and the colon/Frobenius-power experiment.
//!
//! Tight-closure results are evidence, never proofs: membership is only
//! checked for finitely many exponents, and a failed search certifies
//! nothing.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::{colon_ideal, frobenius_power_ideal, Ideal};
use crate::perfection::{frobenius_closure_member, ClosureSearch};
use crate::poly::Polynomial;
use crate::ring::{Monomial, RingCtx};
use crate::sample::{monomials_of_degree, random_nonzero_poly};

/// Outcome of a Fedder check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FedderCheck {
    pub f_pure: bool,
    /// Largest monomial of `F^(p-1)` with every exponent at most `p - 1`.
    pub witness: Option<Monomial>,
    /// Its coefficient in `F^(p-1)`.
    pub coefficient: Option<u32>,
}

fn fedder_input(ctx: &Arc<RingCtx>) -> Result<Polynomial> {
    let f = ctx
        .modulus()
        .ok_or_else(|| Error::InvalidArgument("Fedder's criterion needs a hypersurface modulus".into()))?;
    if f.terms().iter().any(|(m, _)| m.is_one()) {
        return Err(Error::InvalidArgument(format!("modulus {f} is not in the homogeneous maximal ideal")));
    }
    Ok(f)
}

/// `S/(F)` is F-pure at the origin iff `F^(p-1)` has a monomial outside
/// `m^[p]`.
pub fn fedder_is_fpure(ctx: &Arc<RingCtx>) -> Result<bool> {
    Ok(fedder_expansion(ctx)?.f_pure)
}

/// Fedder's criterion by sparse expansion of `F^(p-1)` modulo `m^[p]`:
/// terms with an exponent `>= p` are dropped after every multiplication,
/// which is exact because `m^[p]` is a monomial ideal.
pub fn fedder_expansion(ctx: &Arc<RingCtx>) -> Result<FedderCheck> {
    let f = fedder_input(ctx)?;
    let p = ctx.characteristic();
    let k = ctx.field();
    let below = |m: &Monomial| m.exps().iter().all(|&e| e < p);
    let factor: Vec<(Monomial, u32)> = f.terms().iter().filter(|(m, _)| below(m)).cloned().collect();
    let mut acc: Vec<(Monomial, u32)> = vec![(Monomial::one(ctx.nvars()), 1)];
    for _ in 0..p - 1 {
        let mut next: HashMap<Monomial, u32> = HashMap::with_capacity(acc.len() * factor.len());
        for (ma, ca) in &acc {
            for (mb, cb) in &factor {
                let m = ma.mul(mb);
                if below(&m) {
                    let e = next.entry(m).or_insert(0);
                    *e = k.add(*e, k.mul(*ca, *cb));
                }
            }
        }
        acc = next.into_iter().filter(|(_, c)| *c != 0).collect();
    }
    let power = Polynomial::from_terms(ctx, acc);
    // terms are sorted descending, so the first is the largest
    let hit = power.terms().first();
    Ok(FedderCheck { f_pure: hit.is_some(), witness: hit.map(|(m, _)| m.clone()), coefficient: hit.map(|(_, c)| *c) })
}

/// Fedder's criterion for diagonal moduli `F = sum c_i x_i^(d_i)` via
/// multinomial coefficients: the monomial `prod x_i^(d_i k_i)` of
/// `F^(p-1)` has coefficient `(p-1)! / prod k_i! * prod c_i^(k_i)`.
/// Returns `None` when `F` is not diagonal.
pub fn fedder_multinomial(ctx: &Arc<RingCtx>) -> Result<Option<FedderCheck>> {
    let f = fedder_input(ctx)?;
    let n = ctx.nvars();
    let k = ctx.field();
    let p = ctx.characteristic();
    // per variable: (degree, coefficient), or None if absent
    let mut diag: Vec<Option<(u32, u32)>> = vec![None; n];
    for (m, c) in f.terms() {
        let support: Vec<usize> = (0..n).filter(|&i| m.exps()[i] > 0).collect();
        if support.len() != 1 || diag[support[0]].is_some() {
            return Ok(None);
        }
        diag[support[0]] = Some((m.exps()[support[0]], *c));
    }
    let active: Vec<(usize, u32, u32)> =
        diag.iter().enumerate().filter_map(|(i, d)| d.map(|(deg, c)| (i, deg, c))).collect();

    let total = p - 1;
    let fact: Vec<u32> = (0..=total)
        .scan(1u32, |acc, i| {
            if i > 0 {
                *acc = k.mul(*acc, i);
            }
            Some(*acc)
        })
        .collect();

    let mut best: Option<(Monomial, u32)> = None;
    let mut ks = vec![0u32; active.len()];
    enumerate_compositions(&mut ks, 0, total, &mut |ks| {
        if active.iter().zip(ks.iter()).any(|(&(_, d, _), &ki)| d * ki > p - 1) {
            return;
        }
        let mut coeff = fact[total as usize];
        for (&(_, _, c), &ki) in active.iter().zip(ks.iter()) {
            coeff = k.mul(coeff, k.inv(fact[ki as usize]));
            coeff = k.mul(coeff, k.pow(c, ki as u64));
        }
        if coeff == 0 {
            return;
        }
        let mut exps = vec![0u32; n];
        for (&(i, d, _), &ki) in active.iter().zip(ks.iter()) {
            exps[i] = d * ki;
        }
        let m = Monomial::new(&exps);
        let better = match &best {
            None => true,
            Some((b, _)) => ctx.cmp_monomials(&m, b).is_gt(),
        };
        if better {
            best = Some((m, coeff));
        }
    });
    Ok(Some(FedderCheck {
        f_pure: best.is_some(),
        coefficient: best.as_ref().map(|(_, c)| *c),
        witness: best.map(|(m, _)| m),
    }))
}

fn enumerate_compositions(ks: &mut Vec<u32>, i: usize, left: u32, visit: &mut dyn FnMut(&[u32])) {
    if ks.is_empty() {
        if left == 0 {
            visit(ks);
        }
        return;
    }
    if i + 1 == ks.len() {
        ks[i] = left;
        visit(ks);
        return;
    }
    for v in 0..=left {
        ks[i] = v;
        enumerate_compositions(ks, i + 1, left - v, visit);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TightVerdict {
    /// `c r^(p^e) ∈ I^[p^e]` for every `1 <= e <= E`.
    Verified(u32),
    /// Membership failed at this exponent.
    FailedAt(u32),
    /// No candidate witness verified within the bounds. Inconclusive.
    WitnessNotFound,
    /// The witness lies in the minimal prime `(F)`.
    NotApplicable,
}

impl std::fmt::Display for TightVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TightVerdict::Verified(e) => write!(f, "Verified({e})"),
            TightVerdict::FailedAt(e) => write!(f, "FailedAt({e})"),
            TightVerdict::WitnessNotFound => f.write_str("WitnessNotFound"),
            TightVerdict::NotApplicable => f.write_str("NotApplicable"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MembershipStep {
    pub e: u32,
    pub member: bool,
}

/// Supporting evidence for `r ∈ I*`; checks finitely many exponents only.
#[derive(Clone, Debug)]
pub struct TightClosureEvidence {
    pub witness: Option<Polynomial>,
    pub ideal: Vec<Polynomial>,
    pub element: Polynomial,
    pub checked_e: Vec<u32>,
    pub trace: Vec<MembershipStep>,
    pub verdict: TightVerdict,
    /// Candidates examined by a search; 1 for a plain verification.
    pub candidates_tried: usize,
}

/// Bracket powers and Frobenius powers of `r`, shared across candidate
/// witnesses.
struct TightProblem {
    ctx: Arc<RingCtx>,
    element: Polynomial,
    ideal: Vec<Polynomial>,
    levels: Vec<(Ideal, Polynomial)>,
}

impl TightProblem {
    fn new(r: &Polynomial, ideal: &Ideal, ctx: &Arc<RingCtx>, bound: u32) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidArgument("exponent bound must be at least 1".into()));
        }
        let base = Ideal::new(ctx, ideal.gens().to_vec())?;
        let r = r.in_ctx(ctx)?;
        let mut levels = Vec::with_capacity(bound as usize);
        for e in 1..=bound {
            let bracket = frobenius_power_ideal(&base, e)?;
            bracket.groebner()?;
            levels.push((bracket, r.frobenius_power(e)?));
        }
        Ok(TightProblem { ctx: Arc::clone(ctx), element: r, ideal: base.gens().to_vec(), levels })
    }

    fn check(&self, c: &Polynomial) -> Result<TightClosureEvidence> {
        let c = c.in_ctx(&self.ctx)?;
        let mut evidence = TightClosureEvidence {
            witness: Some(c.clone()),
            ideal: self.ideal.clone(),
            element: self.element.clone(),
            checked_e: Vec::new(),
            trace: Vec::new(),
            verdict: TightVerdict::NotApplicable,
            candidates_tried: 1,
        };
        if Ideal::zero(&self.ctx).contains(&c)? {
            return Ok(evidence);
        }
        for (idx, (bracket, rq)) in self.levels.iter().enumerate() {
            let e = idx as u32 + 1;
            let prod = &c * rq;
            if let Some(d) = prod.total_degree() {
                self.ctx.check_degree(d)?;
            }
            let member = bracket.contains(&prod)?;
            evidence.trace.push(MembershipStep { e, member });
            if !member {
                evidence.verdict = TightVerdict::FailedAt(e);
                return Ok(evidence);
            }
            evidence.checked_e.push(e);
        }
        evidence.verdict = TightVerdict::Verified(self.levels.len() as u32);
        Ok(evidence)
    }
}

/// Checks `c r^(p^e) ∈ I^[p^e]` (modulo the hypersurface of `ctx`) for
/// `1 <= e <= bound`, stopping at the first failure.
pub fn tight_closure_verify(
    c: &Polynomial,
    r: &Polynomial,
    ideal: &Ideal,
    ctx: &Arc<RingCtx>,
    bound: u32,
) -> Result<TightClosureEvidence> {
    TightProblem::new(r, ideal, ctx, bound)?.check(c)
}

/// Tries monomial witnesses by increasing degree (descending monomial order
/// within a degree) up to `degree_cap`; the first verified candidate in that
/// order is returned.
pub fn tight_witness_search(
    r: &Polynomial,
    ideal: &Ideal,
    ctx: &Arc<RingCtx>,
    bound: u32,
    degree_cap: u32,
) -> Result<TightClosureEvidence> {
    let problem = TightProblem::new(r, ideal, ctx, bound)?;
    let mut tried = 0usize;
    for d in 0..=degree_cap {
        let candidates = monomials_of_degree(ctx, d);
        let hit = candidates
            .par_iter()
            .map(|m| problem.check(&Polynomial::monomial(ctx, m.clone(), 1)))
            .enumerate()
            .find_first(|(_, res)| !matches!(res, Ok(ev) if !matches!(ev.verdict, TightVerdict::Verified(_))));
        match hit {
            Some((idx, res)) => {
                let mut ev = res?;
                ev.candidates_tried = tried + idx + 1;
                return Ok(ev);
            }
            None => tried += candidates.len(),
        }
    }
    Ok(TightClosureEvidence {
        witness: None,
        ideal: problem.ideal.clone(),
        element: problem.element.clone(),
        checked_e: Vec::new(),
        trace: Vec::new(),
        verdict: TightVerdict::WitnessNotFound,
        candidates_tried: tried,
    })
}

/// Per-ideal result of a cyclic F-purity spot check.
#[derive(Clone, Debug)]
pub struct SpotCheck {
    pub ideal: Vec<Polynomial>,
    pub candidates: usize,
    /// An element of `I^F \ I` with the exponent that certifies it.
    pub failure: Option<(Polynomial, u32)>,
}

/// For each ideal, tests the standard monomials (those outside the leading
/// ideal of `I + (F)`) of degree at most `degree_cap` for membership in the
/// Frobenius closure. A hit certifies that the ring is not cyclically
/// F-pure; no hit means no failure was found within the bounds.
pub fn cyclic_fpurity_spot_check(
    ctx: &Arc<RingCtx>,
    ideals: &[Ideal],
    bound: u32,
    degree_cap: u32,
) -> Result<Vec<SpotCheck>> {
    let mut out = Vec::with_capacity(ideals.len());
    for ideal in ideals {
        let ideal = Ideal::new(ctx, ideal.gens().to_vec())?;
        let lms: Vec<Monomial> = ideal.groebner()?.leading_monomials().into_iter().cloned().collect();
        let candidates: Vec<Monomial> = (0..=degree_cap)
            .flat_map(|d| monomials_of_degree(ctx, d))
            .filter(|m| !lms.iter().any(|lm| lm.divides(m)))
            .collect();
        let hit = candidates
            .par_iter()
            .map(|m| {
                let r = Polynomial::monomial(ctx, m.clone(), 1);
                frobenius_closure_member(&r, &ideal, ctx, bound).map(|res| (r, res))
            })
            .find_first(|res| !matches!(res, Ok((_, ClosureSearch::NotFoundUpTo(_)))));
        let failure = match hit {
            None => None,
            Some(res) => match res? {
                (r, ClosureSearch::Found(e)) => Some((r, e)),
                (_, ClosureSearch::NotFoundUpTo(_)) => unreachable!(),
            },
        };
        out.push(SpotCheck { ideal: ideal.gens().to_vec(), candidates: candidates.len(), failure });
    }
    Ok(out)
}

/// How pairs `(f, g)` are drawn for the colon experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSampling {
    /// `trials` pairs from a ChaCha8 stream seeded with `seed`.
    Random { trials: usize, seed: u64, max_degree: u32, max_terms: usize },
    /// Every ordered pair of monomials of degree at most `max_degree`.
    MonomialPairs { max_degree: u32 },
}

#[derive(Clone, Debug)]
pub struct ColonViolation {
    /// Position in the sampling stream; replaying the same sampling
    /// reproduces it.
    pub index: usize,
    pub f: Polynomial,
    pub g: Polynomial,
    pub frobenius_of_colon: Vec<Polynomial>,
    pub colon_of_frobenius: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct ColonExperiment {
    pub pairs_tested: usize,
    pub violations: usize,
    pub first_violation: Option<ColonViolation>,
}

/// Compares `(f : g)^[p^e]` with `(f^(p^e) : g^(p^e))` as ideals of `ctx`.
/// Returns the two sides and whether they agree.
pub fn colon_frobenius_pair(
    f: &Polynomial,
    g: &Polynomial,
    ctx: &Arc<RingCtx>,
    e: u32,
) -> Result<(Ideal, Ideal, bool)> {
    let lhs = frobenius_power_ideal(&colon_ideal(&Ideal::principal(&f.in_ctx(ctx)?), g)?.ideal, e)?;
    let rhs = colon_ideal(&Ideal::principal(&f.frobenius_power(e)?.in_ctx(ctx)?), &g.frobenius_power(e)?)?.ideal;
    let same = lhs.same_ideal(&rhs)?;
    Ok((lhs, rhs, same))
}

/// Runs the colon/Frobenius-power comparison over sampled pairs. In a UFD
/// every pair agrees; off UFDs a violation may appear.
pub fn colon_frobenius_experiment(ctx: &Arc<RingCtx>, sampling: PairSampling, e: u32) -> Result<ColonExperiment> {
    let zero = Ideal::zero(ctx);
    let pairs: Vec<(Polynomial, Polynomial)> = match sampling {
        PairSampling::Random { trials, seed, max_degree, max_terms } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(trials);
            while out.len() < trials {
                let f = random_nonzero_poly(ctx, &mut rng, max_degree, max_terms);
                let g = random_nonzero_poly(ctx, &mut rng, max_degree, max_terms);
                if zero.contains(&f)? || zero.contains(&g)? {
                    continue;
                }
                out.push((f, g));
            }
            out
        }
        PairSampling::MonomialPairs { max_degree } => {
            let monos: Vec<Polynomial> = (0..=max_degree)
                .flat_map(|d| monomials_of_degree(ctx, d))
                .map(|m| Polynomial::monomial(ctx, m, 1))
                .collect();
            let mut out = Vec::new();
            for f in &monos {
                for g in &monos {
                    out.push((f.clone(), g.clone()));
                }
            }
            out
        }
    };

    let results: Vec<Result<(Ideal, Ideal, bool)>> =
        pairs.par_iter().map(|(f, g)| colon_frobenius_pair(f, g, ctx, e)).collect();
    let mut violations = 0;
    let mut first = None;
    for (index, res) in results.into_iter().enumerate() {
        let (lhs, rhs, same) = res?;
        if !same {
            violations += 1;
            if first.is_none() {
                let (f, g) = pairs[index].clone();
                first = Some(ColonViolation {
                    index,
                    f,
                    g,
                    frobenius_of_colon: lhs.gens().to_vec(),
                    colon_of_frobenius: rhs.groebner()?.elements().to_vec(),
                });
            }
        }
    }
    Ok(ColonExperiment { pairs_tested: pairs.len(), violations, first_violation: first })
}
