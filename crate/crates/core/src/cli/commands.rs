use std::sync::Arc;

use serde_json::{json, Value};

use super::{ActionArgs, Command, Report, RingArgs, RunConfig};
use crate::error::{Error, Result};
use crate::fsing::{
    colon_frobenius_experiment, fedder_expansion, fedder_multinomial, tight_closure_verify, tight_witness_search,
    PairSampling, TightClosureEvidence,
};
use crate::groebner::{colon_ideal, ideal_intersect, Ideal};
use crate::invariants::{
    apply_action, generates_up_to, hilbert_burnside, hilbert_linear, is_invariant, orbits, CyclicAction,
};
use crate::parse::{parse_poly, parse_poly_list, parse_root_form, RingDescriptor};
use crate::perfection::{
    frobenius_closure_member, perf_colon, perf_gcd, perf_lcm, perf_normalize, ClosureSearch, PerfElement,
};
use crate::poly::Polynomial;
use crate::ring::RingCtx;

pub(super) fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Report> {
    match cmd {
        Command::Fedder { ring } => fedder(ring, cfg),
        Command::PerfGcd { ring, a, b } => {
            let ctx = ring.build(cfg)?;
            let (a, b) = (perf_element(a, &ctx)?, perf_element(b, &ctx)?);
            Ok(Report::new(json!({
                "command": "perf-gcd",
                "ring": describe(&ctx),
                "a": a.to_string(),
                "b": b.to_string(),
                "gcd": perf_gcd(&a, &b)?.to_string(),
                "lcm": perf_lcm(&a, &b)?.to_string(),
            })))
        }
        Command::PerfColon { ring, a, b } => {
            let ctx = ring.build(cfg)?;
            let (a, b) = (perf_element(a, &ctx)?, perf_element(b, &ctx)?);
            let generator = perf_colon(&a, &b)?;
            Ok(Report {
                body: json!({
                    "command": "perf-colon",
                    "ring": describe(&ctx),
                    "a": a.to_string(),
                    "b": b.to_string(),
                    "generator": generator.to_string(),
                }),
                degenerate: b.is_zero(),
            })
        }
        Command::PerfEq { ring, a, b } => {
            let ctx = ring.build(cfg)?;
            let (a, b) = (perf_element(a, &ctx)?, perf_element(b, &ctx)?);
            Ok(Report::new(json!({
                "command": "perf-eq",
                "ring": describe(&ctx),
                "a": a.to_string(),
                "b": b.to_string(),
                "equal": a == b,
            })))
        }
        Command::Fclosure { ring, f, ideal } => {
            let ctx = ring.build(cfg)?;
            let r = parse_poly(f, &ctx)?;
            let i = ideal_from(ideal, &ctx)?;
            let (verdict, e) = match frobenius_closure_member(&r, &i, &ctx, cfg.bound)? {
                ClosureSearch::Found(e) => ("Found", Some(e)),
                ClosureSearch::NotFoundUpTo(_) => ("NotFound", None),
            };
            Ok(Report::new(json!({
                "command": "fclosure",
                "ring": describe(&ctx),
                "element": r.to_string(),
                "ideal": strings(i.gens()),
                "bound": cfg.bound,
                "verdict": verdict,
                "e": e,
                "in_ideal": i.contains(&r)?,
            })))
        }
        Command::TcloseVerify { ring, c, f, ideal } => {
            let ctx = ring.build(cfg)?;
            let c = parse_poly(c, &ctx)?;
            let r = parse_poly(f, &ctx)?;
            let i = ideal_from(ideal, &ctx)?;
            let ev = tight_closure_verify(&c, &r, &i, &ctx, cfg.bound)?;
            Ok(Report::new(json!({
                "command": "tclose-verify",
                "ring": describe(&ctx),
                "bound": cfg.bound,
                "evidence": evidence_json(&ev),
            })))
        }
        Command::TcloseSearch { ring, f, ideal } => {
            let ctx = ring.build(cfg)?;
            let r = parse_poly(f, &ctx)?;
            let i = ideal_from(ideal, &ctx)?;
            let ev = tight_witness_search(&r, &i, &ctx, cfg.bound, cfg.degree_cap)?;
            Ok(Report::new(json!({
                "command": "tclose-search",
                "ring": describe(&ctx),
                "bound": cfg.bound,
                "degree_cap": cfg.degree_cap,
                "candidates_tried": ev.candidates_tried,
                "evidence": evidence_json(&ev),
            })))
        }
        Command::Colon { ring, ideal, f } => {
            let ctx = ring.build(cfg)?;
            let i = ideal_from(ideal, &ctx)?;
            let f = parse_poly(f, &ctx)?;
            let colon = colon_ideal(&i, &f)?;
            Ok(Report {
                body: json!({
                    "command": "colon",
                    "ring": describe(&ctx),
                    "generators": strings(colon.ideal.groebner()?.elements()),
                }),
                degenerate: colon.degenerate,
            })
        }
        Command::Intersect { ring, ideal, other } => {
            let ctx = ring.build(cfg)?;
            let inter = ideal_intersect(&ideal_from(ideal, &ctx)?, &ideal_from(other, &ctx)?)?;
            Ok(Report::new(json!({
                "command": "intersect",
                "ring": describe(&ctx),
                "generators": strings(inter.groebner()?.elements()),
            })))
        }
        Command::Member { ring, ideal, f } => {
            let ctx = ring.build(cfg)?;
            let i = ideal_from(ideal, &ctx)?;
            let f = parse_poly(f, &ctx)?;
            Ok(Report::new(json!({
                "command": "member",
                "ring": describe(&ctx),
                "element": f.to_string(),
                "ideal": strings(i.gens()),
                "member": i.contains(&f)?,
            })))
        }
        Command::Gb { ring, ideal } => {
            let ctx = ring.build(cfg)?;
            let i = ideal_from(ideal, &ctx)?;
            let gb = i.groebner()?;
            Ok(Report::new(json!({
                "command": "gb",
                "ring": describe(&ctx),
                "order": gb.order().name(),
                "basis": strings(gb.elements()),
            })))
        }
        Command::InvHilbert { action, degree } => {
            let act = action_from(action, cfg)?;
            let mut rows = Vec::new();
            let mut agree = true;
            for d in 0..=*degree {
                let (b, l, o) = (hilbert_burnside(&act, d), hilbert_linear(&act, d), orbits(&act, d).len() as u64);
                agree &= b == l && l == o;
                rows.push(json!({ "degree": d, "burnside": b, "linear": l, "orbit_basis": o }));
            }
            Ok(Report::new(json!({
                "command": "inv-hilbert",
                "ring": describe(act.ctx()),
                "permutation": act.permutation(),
                "group_order": act.order(),
                "degrees": rows,
                "agree": agree,
            })))
        }
        Command::InvOrbits { action, degree } => {
            let act = action_from(action, cfg)?;
            let ctx = act.ctx();
            let list: Vec<Value> = orbits(&act, *degree)
                .iter()
                .map(|o| {
                    json!({
                        "representative": ctx.format_monomial(&o.representative),
                        "size": o.members.len(),
                        "sum": o.sum(ctx).to_string(),
                    })
                })
                .collect();
            Ok(Report::new(json!({
                "command": "inv-orbits",
                "ring": describe(ctx),
                "permutation": act.permutation(),
                "degree": degree,
                "orbits": list,
            })))
        }
        Command::InvCheck { action, f } => {
            let act = action_from(action, cfg)?;
            let f = parse_poly(f, act.ctx())?;
            Ok(Report::new(json!({
                "command": "inv-check",
                "ring": describe(act.ctx()),
                "permutation": act.permutation(),
                "element": f.to_string(),
                "image": apply_action(&f, &act, 1)?.to_string(),
                "invariant": is_invariant(&f, &act)?,
            })))
        }
        Command::InvGenerates { action, gens, degree } => {
            let act = action_from(action, cfg)?;
            let gens = parse_poly_list(gens, act.ctx())?;
            let report = generates_up_to(&act, &gens, *degree)?;
            let rows: Vec<Value> = report
                .degrees
                .iter()
                .map(|r| json!({ "degree": r.degree, "span": r.span, "expected": r.expected }))
                .collect();
            Ok(Report::new(json!({
                "command": "inv-generates",
                "ring": describe(act.ctx()),
                "permutation": act.permutation(),
                "generators": strings(&gens),
                "degrees": rows,
                "first_deficient": report.first_deficient,
                "success": report.success(),
            })))
        }
        Command::RemarkExperiment { ring, mode, trials, pair_degree, terms, e } => {
            let ctx = ring.build(cfg)?;
            let sampling = match mode.as_str() {
                "random" => PairSampling::Random {
                    trials: *trials,
                    seed: cfg.seed,
                    max_degree: *pair_degree,
                    max_terms: *terms,
                },
                "monomials" => PairSampling::MonomialPairs { max_degree: *pair_degree },
                other => return Err(Error::InvalidArgument(format!("unknown mode `{other}`"))),
            };
            let report = colon_frobenius_experiment(&ctx, sampling, *e)?;
            let first = report.first_violation.as_ref().map(|v| {
                json!({
                    "index": v.index,
                    "f": v.f.to_string(),
                    "g": v.g.to_string(),
                    "frobenius_of_colon": strings(&v.frobenius_of_colon),
                    "colon_of_frobenius": strings(&v.colon_of_frobenius),
                })
            });
            Ok(Report::new(json!({
                "command": "remark-experiment",
                "ring": describe(&ctx),
                "mode": mode,
                "seed": cfg.seed,
                "e": e,
                "pair_degree": pair_degree,
                "pairs_tested": report.pairs_tested,
                "violations": report.violations,
                "first_violation": first,
            })))
        }
    }
}

fn fedder(ring: &RingArgs, cfg: &RunConfig) -> Result<Report> {
    let ctx = ring.build(cfg)?;
    let shortcut = fedder_multinomial(&ctx)?;
    let full = fedder_expansion(&ctx)?;
    let agrees = shortcut.as_ref().map(|s| *s == full);
    Ok(Report::new(json!({
        "command": "fedder",
        "ring": describe(&ctx),
        "f_pure": full.f_pure,
        "witness_monomial": full.witness.as_ref().map(|m| ctx.format_monomial(m)),
        "coefficient": full.coefficient,
        "multinomial_agrees": agrees,
    })))
}

fn describe(ctx: &Arc<RingCtx>) -> String {
    RingDescriptor::from_ctx(ctx).to_string()
}

fn strings(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

fn ideal_from(text: &str, ctx: &Arc<RingCtx>) -> Result<Ideal> {
    Ideal::new(ctx, parse_poly_list(text, ctx)?)
}

fn perf_element(text: &str, ctx: &Arc<RingCtx>) -> Result<PerfElement> {
    let (body, level) = parse_root_form(text, ctx)?;
    perf_normalize(body, level)
}

fn action_from(args: &ActionArgs, cfg: &RunConfig) -> Result<CyclicAction> {
    let ctx = args.ring.build(cfg)?;
    match &args.perm {
        None => CyclicAction::rotation(&ctx),
        Some(text) => {
            let perm = text
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidArgument(format!("bad permutation `{text}`")))?;
            CyclicAction::from_permutation(&ctx, perm)
        }
    }
}

fn evidence_json(ev: &TightClosureEvidence) -> Value {
    let trace: Vec<Value> = ev.trace.iter().map(|s| json!({ "e": s.e, "member": s.member })).collect();
    json!({
        "witness": ev.witness.as_ref().map(|c| c.to_string()),
        "element": ev.element.to_string(),
        "ideal": strings(&ev.ideal),
        "checked_e": ev.checked_e,
        "trace": trace,
        "verdict": ev.verdict.to_string(),
        "status": "supporting evidence for all large e, not a proof",
    })
}
