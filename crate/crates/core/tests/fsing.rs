mod common;

use common::*;
use perfcalc::fsing::*;
use perfcalc::groebner::frobenius_power_ideal;
use perfcalc::perfection::{frobenius_closure_member, ClosureSearch};
use perfcalc::ring::Monomial;
use proptest::prelude::*;

const QUINTIC_VARS: [&str; 5] = ["x", "y", "z", "u", "v"];
const QUINTIC: &str = "x^5+y^5+z^5+u^5+v^5";

/// Untruncated `F^(p-1)` scanned for a monomial below `m^[p]`.
fn fedder_by_power(ctx: &std::sync::Arc<perfcalc::ring::RingCtx>) -> Option<(Monomial, u32)> {
    let p = ctx.characteristic();
    let power = ctx.modulus().unwrap().pow(p as u64 - 1).unwrap();
    power.terms().iter().find(|(m, _)| m.exps().iter().all(|&e| e < p)).cloned()
}

#[test]
fn quintic_paths_agree_across_primes() {
    for p in [2, 3, 7, 11, 13, 31, 41] {
        let q = quotient(p, &QUINTIC_VARS, QUINTIC);
        let full = fedder_expansion(&q).unwrap();
        assert_eq!(fedder_multinomial(&q).unwrap().as_ref(), Some(&full), "p = {p}");
        assert_eq!(full.f_pure, p % 5 == 1, "p = {p}");
    }
}

#[test]
fn truncated_expansion_matches_plain_power() {
    for (p, f) in [(11, QUINTIC), (3, QUINTIC), (5, "x^2*y+y^3+z^2*x"), (7, "x*y*z+x^3+2*y^3")] {
        let q = quotient(p, &QUINTIC_VARS, f);
        let check = fedder_expansion(&q).unwrap();
        let oracle = fedder_by_power(&q);
        assert_eq!(check.witness, oracle.as_ref().map(|(m, _)| m.clone()));
        assert_eq!(check.coefficient, oracle.map(|(_, c)| c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fedder_paths_agree_on_random_hypersurfaces(p in prop::sample::select(vec![2u32, 3, 5, 7]), raw in terms(3, 7, 4, 4)) {
        let s = ring(p, &["x", "y", "z"]);
        let f = build(&s, &raw);
        prop_assume!(!f.is_constant() && f.terms().iter().all(|(m, _)| !m.is_one()));
        let q = s.with_modulus(&f).unwrap();
        let check = fedder_expansion(&q).unwrap();
        let oracle = fedder_by_power(&q);
        prop_assert_eq!(check.witness, oracle.as_ref().map(|(m, _)| m.clone()));
        if let Some(shortcut) = fedder_multinomial(&q).unwrap() {
            prop_assert_eq!(shortcut.f_pure, check.f_pure);
        }
    }

    #[test]
    fn closure_members_stay_members_at_higher_exponents(raw in terms(2, 2, 3, 3), gens in prop::collection::vec(terms(2, 2, 2, 2), 1..3)) {
        let s = quotient(2, &["x", "y", "z"], "z^2+x^2*y+x*y^2");
        let pad = |raw: &[(Vec<u32>, u32)]| raw.iter().map(|(e, c)| (vec![e[0], e[1], 0], *c)).collect::<Vec<_>>();
        let r = build(&s, &pad(&raw));
        let gens: Vec<_> = gens.iter().map(|g| build(&s, &pad(g))).collect();
        let mut with_z = gens.clone();
        with_z.push(poly(&s, "z"));
        let i = perfcalc::groebner::Ideal::new(&s, with_z).unwrap();
        if let ClosureSearch::Found(e) = frobenius_closure_member(&r, &i, &s, 2).unwrap() {
            for later in e..=3 {
                let bracket = frobenius_power_ideal(&i, later).unwrap();
                prop_assert!(bracket.contains(&r.frobenius_power(later).unwrap()).unwrap());
            }
            let ev = tight_closure_verify(&poly(&s, "1"), &r.frobenius_power(e - 1).unwrap(), &i, &s, 1).unwrap();
            prop_assert_eq!(ev.verdict, TightVerdict::Verified(1));
        }
    }
}

#[test]
fn quintic_witness_is_found_and_replays() {
    let q = quotient(11, &QUINTIC_VARS, QUINTIC);
    let i = ideal(&q, "y,z,u,v");
    let r = poly(&q, "x^4");
    let found = tight_witness_search(&r, &i, &q, 2, 20).unwrap();
    assert_eq!(found.verdict, TightVerdict::Verified(2));
    let c = found.witness.clone().unwrap();
    assert!(!perfcalc::groebner::Ideal::zero(&q).contains(&c).unwrap());
    let replay = tight_closure_verify(&c, &r, &i, &q, 2).unwrap();
    assert_eq!(replay.verdict, found.verdict);
    assert_eq!(replay.trace, found.trace);
    assert_eq!(replay.checked_e, vec![1, 2]);
    // the unit is not a witness: x^4 is not in I itself
    let unit = tight_closure_verify(&poly(&q, "1"), &r, &i, &q, 2).unwrap();
    assert_eq!(unit.verdict, TightVerdict::FailedAt(1));
}

#[test]
fn linear_form_has_no_small_witness() {
    let q = quotient(11, &QUINTIC_VARS, QUINTIC);
    let ev = tight_witness_search(&poly(&q, "x"), &ideal(&q, "y,z,u,v"), &q, 2, 8).unwrap();
    assert_eq!(ev.verdict, TightVerdict::WitnessNotFound);
    assert!(ev.witness.is_none());
    assert_eq!(ev.candidates_tried, 1287);
}

#[test]
fn search_is_deterministic() {
    let q = quotient(11, &QUINTIC_VARS, QUINTIC);
    let i = ideal(&q, "y,z,u,v");
    let r = poly(&q, "x^4");
    let a = tight_witness_search(&r, &i, &q, 2, 20).unwrap();
    let b = tight_witness_search(&r, &i, &q, 2, 20).unwrap();
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.candidates_tried, b.candidates_tried);
}

#[test]
fn spot_check_reports_bounds() {
    let q = quotient(2, &["x", "y", "z"], "z^2+x^2*y+x*y^2");
    let res = cyclic_fpurity_spot_check(&q, &[ideal(&q, "x,y"), ideal(&q, "1")], 1, 2).unwrap();
    assert_eq!(res[0].failure.as_ref().map(|(r, e)| (r.to_string(), *e)), Some(("z".into(), 1)));
    assert!(res[1].failure.is_none());
}

#[test]
fn remark_experiment_in_polynomial_ring_has_no_violations() {
    let s = ring(2, &["x", "y", "z"]);
    let sampling = PairSampling::Random { trials: 100, seed: 2024, max_degree: 3, max_terms: 3 };
    let report = colon_frobenius_experiment(&s, sampling, 1).unwrap();
    assert_eq!((report.pairs_tested, report.violations), (100, 0));
    let report = colon_frobenius_experiment(&s, PairSampling::MonomialPairs { max_degree: 2 }, 2).unwrap();
    assert_eq!(report.violations, 0);
}

#[test]
fn remark_experiment_violation_replays() {
    let q = quotient(2, &["x", "y", "z"], "x*y+z^2");
    let report = colon_frobenius_experiment(&q, PairSampling::MonomialPairs { max_degree: 2 }, 1).unwrap();
    assert!(report.violations > 0);
    let v = report.first_violation.unwrap();
    let (_, _, same) = colon_frobenius_pair(&v.f, &v.g, &q, 1).unwrap();
    assert!(!same);
}
