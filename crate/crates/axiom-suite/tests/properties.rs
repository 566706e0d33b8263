mod common;

use axiom_suite::*;
use common::*;
use proptest::prelude::*;
use rand::Rng;
use relation_model::{AltSet, Budget, Cmp, PreferenceRelation};

/// Overwrites `edits` random off-diagonal entries (and their mirrors).
fn mutate(rel: &PreferenceRelation, edits: usize, seed: u64) -> PreferenceRelation {
    let mut r = rng(seed);
    let n = rel.space().len();
    let mut out = rel.clone();
    for _ in 0..edits {
        let x = rel.space().alt(r.gen_range(0..n));
        let y = rel.space().alt(r.gen_range(0..n));
        if x == y {
            continue;
        }
        let c = [Cmp::Pref, Cmp::Indiff, Cmp::Dispref][r.gen_range(0..3)];
        out = out.with_entry(x, y, c);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witnesses_replay_on_mutants(seed in any::<u64>(), m1 in 3usize..=5, m2 in 3usize..=5, edits in 1usize..=3, regime in 0usize..5) {
        let mut r = rng(seed);
        let (nu1, nu2) = regime_nu(&mut r, regime);
        let base = induced_distinct(&mut r, m1, m2, nu1, nu2);
        let rel = mutate(&base, edits, seed ^ 0x5eed);
        let out = check_all(&rel, &CheckConfig::default());
        for rep in out.reports.iter().filter(|x| x.is_violation()) {
            let w = rep.witness.as_ref().unwrap();
            prop_assert!(w.replays(&rel, out.labeling.as_ref()), "{} {:?}", rep.axiom.name(), w);
        }
        for rep in &out.reports {
            prop_assert_eq!(rep.witness.is_some(), rep.status == Status::Violated);
        }
    }

    #[test]
    fn label_free_axioms_are_necessary(seed in any::<u64>(), m1 in 4usize..=6, m2 in 4usize..=6, regime in 0usize..5) {
        let mut r = rng(seed);
        let (nu1, nu2) = regime_nu(&mut r, regime);
        let rel = induced_distinct(&mut r, m1, m2, nu1, nu2);
        let out = check_all(&rel, &CheckConfig::default());
        for id in [AxiomId::A1, AxiomId::A2, AxiomId::Struct, AxiomId::Regions, AxiomId::A3, AxiomId::A7] {
            prop_assert_eq!(out.report(id).unwrap().status, Status::Ok, "{}", id.name());
        }
    }

    #[test]
    fn region_axioms_hold_for_additive_min_max(seed in any::<u64>(), m1 in 4usize..=6, m2 in 4usize..=6, regime in prop::sample::select(vec![0usize, 2, 3])) {
        let mut r = rng(seed);
        let (nu1, nu2) = regime_nu(&mut r, regime);
        let rel = induced_distinct(&mut r, m1, m2, nu1, nu2);
        let out = check_all(&rel, &CheckConfig::default());
        prop_assert!(!out.has_violation(), "{:?}", out.reports.iter().find(|x| x.is_violation()));
    }

    #[test]
    fn cancellation_survives_restriction(seed in any::<u64>(), keep in prop::collection::vec(any::<bool>(), 25)) {
        let mut r = rng(seed);
        let (nu1, nu2) = regime_nu(&mut r, 1);
        let rel = induced_distinct(&mut r, 5, 5, nu1, nu2);
        let s = rel.space();
        let lab = relation_model::classify_regions(&rel).unwrap();
        for kind in [relation_model::ConeKind::SE, relation_model::ConeKind::NW] {
            let set = lab.region_set(s, kind);
            let full = check_triple_cancellation(&rel, &set, &mut Budget::default());
            let sub = AltSet::from_alts(s, set.iter().filter(|x| keep[s.index(*x)]));
            let part = check_triple_cancellation(&rel, &sub, &mut Budget::default());
            if full.status == Status::Ok {
                prop_assert_ne!(part.status, Status::Violated);
            }
            if part.status == Status::Violated {
                prop_assert_eq!(full.status, Status::Violated);
            }
        }
    }

    #[test]
    fn reports_are_deterministic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (nu1, nu2) = regime_nu(&mut r, 4);
        let rel = mutate(&induced_distinct(&mut r, 4, 4, nu1, nu2), 2, seed);
        let a = check_all(&rel, &CheckConfig::default());
        let b = check_all(&rel, &CheckConfig::default());
        prop_assert_eq!(a.reports, b.reports);
    }
}
