use instance_lab::{induce, mutate, regime_spec, MutationOp, Regime};
use proptest::prelude::*;
use relation_model::Cmp;
use rep_builder::{fit, FitConfig};

fn regime() -> impl Strategy<Value = Regime> {
    prop::sample::select(Regime::ALL.to_vec())
}

fn op() -> impl Strategy<Value = MutationOp> {
    prop::sample::select(MutationOp::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mutants_differ_and_stay_consistent(seed in any::<u64>(), r in regime(), op in op(),
                                          m1 in 2usize..=5, m2 in 2usize..=5) {
        let inst = induce(&regime_spec(r, (m1, m2), seed)).unwrap();
        if let Ok((out, m)) = mutate(&inst.relation, op, seed) {
            prop_assert_ne!(&out, &inst.relation);
            let s = out.space();
            for x in s.alts() {
                prop_assert_eq!(out.cmp(x, x), Cmp::Indiff);
                for y in s.alts() {
                    prop_assert_eq!(out.cmp(x, y), out.cmp(y, x).mirror());
                }
            }
            for e in &m.edits {
                prop_assert_eq!(inst.relation.cmp(e.x, e.y), e.before);
                prop_assert_eq!(out.cmp(e.x, e.y), e.after);
            }
        }
    }

    #[test]
    fn refit_induces_the_same_relation(seed in any::<u64>(), r in regime(),
                                       m1 in 3usize..=5, m2 in 3usize..=5) {
        let inst = induce(&regime_spec(r, (m1, m2), seed)).unwrap();
        let cfg = FitConfig::default();
        let rep = fit(&inst.relation, &cfg)
            .map_err(|d| TestCaseError::fail(d.to_string()))?
            .representation;
        prop_assert_eq!(rep.induced(inst.relation.space(), cfg.tol), inst.relation);
    }
}
