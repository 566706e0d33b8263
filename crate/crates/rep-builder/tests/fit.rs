mod common;

use choquet_core::choquet2;
use common::{design, induce, induced_distinct, rng, util};
use relation_model::{Alt, Cmp, PreferenceRelation};
use rep_builder::{fit, Fit, FitConfig, FitPath, Representation, Stage};

fn fit_ok(rel: &PreferenceRelation) -> Fit {
    let f = fit(rel, &FitConfig::default()).unwrap_or_else(|d| panic!("{d}"));
    assert!(
        f.agreement.is_exact(),
        "{:?}",
        f.agreement.first_disagreement
    );
    f
}

fn nu(rep: &Representation) -> (f64, f64) {
    (rep.nu1, rep.nu2)
}

fn assert_frontier(rep: &Representation, rel: &PreferenceRelation) {
    let eps = 1e-7 * rep.scale();
    for x in rel.space().alts() {
        let d = (rep.f1[x.0] - rep.f2[x.1]).abs();
        if rep.labeling.theta(x) && !rep.labeling.is_extreme(x) {
            assert!(d <= eps, "{x:?} on the frontier with gap {d}");
        }
        if d <= eps {
            assert!(rep.labeling.theta(x), "{x:?} has f1 = f2 off the frontier");
        }
    }
}

#[test]
fn interactive_design_recovers_capacity() {
    let (f1, f2) = design(&mut rng(11), 6, 1.0);
    let rel = induce(&f1, &f2, 0.5, 0.25);
    let f = fit_ok(&rel);
    let (a, b) = nu(&f.representation);
    assert!((a - 0.5).abs() < 1e-6 && (b - 0.25).abs() < 1e-6, "{a} {b}");
    assert_eq!(f.path, FitPath::TwoEssential);
    assert_eq!(f.representation.case(), 2);
    assert_frontier(&f.representation, &rel);
}

#[test]
fn relabeled_designs_give_the_same_capacity() {
    for &(n1, n2) in &[(0.5, 0.75), (0.75, 0.5), (0.25, 0.5)] {
        let mut seen = Vec::new();
        for seed in 0..2 {
            let (f1, f2) = design(&mut rng(seed), 6, 0.0);
            seen.push(nu(&fit_ok(&induce(&f1, &f2, n1, n2)).representation));
        }
        assert!((seen[0].0 - seen[1].0).abs() < 1e-6 && (seen[0].1 - seen[1].1).abs() < 1e-6);
        assert!((seen[0].0 - n1).abs() < 1e-6 && (seen[0].1 - n2).abs() < 1e-6);
    }
}

#[test]
fn additive_instance_is_case_one() {
    let (rel, _, _) = induced_distinct(&mut rng(2), 5, 5, 0.3, 0.7);
    let f = fit_ok(&rel);
    assert_eq!(f.path, FitPath::Additive);
    assert_eq!(f.representation.case(), 1);
    assert!((f.representation.lambda().unwrap() - 1.0).abs() < 1e-12);
    assert!((f.representation.nu1 + f.representation.nu2 - 1.0).abs() < 1e-12);
}

#[test]
fn lattice_instances_take_the_one_essential_path() {
    for (n, target) in [(0.0, 5), (1.0, 5)] {
        let (rel, _, _) = induced_distinct(&mut rng(7), 5, 5, n, n);
        let f = fit_ok(&rel);
        assert_eq!(f.path, FitPath::OneEssential);
        assert_eq!(nu(&f.representation), (n, n));
        assert_eq!(f.representation.case(), target);
    }
}

#[test]
fn mixed_instance_takes_zero_lambda() {
    let (f1, f2) = design(&mut rng(5), 6, 1.0);
    let rel = induce(&f1, &f2, 0.5, 0.0);
    let f = fit_ok(&rel);
    assert_eq!(f.path, FitPath::Mixed);
    assert_eq!(f.representation.nu2, 0.0);
    assert_eq!(f.representation.lambda(), Some(0.0));
    assert_eq!(f.representation.case(), 4);
}

#[test]
fn glued_kinks_fail_at_classification() {
    let rel = util(5, 5, |a, p| {
        let (a, p) = (a as f64 + 1.0, p as f64 + 1.0);
        a.max(2.0 * p) + (2.0 * a).max(p)
    });
    let d = fit(&rel, &FitConfig::default()).unwrap_err();
    assert_eq!(d.stage, Stage::Classification);
}

#[test]
fn intransitive_relation_is_rejected_with_witness() {
    let rel = induce(&[0.0, 1.0, 2.0], &[0.0, 1.0, 2.0], 0.5, 0.5);
    let bad = rel.with_entry(Alt(0, 0), Alt(2, 2), Cmp::Pref);
    let d = fit(&bad, &FitConfig::default()).unwrap_err();
    assert_eq!(d.stage, Stage::Classification);
    assert!(d.witness.is_some());
}

#[test]
fn duplicate_labels_are_fitted_on_the_input() {
    let f1 = [0.0, 2.0, 2.0, 5.0];
    let f2 = [1.0, 3.0, 4.0, 4.0];
    let rel = induce(&f1, &f2, 0.5, 0.25);
    let f = fit_ok(&rel);
    let rep = &f.representation;
    assert_eq!(rep.f1.len(), 4);
    assert_eq!(rep.f1[1], rep.f1[2]);
    assert_eq!(rep.f2[2], rep.f2[3]);
}

#[test]
fn values_are_choquet_integrals() {
    let (f1, f2) = design(&mut rng(8), 5, 0.0);
    let rel = induce(&f1, &f2, 0.75, 0.5);
    let rep = fit_ok(&rel).representation;
    for x in rel.space().alts() {
        let direct = choquet2(rep.nu1, rep.nu2, rep.f1[x.0], rep.f2[x.1]);
        assert!((rep.value(x) - direct).abs() <= 1e-9);
    }
}

#[test]
fn json_round_trip() {
    let (f1, f2) = design(&mut rng(9), 4, 0.0);
    let rel = induce(&f1, &f2, 0.5, 0.25);
    let f = fit_ok(&rel);
    let v = f.representation.to_json();
    assert_eq!(Representation::from_json(&v).unwrap(), f.representation);
    for key in ["f1", "f2", "k", "lambda", "nu", "case", "regions"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let full = f.to_json();
    assert_eq!(full["agreement"], 100.0);
    assert!(full.get("path").is_some());
}

#[test]
fn lambda_is_null_when_undefined() {
    let (rel, _, _) = induced_distinct(&mut rng(3), 4, 4, 1.0, 1.0);
    let v = fit_ok(&rel).representation.to_json();
    assert!(v["lambda"].is_null());
    assert!(Representation::from_json(&v).is_ok());
}
