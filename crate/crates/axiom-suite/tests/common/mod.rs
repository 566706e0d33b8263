#![allow(dead_code)]

use choquet_core::choquet2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relation_model::{PreferenceRelation, ProductSpace};

pub fn induce(f1: &[f64], f2: &[f64], nu1: f64, nu2: f64) -> PreferenceRelation {
    let space = ProductSpace::with_sizes(f1.len(), f2.len());
    PreferenceRelation::from_utility(space, |x| choquet2(nu1, nu2, f1[x.0], f2[x.1])).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_values(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(0.0..1.0)).collect()
}

/// Random instance of the given capacity, redrawn until no two labels on an
/// axis are indifferent everywhere.
pub fn induced_distinct(
    rng: &mut ChaCha8Rng,
    m1: usize,
    m2: usize,
    nu1: f64,
    nu2: f64,
) -> PreferenceRelation {
    loop {
        let f1 = random_values(rng, m1);
        let f2 = random_values(rng, m2);
        let rel = induce(&f1, &f2, nu1, nu2);
        if rel.duplicate_labels(relation_model::Axis::One).is_none()
            && rel.duplicate_labels(relation_model::Axis::Two).is_none()
        {
            return rel;
        }
    }
}

/// Capacity for regime `r` (0 additive, 1 interactive, 2 min, 3 max,
/// 4 one weight degenerate).
pub fn regime_nu(rng: &mut ChaCha8Rng, r: usize) -> (f64, f64) {
    let interior = |rng: &mut ChaCha8Rng| rng.gen_range(0.05..0.95);
    match r {
        0 => {
            let w = interior(rng);
            (w, 1.0 - w)
        }
        1 => loop {
            let (a, b) = (interior(rng), interior(rng));
            if (a + b - 1.0).abs() > 0.05 {
                return (a, b);
            }
        },
        2 => (0.0, 0.0),
        3 => (1.0, 1.0),
        _ => {
            let edge = if rng.gen_bool(0.5) { 0.0 } else { 1.0 };
            let w = interior(rng);
            if rng.gen_bool(0.5) {
                (edge, w)
            } else {
                (w, edge)
            }
        }
    }
}
