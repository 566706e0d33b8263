#![allow(dead_code)]

use choquet_core::choquet2;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relation_model::{Axis, PreferenceRelation, ProductSpace};

pub fn induce(f1: &[f64], f2: &[f64], nu1: f64, nu2: f64) -> PreferenceRelation {
    let space = ProductSpace::with_sizes(f1.len(), f2.len());
    PreferenceRelation::from_utility(space, |x| choquet2(nu1, nu2, f1[x.0], f2[x.1])).unwrap()
}

pub fn util(m1: usize, m2: usize, u: impl Fn(usize, usize) -> f64) -> PreferenceRelation {
    let space = ProductSpace::with_sizes(m1, m2);
    PreferenceRelation::from_utility(space, |x| u(x.0, x.1)).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_values(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(0.0..1.0)).collect()
}

pub fn distinct_labels(rel: &PreferenceRelation) -> bool {
    rel.duplicate_labels(Axis::One).is_none() && rel.duplicate_labels(Axis::Two).is_none()
}

/// Random instance redrawn until no two labels on an axis coincide.
pub fn induced_distinct(
    rng: &mut ChaCha8Rng,
    m1: usize,
    m2: usize,
    nu1: f64,
    nu2: f64,
) -> (PreferenceRelation, Vec<f64>, Vec<f64>) {
    loop {
        let f1 = random_values(rng, m1);
        let f2 = random_values(rng, m2);
        let rel = induce(&f1, &f2, nu1, nu2);
        if distinct_labels(&rel) {
            return (rel, f1, f2);
        }
    }
}

/// Evenly spaced `f1 = 0..m`, `f2 = o..o+m`, each axis shuffled.
pub fn design(rng: &mut ChaCha8Rng, m: usize, offset: f64) -> (Vec<f64>, Vec<f64>) {
    let mut f1: Vec<f64> = (0..m).map(|i| i as f64).collect();
    let mut f2: Vec<f64> = (0..m).map(|i| i as f64 + offset).collect();
    f1.shuffle(rng);
    f2.shuffle(rng);
    (f1, f2)
}
