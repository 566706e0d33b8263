#![allow(dead_code)]

use choquet_core::choquet2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relation_model::{Alt, AltSet, PreferenceRelation, ProductSpace};

pub fn induce(f1: &[f64], f2: &[f64], nu1: f64, nu2: f64) -> PreferenceRelation {
    let space = ProductSpace::with_sizes(f1.len(), f2.len());
    PreferenceRelation::from_utility(space, |x| choquet2(nu1, nu2, f1[x.0], f2[x.1])).unwrap()
}

pub fn additive(f1: &[f64], f2: &[f64]) -> PreferenceRelation {
    let space = ProductSpace::with_sizes(f1.len(), f2.len());
    PreferenceRelation::from_utility(space, |x| f1[x.0] + f2[x.1]).unwrap()
}

pub fn random_values(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(0.0..1.0)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Direct transcription of the triple-cancellation definition.
pub fn tc_oracle(rel: &PreferenceRelation, s: &AltSet) -> bool {
    let (m1, m2) = (rel.space().m1(), rel.space().m2());
    for a in 0..m1 {
        for b in 0..m1 {
            for c in 0..m1 {
                for d in 0..m1 {
                    for p in 0..m2 {
                        for q in 0..m2 {
                            for r in 0..m2 {
                                for t in 0..m2 {
                                    let pts = [
                                        Alt(a, p),
                                        Alt(b, q),
                                        Alt(a, r),
                                        Alt(b, t),
                                        Alt(c, p),
                                        Alt(d, q),
                                        Alt(c, r),
                                        Alt(d, t),
                                    ];
                                    if !pts.iter().all(|&x| s.contains(x)) {
                                        continue;
                                    }
                                    let [ap, bq, ar, bt, cp, dq, cr, dt] = pts;
                                    if rel.ge(bq, ap)
                                        && rel.ge(ar, bt)
                                        && rel.ge(cp, dq)
                                        && !rel.ge(cr, dt)
                                    {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}
