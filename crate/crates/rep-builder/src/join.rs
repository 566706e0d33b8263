use relation_model::ConeKind;
use serde::Serialize;
use thiserror::Error;

use crate::cone::AdditiveCone;

/// Additive values over a whole region, per label (`None` off the region).
#[derive(Debug, Clone, PartialEq)]
pub struct RegionScale {
    pub kind: ConeKind,
    pub v1: Vec<Option<f64>>,
    pub v2: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
pub enum JoinError {
    #[error("no cones to join")]
    Empty,
    #[error(
        "cones {first} and {second} disagree after affine alignment (residual {residual:.3e})"
    )]
    Inconsistent {
        first: usize,
        second: usize,
        residual: f64,
    },
    #[error("cone {cone} shares too few labels with the joined cones to fix the transform")]
    Disconnected { cone: usize },
}

/// `α, β₁, β₂` minimizing the squared mismatch of `α·src + βᵢ` against `dst`
/// over labels defined in both, plus the largest absolute mismatch.
pub(crate) fn affine_fit(
    src: [&[Option<f64>]; 2],
    dst: [&[Option<f64>]; 2],
) -> Option<(f64, [f64; 2], f64)> {
    let mut common: [Vec<(f64, f64)>; 2] = [Vec::new(), Vec::new()];
    for axis in 0..2 {
        for (s, d) in src[axis].iter().zip(dst[axis]) {
            if let (Some(s), Some(d)) = (s, d) {
                common[axis].push((*s, *d));
            }
        }
        if common[axis].is_empty() {
            return None;
        }
    }
    let mean = |v: &[(f64, f64)]| {
        let n = v.len() as f64;
        (
            v.iter().map(|p| p.0).sum::<f64>() / n,
            v.iter().map(|p| p.1).sum::<f64>() / n,
        )
    };
    let means = [mean(&common[0]), mean(&common[1])];
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for axis in 0..2 {
        for &(s, d) in &common[axis] {
            sxy += (s - means[axis].0) * (d - means[axis].1);
            sxx += (s - means[axis].0).powi(2);
        }
    }
    if sxx <= 0.0 {
        return None;
    }
    let alpha = sxy / sxx;
    let beta = [
        means[0].1 - alpha * means[0].0,
        means[1].1 - alpha * means[1].0,
    ];
    let mut worst: f64 = 0.0;
    for axis in 0..2 {
        for &(s, d) in &common[axis] {
            worst = worst.max((alpha * s + beta[axis] - d).abs());
        }
    }
    Some((alpha, beta, worst))
}

fn spread(v: &[Option<f64>]) -> f64 {
    let vals = v.iter().flatten();
    let hi = vals.clone().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let lo = vals.fold(f64::INFINITY, |a, &b| a.min(b));
    if hi > lo {
        hi - lo
    } else {
        0.0
    }
}

/// Joins cone scales into one region scale.
///
/// The first cone fixes the scale. Each remaining cone, taken in order of
/// most labels shared with the joined part, is mapped by the positive affine
/// transform `α·v + βᵢ` fitted on the shared labels; a relative mismatch
/// above `tol` is an inconsistency naming the joined cone with the largest
/// overlap and the incoming one.
pub fn join_cones(
    cones: &[AdditiveCone],
    kind: ConeKind,
    tol: f64,
) -> Result<RegionScale, JoinError> {
    let first = cones.first().ok_or(JoinError::Empty)?;
    let mut v1 = first.v1.clone();
    let mut v2 = first.v2.clone();
    let mut joined = vec![0usize];
    let mut pending: Vec<usize> = (1..cones.len()).collect();
    let shared = |c: &AdditiveCone, v1: &[Option<f64>], v2: &[Option<f64>]| {
        let n1 =
            c.v1.iter()
                .zip(v1)
                .filter(|(a, b)| a.is_some() && b.is_some());
        let n2 =
            c.v2.iter()
                .zip(v2)
                .filter(|(a, b)| a.is_some() && b.is_some());
        n1.count() + n2.count()
    };
    while !pending.is_empty() {
        let (pos, &next) = pending
            .iter()
            .enumerate()
            .max_by_key(|&(i, &c)| (shared(&cones[c], &v1, &v2), std::cmp::Reverse(i)))
            .expect("pending is non-empty");
        pending.remove(pos);
        let cone = &cones[next];
        let Some((alpha, beta, worst)) = affine_fit([&cone.v1, &cone.v2], [&v1, &v2]) else {
            if cone.members.count() <= 1 {
                continue;
            }
            return Err(JoinError::Disconnected { cone: next });
        };
        let scale = spread(&v1).max(spread(&v2)).max(f64::MIN_POSITIVE);
        let residual = worst / scale;
        if alpha <= 0.0 || residual > tol {
            let partner = joined
                .iter()
                .copied()
                .max_by_key(|&j| {
                    (
                        shared(cone, &cones[j].v1, &cones[j].v2),
                        std::cmp::Reverse(j),
                    )
                })
                .expect("at least one joined cone");
            return Err(JoinError::Inconsistent {
                first: partner,
                second: next,
                residual,
            });
        }
        for (slot, val) in v1.iter_mut().zip(&cone.v1) {
            if slot.is_none() {
                *slot = val.map(|v| alpha * v + beta[0]);
            }
        }
        for (slot, val) in v2.iter_mut().zip(&cone.v2) {
            if slot.is_none() {
                *slot = val.map(|v| alpha * v + beta[1]);
            }
        }
        joined.push(next);
    }
    Ok(RegionScale { kind, v1, v2 })
}
