use relation_model::{Alt, ProductSpace, RegionLabeling};
use serde::Serialize;
use thiserror::Error;

use crate::join::RegionScale;

/// Common value functions after aligning the two region scales.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Alignment {
    pub f1: Vec<Option<f64>>,
    pub f2: Vec<Option<f64>>,
    pub k: f64,
    pub lambda: f64,
    /// Largest relative mismatch over the three fits.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
pub enum AlignError {
    #[error("the regions share fewer than two distinct axis-1 values")]
    NoCommonScale,
    #[error("lambda unidentifiable: the regions share no distinct axis-2 values")]
    LambdaUnidentifiable,
    #[error("no reference pair on the frontier; the relation falls to the additive branch")]
    NoReferencePair,
    #[error("{stage} fit residual {residual:.3e} exceeds tolerance")]
    Residual {
        stage: &'static str,
        residual: f64,
        /// The least-squares result, usable as a starting point.
        estimate: Box<Alignment>,
    },
}

/// Least-squares line `y ≈ s·x + c` with the largest absolute mismatch.
/// `None` when the `x` values do not vary.
fn line(points: &[(f64, f64)]) -> Option<(f64, f64, f64)> {
    if points.is_empty() {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let s = sxy / sxx;
    let c = my - s * mx;
    let worst = points
        .iter()
        .map(|p| (s * p.0 + c - p.1).abs())
        .fold(0.0, f64::max);
    Some((s, c, worst))
}

/// Line through the largest number of `points`, refitted by least squares
/// on its inliers, with the relative residual over those inliers.
///
/// Frontier points read off finite data include some off the line
/// `f1 = f2`, so a plain fit over all of them is biased. Candidate lines
/// come from pairs with distinct `x` and positive slope; ties keep the
/// first pair.
fn consensus_line(points: &[(f64, f64)], tol: f64) -> Option<(f64, f64, f64)> {
    let sy = spread(points.iter().map(|p| p.1));
    let near = |s: f64, c: f64, p: &(f64, f64)| (s * p.0 + c - p.1).abs() <= tol * sy;
    let mut best: Option<(usize, f64, f64)> = None;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if q.0 == p.0 {
                continue;
            }
            let s = (q.1 - p.1) / (q.0 - p.0);
            if s <= 0.0 {
                continue;
            }
            let c = p.1 - s * p.0;
            let n = points.iter().filter(|r| near(s, c, r)).count();
            if best.is_none_or(|b| n > b.0) {
                best = Some((n, s, c));
            }
        }
    }
    let inliers: Vec<(f64, f64)> = match best {
        Some((_, s, c)) => points.iter().copied().filter(|r| near(s, c, r)).collect(),
        None => points.to_vec(),
    };
    let (s, c, w) = line(&inliers)?;
    Some((s, c, w / sy))
}

fn spread(points: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = points.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if hi > lo {
        hi - lo
    } else {
        f64::MIN_POSITIVE
    }
}

fn pairs(a: &[Option<f64>], b: &[Option<f64>]) -> Vec<(f64, f64)> {
    a.iter()
        .zip(b)
        .filter_map(|(x, y)| Some(((*x)?, (*y)?)))
        .collect()
}

/// Non-extreme Θ points in id order, and the lexicographically smallest
/// pair `r⁰ < r¹` among them with `r¹` strictly above `r⁰` on both axes.
pub fn reference_pair(space: &ProductSpace, labeling: &RegionLabeling) -> Option<(Alt, Alt)> {
    let theta: Vec<Alt> = space
        .alts()
        .filter(|&x| labeling.theta(x) && !labeling.is_extreme(x))
        .collect();
    let (o1, o2) = (&labeling.orders.o1, &labeling.orders.o2);
    for (i, &r0) in theta.iter().enumerate() {
        for &r1 in &theta[i + 1..] {
            if o1.rank(r1.0) > o1.rank(r0.0) && o2.rank(r1.1) > o2.rank(r0.1) {
                return Some((r0, r1));
            }
        }
    }
    None
}

/// Aligns the SE and NW scales into common `f1`, `f2`.
///
/// `V^NW₁` is mapped affinely onto `V^SE₁`; `λ` is the slope of the aligned
/// `V^NW₂` against `V^SE₂` on shared labels; `k` is the slope of `V^SE₂`
/// against `V^SE₁` on the line through most non-extreme Θ points, where
/// `f1 = f2`. Finally `r⁰` is sent to 0 and `f1(r¹₁)` to 1.
pub fn align_regions(
    vse: &RegionScale,
    vnw: &RegionScale,
    space: &ProductSpace,
    labeling: &RegionLabeling,
    tol: f64,
) -> Result<Alignment, AlignError> {
    let (r0, r1) = reference_pair(space, labeling).ok_or(AlignError::NoReferencePair)?;

    let p1 = pairs(&vnw.v1, &vse.v1);
    let (a, b, w1) = line(&p1).ok_or(AlignError::NoCommonScale)?;
    let res1 = w1 / spread(p1.iter().map(|p| p.1));
    let nw1: Vec<Option<f64>> = vnw.v1.iter().map(|v| v.map(|v| a * v + b)).collect();
    let nw2: Vec<Option<f64>> = vnw.v2.iter().map(|v| v.map(|v| a * v)).collect();

    let p2 = pairs(&vse.v2, &nw2);
    let (lambda, c_nw, w2) = line(&p2).ok_or(AlignError::LambdaUnidentifiable)?;
    let res2 = w2 / spread(p2.iter().map(|p| p.1)).max(spread(p2.iter().map(|p| p.0)));

    let theta: Vec<Alt> = space
        .alts()
        .filter(|&x| labeling.theta(x) && !labeling.is_extreme(x))
        .collect();
    let p3: Vec<(f64, f64)> = theta
        .iter()
        .filter_map(|x| Some((vse.v1[x.0]?, vse.v2[x.1]?)))
        .collect();
    let (k, c_se, res3) = consensus_line(&p3, tol).ok_or(AlignError::NoReferencePair)?;

    let raw1: Vec<Option<f64>> = vse.v1.iter().zip(&nw1).map(|(s, n)| s.or(*n)).collect();
    let raw2: Vec<Option<f64>> = vse
        .v2
        .iter()
        .zip(&nw2)
        .map(|(s, n)| {
            let se_equiv = s.or_else(|| {
                let n = (*n)?;
                (lambda != 0.0).then(|| (n - c_nw) / lambda)
            })?;
            Some((se_equiv - c_se) / k)
        })
        .collect();
    let zero = raw1[r0.0];
    let unit = raw1[r1.0];
    let (f1, f2) = match (zero, unit) {
        (Some(z), Some(u)) if u > z => {
            let t = |v: &Vec<Option<f64>>| v.iter().map(|x| x.map(|x| (x - z) / (u - z))).collect();
            (t(&raw1), t(&raw2))
        }
        _ => (raw1, raw2),
    };
    let estimate = Alignment {
        f1,
        f2,
        k,
        lambda,
        residual: res1.max(res2).max(res3),
    };
    for (stage, res, bad) in [
        ("axis-1 alignment", res1, a <= 0.0),
        ("lambda", res2, lambda < 0.0),
        ("frontier", res3, k <= 0.0),
    ] {
        if bad || res > tol {
            return Err(AlignError::Residual {
                stage,
                residual: res,
                estimate: Box::new(estimate),
            });
        }
    }
    Ok(estimate)
}
