use relation_model::{ProductSpace, RegionLabeling, WeakOrder};

/// Value functions with some labels not yet assigned.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialValues {
    pub f1: Vec<Option<f64>>,
    pub f2: Vec<Option<f64>>,
}

/// Fills labels that only occur at extreme points.
///
/// Each extreme Θ point with one coordinate known pins the other to the
/// same value, repeated until nothing changes. Labels still unknown are
/// placed by their rank: the value of a known label of equal rank, else
/// linear interpolation between the nearest known ranks, else `gap` per rank
/// beyond the nearest known one.
pub fn extend_extremes(
    partial: &PartialValues,
    space: &ProductSpace,
    labeling: &RegionLabeling,
    gap: f64,
) -> (Vec<f64>, Vec<f64>) {
    let mut f1 = partial.f1.clone();
    let mut f2 = partial.f2.clone();
    loop {
        let mut changed = false;
        for x in space.alts().filter(|&x| labeling.is_extreme(x)) {
            match (f1[x.0], f2[x.1]) {
                (Some(a), None) => {
                    f2[x.1] = Some(a);
                    changed = true;
                }
                (None, Some(b)) => {
                    f1[x.0] = Some(b);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    (
        by_rank(&f1, &labeling.orders.o1, gap),
        by_rank(&f2, &labeling.orders.o2, gap),
    )
}

fn by_rank(vals: &[Option<f64>], order: &WeakOrder, gap: f64) -> Vec<f64> {
    let known: Vec<(usize, f64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (order.rank(i), v)))
        .collect();
    vals.iter()
        .enumerate()
        .map(|(i, v)| {
            if let Some(v) = v {
                return *v;
            }
            let r = order.rank(i);
            if let Some(&(_, v)) = known.iter().find(|(q, _)| *q == r) {
                return v;
            }
            let below = known.iter().filter(|(q, _)| *q < r).max_by_key(|p| p.0);
            let above = known.iter().filter(|(q, _)| *q > r).min_by_key(|p| p.0);
            match (below, above) {
                (Some(&(ql, lo)), Some(&(qh, hi))) => {
                    lo + (hi - lo) * (r - ql) as f64 / (qh - ql) as f64
                }
                (Some(&(ql, lo)), None) => lo + gap * (r - ql) as f64,
                (None, Some(&(qh, hi))) => hi - gap * (qh - r) as f64,
                (None, None) => r as f64 * gap,
            }
        })
        .collect()
}
