use std::time::Instant;

use relation_model::{
    classify_regions_with, Alt, AltSet, Axis, Budget, ClassifyError, ConeKind, PreferenceRelation,
    RegionLabeling,
};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::align::{align_regions, AlignError, Alignment};
use crate::capacity::{extract_capacity, Essentials};
use crate::cone::{fit_cone_additive, region_cones};
use crate::extremes::{extend_extremes, PartialValues};
use crate::join::{join_cones, RegionScale};
use crate::one_essential::{
    fit_lattice, fit_one_essential, lattice_values, profile_weights, Lattice,
};
use crate::refine::{chain, convex_concave, polish, rank_values, search, Weight};
use crate::representation::{resolved_labeling, Representation};
use crate::verify::{verify, Agreement};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitConfig {
    /// Minimum gap between strictly ordered values.
    pub delta: f64,
    /// Relative tolerance for ties and the frontier.
    pub tol: f64,
    /// Scan budget for region classification.
    pub budget: u64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            delta: 1.0,
            tol: 1e-7,
            budget: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Classification,
    ConeFit,
    Join,
    Align,
    Capacity,
    OneEssential,
    Refinement,
    Verification,
}

/// Why a fit failed: the stage, a message and, where one exists, a witness.
#[derive(Debug, Clone, PartialEq, Error, Serialize)]
#[error("{stage:?}: {message}")]
pub struct Diagnosis {
    pub stage: Stage,
    pub message: String,
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitPath {
    /// One additive function on the whole set.
    Additive,
    /// Two essential coordinates in both regions.
    TwoEssential,
    /// A single essential coordinate in each region (min or max).
    OneEssential,
    /// One region with two essential coordinates, the other with one.
    Mixed,
}

#[derive(Debug, Clone)]
pub struct Fit {
    /// On the input's labels.
    pub representation: Representation,
    pub path: FitPath,
    pub agreement: Agreement,
    /// Definition-based labeling of the merged relation.
    pub raw_labeling: RegionLabeling,
    /// Seconds per stage, in execution order.
    pub timings: Vec<(String, f64)>,
    /// Failures of the preferred route before the one that succeeded.
    pub notes: Vec<String>,
}

impl Fit {
    pub fn to_json(&self) -> Value {
        let mut v = self.representation.to_json();
        let obj = v.as_object_mut().expect("representation is an object");
        obj.insert("path".into(), json!(self.path));
        obj.insert("agreement".into(), json!(self.agreement.percent()));
        let mut t = serde_json::Map::new();
        for (k, s) in &self.timings {
            t.insert(k.clone(), json!(s));
        }
        obj.insert("timings".into(), Value::Object(t));
        if !self.notes.is_empty() {
            obj.insert("notes".into(), json!(self.notes));
        }
        v
    }
}

/// Three alternatives breaking transitivity or completeness of `≽`.
pub fn weak_order_violation(rel: &PreferenceRelation) -> Option<[Alt; 3]> {
    let space = rel.space();
    let n = space.len();
    let score: Vec<usize> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| rel.ge(space.alt(i), space.alt(j)))
                .count()
        })
        .collect();
    let consistent = (0..n)
        .all(|i| (0..n).all(|j| rel.ge(space.alt(i), space.alt(j)) == (score[i] >= score[j])));
    if consistent {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (space.alt(i), space.alt(j));
            if !rel.ge(x, y) {
                continue;
            }
            for k in 0..n {
                let z = space.alt(k);
                if rel.ge(y, z) && !rel.ge(x, z) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

/// A representation on `rel`'s labels with the labeling read off `f`.
pub(crate) fn build(
    rel: &PreferenceRelation,
    labeling: &RegionLabeling,
    f1: Vec<f64>,
    f2: Vec<f64>,
    nu1: f64,
    nu2: f64,
    tol: f64,
) -> Representation {
    let space = rel.space();
    let lab = resolved_labeling(rel, &labeling.orders, &f1, &f2, tol);
    Representation {
        x1: space.labels(Axis::One).to_vec(),
        x2: space.labels(Axis::Two).to_vec(),
        f1,
        f2,
        nu1,
        nu2,
        labeling: lab,
    }
}

const START_GRID: [f64; 7] = [0.5, 0.35, 0.65, 0.15, 0.85, 0.05, 0.95];

fn default_starts(w: [Weight; 2]) -> Vec<[f64; 2]> {
    let axis = |wi: Weight| match wi {
        Weight::Free => START_GRID.to_vec(),
        Weight::Fixed(v) => vec![v],
    };
    let mut out = Vec::new();
    for &a in &axis(w[0]) {
        for &b in &axis(w[1]) {
            out.push([a, b]);
        }
    }
    out.sort_by(|p, q| {
        let d = |s: &[f64; 2]| (s[0] - 0.5).abs() + (s[1] - 0.5).abs();
        d(p).total_cmp(&d(q))
    });
    out
}

/// Multi-start search for weights and value functions, then an LP at the
/// found weights and brute-force verification.
///
/// `starts` are tried first (with `init` values when given), then a fixed
/// grid of weights from rank-based values and from min and max levels.
/// Each search end point is handed to [`polish`] when its residual is small
/// and to [`convex_concave`] otherwise. The first representation that
/// reproduces the relation wins.
pub(crate) fn fit_weights(
    rel: &PreferenceRelation,
    labeling: &RegionLabeling,
    steps: &[(Alt, Alt, bool)],
    w: [Weight; 2],
    starts: &[[f64; 2]],
    init: Option<(&[f64], &[f64])>,
    cfg: &FitConfig,
) -> Result<Representation, Diagnosis> {
    let space = rel.space();
    let (m1, m2) = (space.m1(), space.m2());
    let r1 = rank_values(&labeling.orders.o1, cfg.delta);
    let r2 = rank_values(&labeling.orders.o2, cfg.delta);
    let mut tries: Vec<([f64; 2], &[f64], &[f64])> = Vec::new();
    for &s in starts {
        if let Some((a, b)) = init {
            tries.push((s, a, b));
        }
        tries.push((s, &r1, &r2));
    }
    for s in default_starts(w) {
        tries.push((s, &r1, &r2));
    }
    // Near-lattice capacities start best from min or max levels.
    let (n1, n2) = lattice_values(rel, labeling, Lattice::Min, cfg.delta);
    let (x1, x2) = lattice_values(rel, labeling, Lattice::Max, cfg.delta);
    for s in default_starts(w) {
        tries.push((s, &n1, &n2));
        tries.push((s, &x1, &x2));
    }
    let mut best = f64::INFINITY;
    for (s, a, b) in tries {
        let s = [0, 1].map(|i| match w[i] {
            Weight::Free => s[i],
            Weight::Fixed(v) => v,
        });
        let sol = search(steps, m1, m2, cfg.delta, w, (a, b, s), 400);
        best = best.min(sol.cost);
        let scale = sol
            .f1
            .iter()
            .chain(&sol.f2)
            .fold(1.0f64, |m, v| m.max(v.abs()));
        let nu = [sol.nu1, sol.nu2];
        let eps = 0.5 * cfg.tol * cfg.delta;
        let guess = (sol.f1.as_slice(), sol.f2.as_slice());
        let near = sol.cost <= 1e-4 * cfg.delta * cfg.delta;
        let frontier = 1e-6 * scale;
        let candidates = [Some(true), Some(false), None]
            .into_iter()
            .filter_map(|pin| match pin {
                Some(pin) if near => {
                    polish(steps, m1, m2, nu, guess, cfg.delta, eps, frontier, pin)
                }
                Some(_) => None,
                None => convex_concave(steps, m1, m2, nu, guess, cfg.delta, eps, 30),
            });
        for (f1, f2) in candidates {
            let rep = build(rel, labeling, f1, f2, nu[0], nu[1], cfg.tol);
            if verify(rel, &rep, cfg.tol).is_exact() {
                return Ok(rep);
            }
        }
    }
    Err(Diagnosis {
        stage: Stage::Refinement,
        message: format!("no start reached a consistent representation (best residual {best:.3e})"),
        witness: None,
    })
}

/// One additive function on the whole set, if the LP admits one.
pub fn fit_additive(
    rel: &PreferenceRelation,
    labeling: &RegionLabeling,
    cfg: &FitConfig,
) -> Result<Representation, Diagnosis> {
    let cone =
        fit_cone_additive(rel, &AltSet::full(rel.space()), cfg.delta).map_err(|e| Diagnosis {
            stage: Stage::ConeFit,
            message: format!("whole set: {e}"),
            witness: Some(json!(e)),
        })?;
    let v1: Vec<f64> = cone.v1.iter().map(|v| v.unwrap_or(0.0)).collect();
    let v2: Vec<f64> = cone.v2.iter().map(|v| v.unwrap_or(0.0)).collect();
    let range = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi - lo)
    };
    let (lo1, r1) = range(&v1);
    let (lo2, r2) = range(&v2);
    let total = r1 + r2;
    let nu1 = if total > 0.0 { r1 / total } else { 0.5 };
    // With f_i = (v_i − min)·total/r_i the integral is v1 + v2 up to a
    // constant, so strict gaps stay at least δ.
    let norm = |v: &[f64], lo: f64, r: f64| -> Vec<f64> {
        v.iter()
            .map(|x| if r > 0.0 { (x - lo) * total / r } else { 0.0 })
            .collect()
    };
    let f1 = norm(&v1, lo1, r1);
    let f2 = norm(&v2, lo2, r2);
    let rep = build(rel, labeling, f1, f2, nu1, 1.0 - nu1, cfg.tol);
    let agreement = verify(rel, &rep, cfg.tol);
    match agreement.first_disagreement {
        None => Ok(rep),
        Some(d) => Err(Diagnosis {
            stage: Stage::Verification,
            message: "additive values do not reproduce the relation".into(),
            witness: Some(json!(d)),
        }),
    }
}

/// Starting point from the constructive route: cone fits, region scales,
/// alignment, capacity extraction and extension to extreme points.
pub struct PipelineStart {
    pub nu: [f64; 2],
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub alignment: Alignment,
    /// True when alignment residuals stayed within tolerance.
    pub aligned: bool,
}

/// Runs the constructive route on a relation with two essential coordinates
/// in both regions.
///
/// Every cone anchored at a non-extreme Θ point must admit an additive fit.
/// Each region's scale is one LP over its core, with the affine join of the
/// cone fits as a fallback when that LP fails.
pub fn pipeline(
    rel: &PreferenceRelation,
    labeling: &RegionLabeling,
    cfg: &FitConfig,
    timings: &mut Vec<(String, f64)>,
) -> Result<PipelineStart, Diagnosis> {
    let space = rel.space();
    let mut scales = Vec::new();
    for kind in [ConeKind::SE, ConeKind::NW] {
        let t = Instant::now();
        let cones = region_cones(rel, labeling, kind);
        if cones.is_empty() {
            return Err(Diagnosis {
                stage: Stage::Align,
                message: format!("no non-extreme frontier point anchors a {kind:?} cone"),
                witness: None,
            });
        }
        let mut fitted = Vec::new();
        for (z, set) in &cones {
            let cone = fit_cone_additive(rel, set, cfg.delta).map_err(|e| Diagnosis {
                stage: Stage::ConeFit,
                message: format!("{kind:?} cone anchored at {}: {e}", space.show(*z)),
                witness: Some(json!(e)),
            })?;
            fitted.push(cone);
        }
        timings.push((format!("cones-{kind:?}"), t.elapsed().as_secs_f64()));
        let t = Instant::now();
        let core = labeling.core_set(space, kind);
        let scale = match fit_cone_additive(rel, &core, cfg.delta) {
            Ok(c) => RegionScale {
                kind,
                v1: c.v1,
                v2: c.v2,
            },
            Err(_) => join_cones(&fitted, kind, cfg.tol).map_err(|e| Diagnosis {
                stage: Stage::Join,
                message: format!("{kind:?}: {e}"),
                witness: Some(json!(e)),
            })?,
        };
        timings.push((format!("join-{kind:?}"), t.elapsed().as_secs_f64()));
        scales.push(scale);
    }
    let t = Instant::now();
    let (alignment, aligned) = match align_regions(&scales[0], &scales[1], space, labeling, cfg.tol)
    {
        Ok(a) => (a, true),
        Err(AlignError::Residual { estimate, .. }) => (*estimate, false),
        Err(e) => {
            return Err(Diagnosis {
                stage: Stage::Align,
                message: e.to_string(),
                witness: None,
            })
        }
    };
    timings.push(("align".into(), t.elapsed().as_secs_f64()));
    let ess = Essentials {
        se: labeling.essential_se,
        nw: labeling.essential_nw,
    };
    let cap = extract_capacity(Some(alignment.k), Some(alignment.lambda), ess).map_err(|e| {
        Diagnosis {
            stage: Stage::Capacity,
            message: e.to_string(),
            witness: None,
        }
    })?;
    let (nu1, nu2) = cap.singletons2();
    let partial = PartialValues {
        f1: alignment.f1.clone(),
        f2: alignment.f2.clone(),
    };
    let (f1, f2) = extend_extremes(&partial, space, labeling, cfg.delta);
    Ok(PipelineStart {
        nu: [nu1, nu2],
        f1,
        f2,
        alignment,
        aligned,
    })
}

fn two_essential(
    rel: &PreferenceRelation,
    labeling: &RegionLabeling,
    steps: &[(Alt, Alt, bool)],
    cfg: &FitConfig,
    timings: &mut Vec<(String, f64)>,
) -> Result<Representation, Diagnosis> {
    let start = pipeline(rel, labeling, cfg, timings);
    let t = Instant::now();
    let w = [Weight::Free, Weight::Free];
    let out = match &start {
        Ok(s) => fit_weights(rel, labeling, steps, w, &[s.nu], Some((&s.f1, &s.f2)), cfg),
        Err(_) => fit_weights(rel, labeling, steps, w, &[], None, cfg),
    };
    timings.push(("refinement".into(), t.elapsed().as_secs_f64()));
    match (out, start) {
        (Ok(rep), _) => Ok(rep),
        (Err(_), Err(d)) => Err(d),
        (Err(d), Ok(_)) => Err(d),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Route {
    Additive,
    TwoEssential,
    Profile,
    Lattice(Lattice),
    Weights([Weight; 2]),
}

fn routes(ess: Essentials) -> Vec<Route> {
    let mixed = [
        [Weight::Free, Weight::Fixed(0.0)],
        [Weight::Free, Weight::Fixed(1.0)],
        [Weight::Fixed(0.0), Weight::Free],
        [Weight::Fixed(1.0), Weight::Free],
    ];
    let lattices = [Route::Lattice(Lattice::Min), Route::Lattice(Lattice::Max)];
    let mut out = Vec::new();
    if ess.both_two() {
        out.extend([Route::Additive, Route::TwoEssential]);
    } else {
        out.push(Route::Profile);
        out.extend(lattices);
        out.extend([Route::Additive, Route::TwoEssential]);
    }
    let own = profile_weights(ess);
    for w in mixed {
        if own != Some(w) {
            out.push(Route::Weights(w));
        }
    }
    if ess.both_two() {
        out.extend(lattices);
    }
    out
}

fn path_of(nu1: f64, nu2: f64, additive: bool) -> FitPath {
    let edge = |v: f64| v == 0.0 || v == 1.0;
    if additive {
        FitPath::Additive
    } else {
        match (edge(nu1), edge(nu2)) {
            (true, true) => FitPath::OneEssential,
            (false, false) => FitPath::TwoEssential,
            _ => FitPath::Mixed,
        }
    }
}

fn classify_diagnosis(e: ClassifyError) -> Diagnosis {
    let witness = match &e {
        ClassifyError::NotSeparable(w) => Some(json!({
            "points": w.points().map(|x| [x.0, x.1]),
        })),
        ClassifyError::Uncovered { z, .. } => Some(json!({ "uncovered": [z.0, z.1] })),
        ClassifyError::Budget(_) => None,
    };
    Diagnosis {
        stage: Stage::Classification,
        message: e.to_string(),
        witness,
    }
}

/// Fits value functions and a capacity to `rel`.
///
/// Duplicate labels are merged, regions classified, and routes tried in an
/// order set by the essentiality profile: for two essential coordinates in
/// both regions a global additive fit and then the constructive route; for
/// other profiles the matching one-essential fit first. Remaining weight
/// patterns follow as fallbacks. The first representation that reproduces
/// the relation exactly is returned on the input's labels.
pub fn fit(rel: &PreferenceRelation, cfg: &FitConfig) -> Result<Fit, Diagnosis> {
    let mut timings = Vec::new();
    let t = Instant::now();
    if let Some(w) = weak_order_violation(rel) {
        return Err(Diagnosis {
            stage: Stage::Classification,
            message: "the relation is not a weak order".into(),
            witness: Some(json!({ "points": w.map(|x| [x.0, x.1]) })),
        });
    }
    let (merged, map) = rel.merge_duplicates();
    let (labeling, _) =
        classify_regions_with(&merged, &mut Budget::new(cfg.budget)).map_err(classify_diagnosis)?;
    timings.push(("classification".into(), t.elapsed().as_secs_f64()));
    let ess = Essentials {
        se: labeling.essential_se,
        nw: labeling.essential_nw,
    };
    let steps = chain(&merged);
    let mut first_failure: Option<Diagnosis> = None;
    let mut notes = Vec::new();
    for route in routes(ess) {
        let t = Instant::now();
        let out = match route {
            Route::Additive => fit_additive(&merged, &labeling, cfg),
            Route::TwoEssential => two_essential(&merged, &labeling, &steps, cfg, &mut timings),
            Route::Profile => fit_one_essential(&merged, &labeling, cfg),
            Route::Lattice(op) => fit_lattice(&merged, &labeling, op, cfg),
            Route::Weights(w) => fit_weights(&merged, &labeling, &steps, w, &[], None, cfg),
        };
        let name = match route {
            Route::Additive => "additive".to_string(),
            Route::TwoEssential => "two-essential".to_string(),
            Route::Profile => "one-essential".to_string(),
            Route::Lattice(op) => format!("{op:?}").to_lowercase(),
            Route::Weights(w) => format!("weights {w:?}"),
        };
        timings.push((name.clone(), t.elapsed().as_secs_f64()));
        match out {
            Ok(rep) => {
                let t = Instant::now();
                let additive = route == Route::Additive;
                let path = path_of(rep.nu1, rep.nu2, additive);
                let representation = rep.expand(&map, rel.space());
                let agreement = verify(rel, &representation, cfg.tol);
                timings.push(("verification".into(), t.elapsed().as_secs_f64()));
                if !agreement.is_exact() {
                    return Err(Diagnosis {
                        stage: Stage::Verification,
                        message: "expanded representation disagrees with the input".into(),
                        witness: Some(json!(agreement.first_disagreement)),
                    });
                }
                return Ok(Fit {
                    representation,
                    path,
                    agreement,
                    raw_labeling: labeling.expand(&map),
                    timings,
                    notes,
                });
            }
            Err(d) => {
                // The additive route failing is the normal outcome for
                // non-additive relations, so it never becomes the headline.
                if route != Route::Additive && first_failure.is_none() {
                    first_failure = Some(d.clone());
                }
                notes.push(format!("{name}: {}", d.message));
            }
        }
    }
    Err(first_failure.unwrap_or_else(|| Diagnosis {
        stage: Stage::Refinement,
        message: "no route produced a representation".into(),
        witness: None,
    }))
}
