use std::collections::BTreeMap;

use axiom_suite::{check_all_with, AxiomId, CheckConfig, CheckOutcome, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relation_model::{PreferenceRelation, RegionLabeling};
use rep_builder::{fit, FitConfig};
use serde::Serialize;
use serde_json::Value;

use crate::generate::{identified_spec, induce, regime_spec, GeneratorSpec, Regime};

/// Region labeling from a verified fit, for [`check_all_with`].
pub fn fit_resolver(cfg: &FitConfig) -> impl Fn(&PreferenceRelation) -> Option<RegionLabeling> {
    let cfg = cfg.clone();
    move |rel| fit(rel, &cfg).ok().map(|f| f.representation.labeling)
}

fn status_name(s: Status) -> String {
    serde_json::to_value(s)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

/// True when every violated report carries a witness that replays on `rel`.
pub fn witnesses_replay(rel: &PreferenceRelation, outcome: &CheckOutcome) -> bool {
    outcome
        .reports
        .iter()
        .filter(|r| r.is_violation())
        .all(|r| {
            r.witness
                .as_ref()
                .is_some_and(|w| w.replays(rel, outcome.labeling.as_ref()))
        })
}

#[derive(Debug, Clone)]
pub struct NecessityOptions {
    /// Cycled through in order, one instance each.
    pub regimes: Vec<Regime>,
    pub check: CheckConfig,
    pub fit: FitConfig,
    /// Also fit every instance and record its `λ`.
    pub record_fits: bool,
    /// Draw interactive instances from [`identified_spec`] on an
    /// `m × m` grid, `m` the first drawn size, instead of uniform values.
    pub identified: bool,
}

impl Default for NecessityOptions {
    fn default() -> Self {
        NecessityOptions {
            regimes: Regime::ALL.to_vec(),
            check: CheckConfig::default(),
            fit: FitConfig::default(),
            record_fits: false,
            identified: false,
        }
    }
}

/// A violation on an induced relation, with everything needed to replay it.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub spec: GeneratorSpec,
    pub axiom: AxiomId,
    pub report: Value,
    pub bundle: Value,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct NecessitySummary {
    pub instances: usize,
    pub per_regime: BTreeMap<&'static str, usize>,
    /// Status counts per axiom.
    pub statuses: BTreeMap<&'static str, BTreeMap<String, usize>>,
    pub violations: usize,
    pub failures: Vec<Failure>,
    /// `λ` of each fit, `None` where undefined; only with `record_fits`.
    pub lambdas: Vec<Option<f64>>,
    /// Fits that failed or disagreed with the relation.
    pub fit_failures: usize,
}

/// Runs [`necessity_run_with`] over all regimes with default settings.
pub fn necessity_run(n: usize, grid_range: (usize, usize), seed: u64) -> NecessitySummary {
    necessity_run_with(n, grid_range, seed, &NecessityOptions::default())
}

/// Generates `n` induced instances and checks every axiom on each.
///
/// Grid sizes are drawn per axis from `grid_range` (inclusive). Instance
/// seeds come from a ChaCha8 stream seeded with `seed`, so each instance can
/// be replayed on its own from its spec.
pub fn necessity_run_with(
    n: usize,
    grid_range: (usize, usize),
    seed: u64,
    opts: &NecessityOptions,
) -> NecessitySummary {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut out = NecessitySummary::default();
    if opts.regimes.is_empty() {
        return out;
    }
    let (lo, hi) = (
        grid_range.0.min(grid_range.1),
        grid_range.0.max(grid_range.1),
    );
    let resolver = fit_resolver(&opts.fit);
    for i in 0..n {
        let regime = opts.regimes[i % opts.regimes.len()];
        let grid = (master.gen_range(lo..=hi), master.gen_range(lo..=hi));
        let seed = master.gen();
        let spec = if opts.identified && regime == Regime::Interactive {
            identified_spec(grid.0, seed)
        } else {
            regime_spec(regime, grid, seed)
        };
        let inst = induce(&spec).expect("regime specs are valid");
        let rel = &inst.relation;
        let outcome = check_all_with(rel, &opts.check, Some(&resolver));
        out.instances += 1;
        *out.per_regime.entry(regime.name()).or_default() += 1;
        for r in &outcome.reports {
            *out.statuses
                .entry(r.axiom.name())
                .or_default()
                .entry(status_name(r.status))
                .or_default() += 1;
            if r.is_violation() {
                out.violations += 1;
                out.failures.push(Failure {
                    spec: spec.clone(),
                    axiom: r.axiom,
                    report: r.to_json(rel.space()),
                    bundle: inst.to_json(),
                });
            }
        }
        if opts.record_fits {
            match fit(rel, &opts.fit) {
                Ok(f) if f.agreement.is_exact() => out.lambdas.push(f.representation.lambda()),
                _ => out.fit_failures += 1,
            }
        }
    }
    out
}
