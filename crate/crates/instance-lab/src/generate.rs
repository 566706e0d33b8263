use choquet_core::{choquet2, Capacity, CapacityError};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relation_model::{parse_relation, relation_to_json, Axis, PreferenceRelation, ProductSpace};
use rep_builder::{uniqueness_case, CASE_TOL};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

/// Identifier of the generator stored in every bundle.
pub const RNG: &str = "ChaCha8";

/// Weight pairs of the identified design (see [`identified_spec`]).
pub const DESIGN_PAIRS: [(f64, f64); 4] = [(0.5, 0.25), (0.5, 0.75), (0.25, 0.5), (0.75, 0.5)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueMode {
    /// Independent draws from `[0, 1)`, redrawn until every label is
    /// distinguishable in the induced relation.
    UniformRandom,
    /// `0, 1, …` on axis 1 and `offset, offset + 1, …` on axis 2, shuffled.
    EvenlySpaced,
    /// Small integers with repeats, so ties occur within and across axes.
    AdversarialTies,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `ν({1}) + ν({2}) = 1`.
    Additive,
    /// Both weights in `(0, 1)` with a sum other than one.
    Interactive,
    /// `ν = (0, 0)`.
    Min,
    /// `ν = (1, 1)`.
    Max,
    /// Exactly one weight in `{0, 1}`.
    Degenerate,
}

impl Regime {
    pub const ALL: [Regime; 5] = [
        Regime::Additive,
        Regime::Interactive,
        Regime::Min,
        Regime::Max,
        Regime::Degenerate,
    ];

    pub fn of(nu1: f64, nu2: f64) -> Regime {
        match uniqueness_case(nu1, nu2, CASE_TOL) {
            1 => Regime::Additive,
            2 => Regime::Interactive,
            3 | 4 => Regime::Degenerate,
            _ if nu1 < 0.5 => Regime::Min,
            _ => Regime::Max,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Additive => "additive",
            Regime::Interactive => "interactive",
            Regime::Min => "min",
            Regime::Max => "max",
            Regime::Degenerate => "degenerate",
        }
    }

    pub fn parse(s: &str) -> Option<Regime> {
        Regime::ALL.into_iter().find(|r| r.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub grid: (usize, usize),
    pub nu1: f64,
    pub nu2: f64,
    pub value_mode: ValueMode,
    /// Start of the axis-2 values in evenly spaced mode.
    #[serde(default)]
    pub offset: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("grid {0}x{1}: both sizes must be at least 1")]
    Grid(usize, usize),
    #[error("invalid capacity: {0}")]
    Capacity(#[from] CapacityError),
    #[error("offset {0} is not finite")]
    Offset(f64),
    #[error("malformed bundle: {0}")]
    Bundle(String),
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.grid.0 == 0 || self.grid.1 == 0 {
            return Err(SpecError::Grid(self.grid.0, self.grid.1));
        }
        if !self.offset.is_finite() {
            return Err(SpecError::Offset(self.offset));
        }
        Capacity::two(self.nu1, self.nu2).validated()?;
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        Regime::of(self.nu1, self.nu2)
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("spec serializes");
        v["regime"] = json!(self.regime().name());
        v["rng"] = json!(RNG);
        v
    }
}

/// A generated relation with its ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub spec: GeneratorSpec,
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub relation: PreferenceRelation,
}

impl Instance {
    pub fn nu(&self) -> (f64, f64) {
        (self.spec.nu1, self.spec.nu2)
    }

    /// `{"spec", "f1", "f2", "nu", "relation"}`.
    pub fn to_json(&self) -> Value {
        let rel: Value =
            serde_json::from_str(&relation_to_json(&self.relation)).expect("relation JSON");
        json!({
            "spec": self.spec.to_json(),
            "f1": self.f1,
            "f2": self.f2,
            "nu": [self.spec.nu1, self.spec.nu2],
            "relation": rel,
        })
    }

    pub fn from_json(v: &Value) -> Result<Instance, SpecError> {
        let bad = |m: &str| SpecError::Bundle(m.to_string());
        let mut spec_v = v.get("spec").cloned().ok_or_else(|| bad("no spec"))?;
        if let Some(o) = spec_v.as_object_mut() {
            o.remove("regime");
            o.remove("rng");
        }
        let spec: GeneratorSpec =
            serde_json::from_value(spec_v).map_err(|e| SpecError::Bundle(e.to_string()))?;
        let vec = |k: &str| -> Result<Vec<f64>, SpecError> {
            serde_json::from_value(v.get(k).cloned().ok_or_else(|| bad(k))?)
                .map_err(|e| SpecError::Bundle(format!("{k}: {e}")))
        };
        let rel = v.get("relation").ok_or_else(|| bad("no relation"))?;
        let relation =
            parse_relation(&rel.to_string()).map_err(|e| SpecError::Bundle(e.to_string()))?;
        Ok(Instance {
            spec,
            f1: vec("f1")?,
            f2: vec("f2")?,
            relation,
        })
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn relation(f1: &[f64], f2: &[f64], nu1: f64, nu2: f64) -> PreferenceRelation {
    let space = ProductSpace::with_sizes(f1.len(), f2.len());
    PreferenceRelation::from_utility(space, |x| choquet2(nu1, nu2, f1[x.0], f2[x.1]))
        .expect("finite values")
}

fn distinct(rel: &PreferenceRelation) -> bool {
    rel.duplicate_labels(Axis::One).is_none() && rel.duplicate_labels(Axis::Two).is_none()
}

/// Draws the value tables and induces `x ≽ y ⇔ C(x) ≥ C(y)`, with exact
/// float equality giving indifference.
pub fn induce(spec: &GeneratorSpec) -> Result<Instance, SpecError> {
    spec.validate()?;
    let (m1, m2) = spec.grid;
    let (nu1, nu2) = (spec.nu1, spec.nu2);
    let mut r = rng(spec.seed, 0);
    let (f1, f2) = match spec.value_mode {
        ValueMode::UniformRandom => loop {
            let f1: Vec<f64> = (0..m1).map(|_| r.gen_range(0.0..1.0)).collect();
            let f2: Vec<f64> = (0..m2).map(|_| r.gen_range(0.0..1.0)).collect();
            // A constant axis cannot have distinguishable labels.
            if m1 < 2 && m2 < 2 || distinct(&relation(&f1, &f2, nu1, nu2)) {
                break (f1, f2);
            }
        },
        ValueMode::EvenlySpaced => {
            let mut f1: Vec<f64> = (0..m1).map(|i| i as f64).collect();
            let mut f2: Vec<f64> = (0..m2).map(|i| i as f64 + spec.offset).collect();
            f1.shuffle(&mut r);
            f2.shuffle(&mut r);
            (f1, f2)
        }
        ValueMode::AdversarialTies => {
            let top = (m1.max(m2) / 2).max(1) as i64;
            let mut draw =
                |m: usize| -> Vec<f64> { (0..m).map(|_| r.gen_range(0..=top) as f64).collect() };
            (draw(m1), draw(m2))
        }
    };
    let relation = relation(&f1, &f2, nu1, nu2);
    Ok(Instance {
        spec: spec.clone(),
        f1,
        f2,
        relation,
    })
}

fn interior(r: &mut ChaCha8Rng) -> f64 {
    r.gen_range(0.05..0.95)
}

/// Uniform-random instance of a regime, with weights drawn from `seed`.
pub fn regime_spec(regime: Regime, grid: (usize, usize), seed: u64) -> GeneratorSpec {
    let mut r = rng(seed, 1);
    let (nu1, nu2) = match regime {
        Regime::Additive => {
            let w = interior(&mut r);
            (w, 1.0 - w)
        }
        Regime::Interactive => loop {
            let (a, b) = (interior(&mut r), interior(&mut r));
            if (a + b - 1.0).abs() > 0.05 {
                break (a, b);
            }
        },
        Regime::Min => (0.0, 0.0),
        Regime::Max => (1.0, 1.0),
        Regime::Degenerate => {
            let w = interior(&mut r);
            let end = if r.gen_bool(0.5) { 1.0 } else { 0.0 };
            if r.gen_bool(0.5) {
                (w, end)
            } else {
                (end, w)
            }
        }
    };
    GeneratorSpec {
        grid,
        nu1,
        nu2,
        value_mode: ValueMode::UniformRandom,
        offset: 0.0,
        seed,
    }
}

/// Interactive instance whose relation determines `ν` uniquely.
///
/// Values are evenly spaced on an `m × m` grid, axis 2 offset by an integer
/// in `-2..=2`, and `ν` is one of [`DESIGN_PAIRS`]. Random values on a grid
/// this small usually leave a range of capacities inducing the same
/// relation; with `m = 6` this design does not.
pub fn identified_spec(m: usize, seed: u64) -> GeneratorSpec {
    let mut r = rng(seed, 2);
    let (nu1, nu2) = *DESIGN_PAIRS.choose(&mut r).expect("nonempty");
    GeneratorSpec {
        grid: (m, m),
        nu1,
        nu2,
        value_mode: ValueMode::EvenlySpaced,
        offset: r.gen_range(-2i32..=2) as f64,
        seed,
    }
}
