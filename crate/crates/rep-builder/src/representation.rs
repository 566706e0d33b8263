use choquet_core::{choquet2, Capacity};
use relation_model::{
    Alt, Axis, CoordinateOrders, MergeMap, PreferenceRelation, ProductSpace, RegionLabeling,
    WeakOrder,
};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::capacity::{k_of, lambda_of, uniqueness_case, Essentials, CASE_TOL};
use crate::verify::implied;

/// Value functions and capacity reproducing a relation:
/// `x ≽ y ⇔ C(ν, (f1(x₁), f2(x₂))) ≥ C(ν, (f1(y₁), f2(y₂)))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub x1: Vec<String>,
    pub x2: Vec<String>,
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub nu1: f64,
    pub nu2: f64,
    pub labeling: RegionLabeling,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("malformed representation: {0}")]
    Malformed(String),
    #[error("label mismatch on axis {axis}: {detail}")]
    LabelMismatch { axis: u8, detail: String },
}

impl Representation {
    pub fn value(&self, x: Alt) -> f64 {
        choquet2(self.nu1, self.nu2, self.f1[x.0], self.f2[x.1])
    }

    pub fn values(&self, space: &ProductSpace) -> Vec<f64> {
        space.alts().map(|x| self.value(x)).collect()
    }

    /// The relation these values induce on `space`, with values within
    /// `tol·scale` counting as indifferent, as in [`crate::verify`].
    pub fn induced(&self, space: &ProductSpace, tol: f64) -> PreferenceRelation {
        let vals = self.values(space);
        let eps = tol * self.scale();
        PreferenceRelation::from_fn(space.clone(), |x, y| {
            implied(vals[space.index(x)], vals[space.index(y)], eps)
        })
        .expect("implied comparisons are reflexive and mirrored")
    }

    pub fn capacity(&self) -> Capacity {
        Capacity::two(self.nu1, self.nu2)
    }

    pub fn k(&self) -> Option<f64> {
        k_of(self.nu1)
    }

    pub fn lambda(&self) -> Option<f64> {
        lambda_of(self.nu1, self.nu2)
    }

    pub fn case(&self) -> u8 {
        uniqueness_case(self.nu1, self.nu2, CASE_TOL)
    }

    pub fn essentials(&self) -> Essentials {
        Essentials {
            se: self.labeling.essential_se,
            nw: self.labeling.essential_nw,
        }
    }

    /// Largest `|C(x)|`, floored at 1; the unit for relative tolerances.
    pub fn scale(&self) -> f64 {
        let m1 = self
            .f1
            .iter()
            .chain(&self.f2)
            .fold(0.0f64, |m, v| m.max(v.abs()));
        m1.max(1.0)
    }

    /// The representation on the unmerged space.
    pub fn expand(&self, map: &MergeMap, space: &ProductSpace) -> Representation {
        Representation {
            x1: space.labels(Axis::One).to_vec(),
            x2: space.labels(Axis::Two).to_vec(),
            f1: map.expand(Axis::One, &self.f1),
            f2: map.expand(Axis::Two, &self.f2),
            nu1: self.nu1,
            nu2: self.nu2,
            labeling: self.labeling.expand(map),
        }
    }

    /// Reorders labels to match `space`; both label sets must coincide.
    pub fn aligned_to(&self, space: &ProductSpace) -> Result<Representation, RepError> {
        let perm = |axis: Axis, mine: &[String]| -> Result<Vec<usize>, RepError> {
            let theirs = space.labels(axis);
            if theirs.len() != mine.len() {
                return Err(RepError::LabelMismatch {
                    axis: axis.number(),
                    detail: format!("{} labels vs {}", mine.len(), theirs.len()),
                });
            }
            theirs
                .iter()
                .map(|l| {
                    mine.iter()
                        .position(|m| m == l)
                        .ok_or_else(|| RepError::LabelMismatch {
                            axis: axis.number(),
                            detail: format!("label {l:?} missing"),
                        })
                })
                .collect()
        };
        let p1 = perm(Axis::One, &self.x1)?;
        let p2 = perm(Axis::Two, &self.x2)?;
        let (m1, m2) = (p1.len(), p2.len());
        let old_m2 = self.x2.len();
        let pick = |v: &Vec<bool>| -> Vec<bool> {
            (0..m1 * m2)
                .map(|id| v[p1[id / m2] * old_m2 + p2[id % m2]])
                .collect()
        };
        let reorder = |o: &WeakOrder, p: &[usize]| {
            WeakOrder::from_ranks(p.iter().map(|&i| o.rank(i)).collect())
        };
        Ok(Representation {
            x1: space.labels(Axis::One).to_vec(),
            x2: space.labels(Axis::Two).to_vec(),
            f1: p1.iter().map(|&i| self.f1[i]).collect(),
            f2: p2.iter().map(|&i| self.f2[i]).collect(),
            nu1: self.nu1,
            nu2: self.nu2,
            labeling: RegionLabeling {
                m1,
                m2,
                in_se: pick(&self.labeling.in_se),
                in_nw: pick(&self.labeling.in_nw),
                essential_se: self.labeling.essential_se,
                essential_nw: self.labeling.essential_nw,
                orders: CoordinateOrders {
                    o1: reorder(&self.labeling.orders.o1, &p1),
                    o2: reorder(&self.labeling.orders.o2, &p2),
                },
            },
        })
    }

    pub fn to_json(&self) -> Value {
        let labels = |names: &[String], vals: &[f64]| -> Value {
            let mut m = Map::new();
            for (n, v) in names.iter().zip(vals) {
                m.insert(n.clone(), json!(v));
            }
            Value::Object(m)
        };
        let ranks = |names: &[String], o: &WeakOrder| -> Value {
            let mut m = Map::new();
            for (i, n) in names.iter().enumerate() {
                m.insert(n.clone(), json!(o.rank(i)));
            }
            Value::Object(m)
        };
        let lab = &self.labeling;
        let members = |inside: &Vec<bool>| -> Value {
            let m2 = self.x2.len();
            Value::Array(
                inside
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(id, _)| json!([self.x1[id / m2], self.x2[id % m2]]))
                    .collect(),
            )
        };
        json!({
            "f1": labels(&self.x1, &self.f1),
            "f2": labels(&self.x2, &self.f2),
            "k": self.k(),
            "lambda": self.lambda(),
            "nu": {"1": self.nu1, "2": self.nu2},
            "case": self.case(),
            "regions": {
                "SE": members(&lab.in_se),
                "NW": members(&lab.in_nw),
                "essential": {"SE": lab.essential_se, "NW": lab.essential_nw},
                "order1": ranks(&self.x1, &lab.orders.o1),
                "order2": ranks(&self.x2, &lab.orders.o2),
            },
        })
    }

    /// Parses the layout written by [`Representation::to_json`]; fields it
    /// does not use are ignored.
    pub fn from_json(v: &Value) -> Result<Representation, RepError> {
        let bad = |m: &str| RepError::Malformed(m.to_string());
        let table = |key: &str| -> Result<(Vec<String>, Vec<f64>), RepError> {
            let obj = v
                .get(key)
                .and_then(Value::as_object)
                .ok_or_else(|| bad(key))?;
            let mut names = Vec::new();
            let mut vals = Vec::new();
            for (n, x) in obj {
                names.push(n.clone());
                vals.push(x.as_f64().ok_or_else(|| bad(&format!("{key}.{n}")))?);
            }
            Ok((names, vals))
        };
        let (x1, f1) = table("f1")?;
        let (x2, f2) = table("f2")?;
        let nu = v.get("nu").ok_or_else(|| bad("nu"))?;
        let weight = |k: &str| -> Result<f64, RepError> {
            nu.get(k)
                .and_then(Value::as_f64)
                .ok_or_else(|| bad(&format!("nu.{k}")))
        };
        let (nu1, nu2) = (weight("1")?, weight("2")?);
        let regions = v.get("regions").ok_or_else(|| bad("regions"))?;
        let (m1, m2) = (x1.len(), x2.len());
        let index = |names: &[String], s: &Value| -> Result<usize, RepError> {
            let s = s.as_str().ok_or_else(|| bad("region member"))?;
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| bad(&format!("unknown label {s}")))
        };
        let members = |key: &str| -> Result<Vec<bool>, RepError> {
            let mut inside = vec![false; m1 * m2];
            let list = regions
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(key))?;
            for item in list {
                let pair = item
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| bad(key))?;
                inside[index(&x1, &pair[0])? * m2 + index(&x2, &pair[1])?] = true;
            }
            Ok(inside)
        };
        let flags = |key: &str| -> Result<[bool; 2], RepError> {
            serde_json::from_value(regions["essential"][key].clone())
                .map_err(|_| bad(&format!("essential.{key}")))
        };
        let order = |key: &str, names: &[String]| -> Result<WeakOrder, RepError> {
            let obj = regions
                .get(key)
                .and_then(Value::as_object)
                .ok_or_else(|| bad(key))?;
            names
                .iter()
                .map(|n| obj.get(n).and_then(Value::as_u64).map(|r| r as usize))
                .collect::<Option<Vec<_>>>()
                .map(WeakOrder::from_ranks)
                .ok_or_else(|| bad(key))
        };
        let labeling = RegionLabeling {
            m1,
            m2,
            in_se: members("SE")?,
            in_nw: members("NW")?,
            essential_se: flags("SE")?,
            essential_nw: flags("NW")?,
            orders: CoordinateOrders {
                o1: order("order1", &x1)?,
                o2: order("order2", &x2)?,
            },
        };
        Ok(Representation {
            x1,
            x2,
            f1,
            f2,
            nu1,
            nu2,
            labeling,
        })
    }
}

/// Labeling read off the value functions: SE where `f1 ≥ f2 − tol·scale`,
/// NW where `f2 ≥ f1 − tol·scale`; orders and essentiality from `rel`.
pub fn resolved_labeling(
    rel: &PreferenceRelation,
    orders: &CoordinateOrders,
    f1: &[f64],
    f2: &[f64],
    tol: f64,
) -> RegionLabeling {
    let space = rel.space();
    let scale = f1.iter().chain(f2).fold(1.0f64, |m, v| m.max(v.abs()));
    let eps = tol * scale;
    let mut lab = RegionLabeling {
        m1: space.m1(),
        m2: space.m2(),
        in_se: space.alts().map(|x| f1[x.0] >= f2[x.1] - eps).collect(),
        in_nw: space.alts().map(|x| f2[x.1] >= f1[x.0] - eps).collect(),
        essential_se: [false; 2],
        essential_nw: [false; 2],
        orders: orders.clone(),
    };
    lab.refresh_essentiality(rel);
    lab
}
