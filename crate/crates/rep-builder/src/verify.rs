use relation_model::{Alt, Cmp, PreferenceRelation};
use serde::Serialize;

use crate::representation::Representation;

/// First pair where the representation and the relation disagree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub x: [String; 2],
    pub y: [String; 2],
    /// What the relation says about `x` against `y`.
    pub expected: String,
    /// What the representation says.
    pub got: String,
    pub value_x: f64,
    pub value_y: f64,
}

/// Pairwise comparison of a representation against a relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Agreement {
    pub pairs: usize,
    pub agreeing: usize,
    pub first_disagreement: Option<Disagreement>,
}

impl Agreement {
    pub fn percent(&self) -> f64 {
        if self.pairs == 0 {
            100.0
        } else {
            100.0 * self.agreeing as f64 / self.pairs as f64
        }
    }

    pub fn is_exact(&self) -> bool {
        self.agreeing == self.pairs
    }
}

/// Comparison the representation implies: values within `tol·scale` count
/// as indifferent.
pub fn implied(cx: f64, cy: f64, eps: f64) -> Cmp {
    if (cx - cy).abs() <= eps {
        Cmp::Indiff
    } else if cx > cy {
        Cmp::Pref
    } else {
        Cmp::Dispref
    }
}

/// Brute-force check of every unordered pair of distinct alternatives.
/// `rep` must use the relation's label order (see
/// [`Representation::aligned_to`]).
pub fn verify(rel: &PreferenceRelation, rep: &Representation, tol: f64) -> Agreement {
    let space = rel.space();
    let vals = rep.values(space);
    let eps = tol * rep.scale();
    let n = space.len();
    let mut agreement = Agreement {
        pairs: n * n.saturating_sub(1) / 2,
        agreeing: 0,
        first_disagreement: None,
    };
    for ix in 0..n {
        for iy in ix + 1..n {
            let (x, y): (Alt, Alt) = (space.alt(ix), space.alt(iy));
            let expected = rel.cmp(x, y);
            let got = implied(vals[ix], vals[iy], eps);
            if expected == got {
                agreement.agreeing += 1;
            } else if agreement.first_disagreement.is_none() {
                let show = |a: Alt| {
                    [
                        space.label(relation_model::Axis::One, a.0).to_string(),
                        space.label(relation_model::Axis::Two, a.1).to_string(),
                    ]
                };
                agreement.first_disagreement = Some(Disagreement {
                    x: show(x),
                    y: show(y),
                    expected: expected.code().to_string(),
                    got: got.code().to_string(),
                    value_x: vals[ix],
                    value_y: vals[iy],
                });
            }
        }
    }
    agreement
}
