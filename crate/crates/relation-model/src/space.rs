use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the two factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::One => Axis::Two,
            Axis::Two => Axis::One,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Axis::One => 1,
            Axis::Two => 2,
        }
    }
}

/// An alternative `(x₁, x₂)` given by label indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alt(pub usize, pub usize);

impl Alt {
    pub fn coord(self, axis: Axis) -> usize {
        match axis {
            Axis::One => self.0,
            Axis::Two => self.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("axis {0} has no labels")]
    Empty(u8),
    #[error("axis {axis} repeats label {label:?}")]
    DuplicateLabel { axis: u8, label: String },
}

/// Label sets `X₁`, `X₂`. Alternatives are numbered row-major:
/// `(i, j) ↦ i·|X₂| + j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpace {
    x1: Vec<String>,
    x2: Vec<String>,
}

impl ProductSpace {
    pub fn new(x1: Vec<String>, x2: Vec<String>) -> Result<Self, SpaceError> {
        for (axis, labels) in [(1u8, &x1), (2u8, &x2)] {
            if labels.is_empty() {
                return Err(SpaceError::Empty(axis));
            }
            let mut seen = std::collections::HashSet::new();
            for l in labels.iter() {
                if !seen.insert(l) {
                    return Err(SpaceError::DuplicateLabel {
                        axis,
                        label: l.clone(),
                    });
                }
            }
        }
        Ok(ProductSpace { x1, x2 })
    }

    /// Labels `a0, a1, …` and `p0, p1, …`.
    pub fn with_sizes(m1: usize, m2: usize) -> Self {
        ProductSpace {
            x1: (0..m1).map(|i| format!("a{i}")).collect(),
            x2: (0..m2).map(|j| format!("p{j}")).collect(),
        }
    }

    pub fn m1(&self) -> usize {
        self.x1.len()
    }

    pub fn m2(&self) -> usize {
        self.x2.len()
    }

    pub fn size(&self, axis: Axis) -> usize {
        match axis {
            Axis::One => self.m1(),
            Axis::Two => self.m2(),
        }
    }

    pub fn len(&self) -> usize {
        self.m1() * self.m2()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn labels(&self, axis: Axis) -> &[String] {
        match axis {
            Axis::One => &self.x1,
            Axis::Two => &self.x2,
        }
    }

    pub fn label(&self, axis: Axis, i: usize) -> &str {
        &self.labels(axis)[i]
    }

    pub fn index(&self, x: Alt) -> usize {
        x.0 * self.m2() + x.1
    }

    pub fn alt(&self, id: usize) -> Alt {
        Alt(id / self.m2(), id % self.m2())
    }

    pub fn alts(&self) -> impl Iterator<Item = Alt> + '_ {
        (0..self.m1()).flat_map(move |i| (0..self.m2()).map(move |j| Alt(i, j)))
    }

    /// `"(a, p)"` rendering of an alternative.
    pub fn show(&self, x: Alt) -> String {
        format!("({}, {})", self.x1[x.0], self.x2[x.1])
    }

    /// The space with the two factors exchanged.
    pub fn transposed(&self) -> ProductSpace {
        ProductSpace {
            x1: self.x2.clone(),
            x2: self.x1.clone(),
        }
    }
}
