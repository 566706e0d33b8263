use choquet_core::{validate_capacity, Capacity, CapacityError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Essential coordinates `[axis 1, axis 2]` on SE and on NW.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Essentials {
    pub se: [bool; 2],
    pub nw: [bool; 2],
}

impl Essentials {
    pub fn both_two(&self) -> bool {
        self.se == [true, true] && self.nw == [true, true]
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtractError {
    #[error("{0} is required for a region with two essential coordinates")]
    Missing(&'static str),
    #[error("{name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("no essential coordinate on {0}")]
    NoEssential(&'static str),
    #[error("extracted capacity is invalid: {0}")]
    Invalid(#[from] CapacityError),
}

/// Capacity from the scale parameters.
///
/// On SE, two essential coordinates give `ν({1}) = 1/(1+k)`; a single
/// essential coordinate gives 1 for axis 1 and 0 for axis 2. On NW, two
/// essential coordinates give `ν({2}) = λk/(1+λk)`; a single one gives 1 for
/// axis 2 and 0 for axis 1.
pub fn extract_capacity(
    k: Option<f64>,
    lambda: Option<f64>,
    ess: Essentials,
) -> Result<Capacity, ExtractError> {
    let nu1 = match ess.se {
        [true, true] => {
            let k = k.ok_or(ExtractError::Missing("k"))?;
            if !(k > 0.0 && k.is_finite()) {
                return Err(ExtractError::OutOfRange {
                    name: "k",
                    value: k,
                });
            }
            1.0 / (1.0 + k)
        }
        [true, false] => 1.0,
        [false, true] => 0.0,
        [false, false] => return Err(ExtractError::NoEssential("SE")),
    };
    let nu2 = match ess.nw {
        [true, true] => {
            let k = k.ok_or(ExtractError::Missing("k"))?;
            let lambda = lambda.ok_or(ExtractError::Missing("lambda"))?;
            if !(lambda >= 0.0 && lambda.is_finite()) {
                return Err(ExtractError::OutOfRange {
                    name: "lambda",
                    value: lambda,
                });
            }
            let lk = lambda * k;
            if !lk.is_finite() {
                return Err(ExtractError::OutOfRange {
                    name: "lambda*k",
                    value: lk,
                });
            }
            lk / (1.0 + lk)
        }
        [false, true] => 1.0,
        [true, false] => 0.0,
        [false, false] => return Err(ExtractError::NoEssential("NW")),
    };
    let cap = Capacity::two(nu1, nu2);
    validate_capacity(&cap)?;
    Ok(cap)
}

/// `k = (1−ν₁)/ν₁`, defined for `ν₁ > 0`.
pub fn k_of(nu1: f64) -> Option<f64> {
    (nu1 > 0.0).then(|| (1.0 - nu1) / nu1)
}

/// `λ = ν₁ν₂ / ((1−ν₁)(1−ν₂))`, defined when neither weight is 1.
pub fn lambda_of(nu1: f64, nu2: f64) -> Option<f64> {
    (nu1 < 1.0 && nu2 < 1.0).then(|| nu1 * nu2 / ((1.0 - nu1) * (1.0 - nu2)))
}

/// Default tolerance of [`uniqueness_case`].
pub const CASE_TOL: f64 = 1e-9;

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn boundary(v: f64, tol: f64) -> bool {
    near(v, 0.0, tol) || near(v, 1.0, tol)
}

/// Uniqueness case 1–5 of a two-criterion capacity:
/// 1 when `ν₁ + ν₂ = 1`; 2 when both are interior; 3 when `ν₂` is interior
/// and `ν₁ ∈ {0, 1}`; 4 when `ν₁` is interior and `ν₂ ∈ {0, 1}`; 5 when both
/// are 0 or both are 1. Comparisons use `tol`.
pub fn uniqueness_case(nu1: f64, nu2: f64, tol: f64) -> u8 {
    if near(nu1 + nu2, 1.0, tol) {
        1
    } else {
        match (boundary(nu1, tol), boundary(nu2, tol)) {
            (false, false) => 2,
            (true, false) => 3,
            (false, true) => 4,
            (true, true) => 5,
        }
    }
}
