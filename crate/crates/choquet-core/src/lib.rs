//! Capacities (fuzzy measures) and the discrete Choquet integral.
//!
//! Subsets of the criteria `{1..n}` are encoded as bitmasks: bit `i - 1` is
//! set when criterion `i` belongs to the subset.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest criterion count accepted by [`Capacity`].
pub const MAX_CRITERIA: usize = 16;

/// A set function on the subsets of `{1..n}`.
///
/// Construction does not validate; call [`validate_capacity`] (or
/// [`Capacity::validated`]) before integrating.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Capacity {
    n: usize,
    values: BTreeMap<u32, f64>,
}

/// Why a capacity was rejected.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CapacityError {
    #[error("criterion count {0} outside 1..={MAX_CRITERIA}")]
    BadSize(usize),
    #[error("no value for subset {}", fmt_subset(*.0))]
    MissingSubset(u32),
    #[error("value {value} for subset {} is not finite", fmt_subset(*subset))]
    NotFinite { subset: u32, value: f64 },
    #[error("normalization fails: value({}) = {value}, expected {expected}", fmt_subset(*subset))]
    Normalization {
        subset: u32,
        value: f64,
        expected: f64,
    },
    #[error(
        "monotonicity fails: value({}) = {value_a} > value({}) = {value_b}",
        fmt_subset(*a),
        fmt_subset(*b)
    )]
    Monotonicity {
        a: u32,
        b: u32,
        value_a: f64,
        value_b: f64,
    },
}

impl CapacityError {
    /// True for errors about missing or malformed entries, false for
    /// violations of the capacity axioms themselves.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            CapacityError::BadSize(_)
                | CapacityError::MissingSubset(_)
                | CapacityError::NotFinite { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChoquetError {
    #[error("invalid capacity: {0}")]
    Capacity(#[from] CapacityError),
    #[error("value vector has {got} entries, capacity expects {expected}")]
    Length { expected: usize, got: usize },
    #[error("value vector entry {index} is not finite")]
    NotFinite { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("length mismatch: {0} vs {1}")]
pub struct LengthMismatch(pub usize, pub usize);

/// Renders a subset bitmask as `{1,3}` (criteria numbered from 1).
pub fn fmt_subset(mask: u32) -> String {
    struct S(u32);
    impl fmt::Display for S {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("{")?;
            let mut first = true;
            for i in 0..32 {
                if self.0 & (1 << i) != 0 {
                    if !first {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", i + 1)?;
                    first = false;
                }
            }
            f.write_str("}")
        }
    }
    S(mask).to_string()
}

impl Capacity {
    /// Builds a capacity from explicit subset values. Entries outside the
    /// power set of `{1..n}` are ignored.
    pub fn from_values(n: usize, values: impl IntoIterator<Item = (u32, f64)>) -> Self {
        let full = full_mask(n.min(MAX_CRITERIA));
        let values = values.into_iter().filter(|(s, _)| s & !full == 0).collect();
        Capacity { n, values }
    }

    /// The two-criterion capacity with `ν({1}) = nu1`, `ν({2}) = nu2`.
    pub fn two(nu1: f64, nu2: f64) -> Self {
        Capacity::from_values(2, [(0, 0.0), (1, nu1), (2, nu2), (3, 1.0)])
    }

    /// The additive capacity with the given singleton weights; the weights are
    /// expected to sum to one.
    pub fn additive(weights: &[f64]) -> Self {
        let n = weights.len();
        let values = (0..=full_mask(n)).map(|s| {
            let v = (0..n)
                .filter(|i| s & (1 << i) != 0)
                .map(|i| weights[i])
                .sum();
            (s, v)
        });
        Capacity::from_values(n, values)
    }

    /// Returns the capacity after [`validate_capacity`] accepts it.
    pub fn validated(self) -> Result<Self, CapacityError> {
        validate_capacity(&self)?;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, subset: u32) -> Option<f64> {
        self.values.get(&subset).copied()
    }

    /// Value of a subset given as 1-based criterion indices.
    pub fn of(&self, criteria: &[usize]) -> Option<f64> {
        let mask = criteria
            .iter()
            .fold(0u32, |m, &c| if c >= 1 { m | (1 << (c - 1)) } else { m });
        self.get(mask)
    }

    /// Iterates over the defined `(subset, value)` entries in mask order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.values.iter().map(|(&s, &v)| (s, v))
    }

    /// `ν({1})` and `ν({2})` for a two-criterion capacity.
    pub fn singletons2(&self) -> (f64, f64) {
        (
            self.get(1).unwrap_or(f64::NAN),
            self.get(2).unwrap_or(f64::NAN),
        )
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

/// Checks presence of all `2^n` entries, `ν(∅) = 0`, monotonicity and
/// `ν(N) = 1`, reporting the first failure in that order.
///
/// Monotonicity is checked on covering pairs `A ⊂ A ∪ {i}`, which is
/// equivalent to the full condition; the first failing pair in mask order is
/// reported.
pub fn validate_capacity(c: &Capacity) -> Result<(), CapacityError> {
    if c.n == 0 || c.n > MAX_CRITERIA {
        return Err(CapacityError::BadSize(c.n));
    }
    let full = full_mask(c.n);
    for s in 0..=full {
        match c.values.get(&s) {
            None => return Err(CapacityError::MissingSubset(s)),
            Some(v) if !v.is_finite() => {
                return Err(CapacityError::NotFinite {
                    subset: s,
                    value: *v,
                })
            }
            _ => {}
        }
    }
    let v = |s: u32| c.values[&s];
    if v(0) != 0.0 {
        return Err(CapacityError::Normalization {
            subset: 0,
            value: v(0),
            expected: 0.0,
        });
    }
    for a in 0..=full {
        for i in 0..c.n {
            let b = a | (1 << i);
            if b != a && v(a) > v(b) {
                return Err(CapacityError::Monotonicity {
                    a,
                    b,
                    value_a: v(a),
                    value_b: v(b),
                });
            }
        }
    }
    if v(full) != 1.0 {
        return Err(CapacityError::Normalization {
            subset: full,
            value: v(full),
            expected: 1.0,
        });
    }
    Ok(())
}

/// Discrete Choquet integral of `v` with respect to `c`.
///
/// Uses `Σ (f(i) − f(i−1)) · ν({j : f_j ≥ f(i)})` over the ascending
/// arrangement with `f(0) = 0`, which also covers negative entries.
pub fn choquet(c: &Capacity, v: &[f64]) -> Result<f64, ChoquetError> {
    validate_capacity(c)?;
    if v.len() != c.n {
        return Err(ChoquetError::Length {
            expected: c.n,
            got: v.len(),
        });
    }
    if let Some(index) = v.iter().position(|x| !x.is_finite()) {
        return Err(ChoquetError::NotFinite { index });
    }
    Ok(choquet_unchecked(c, v))
}

/// [`choquet`] without validation. The capacity must be complete and `v`
/// must have `c.n()` entries.
pub fn choquet_unchecked(c: &Capacity, v: &[f64]) -> f64 {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut prev = 0.0;
    let mut total = 0.0;
    for &i in &order {
        let level = v[i];
        let step = level - prev;
        if step != 0.0 {
            let upper = (0..v.len())
                .filter(|&j| v[j] >= level)
                .fold(0u32, |m, j| m | (1 << j));
            total += step * c.values[&upper];
        }
        prev = level;
    }
    total
}

/// Two-criterion Choquet integral with `ν({1}) = nu1`, `ν({2}) = nu2`.
///
/// Performs the same floating-point operations as [`choquet_unchecked`] on
/// [`Capacity::two`], so results are bit-identical.
pub fn choquet2(nu1: f64, nu2: f64, a: f64, b: f64) -> f64 {
    if a >= b {
        let mut t = 0.0;
        if b != 0.0 {
            t += b * 1.0;
        }
        if a - b != 0.0 {
            t += (a - b) * nu1;
        }
        t
    } else {
        let mut t = 0.0;
        if a != 0.0 {
            t += a * 1.0;
        }
        if b - a != 0.0 {
            t += (b - a) * nu2;
        }
        t
    }
}

/// True iff there are no `i, j` with `u[i] > u[j]` and `w[i] < w[j]`.
pub fn comonotonic(u: &[f64], w: &[f64]) -> Result<bool, LengthMismatch> {
    if u.len() != w.len() {
        return Err(LengthMismatch(u.len(), w.len()));
    }
    for i in 0..u.len() {
        for j in 0..u.len() {
            if u[i] > u[j] && w[i] < w[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_formatting() {
        assert_eq!(fmt_subset(0), "{}");
        assert_eq!(fmt_subset(0b101), "{1,3}");
    }

    #[test]
    fn uniform_additive_is_valid() {
        let c = Capacity::from_values(2, [(0, 0.0), (1, 0.5), (2, 0.5), (3, 1.0)]);
        assert_eq!(validate_capacity(&c), Ok(()));
    }

    #[test]
    fn non_monotone_pair_is_named() {
        let c = Capacity::from_values(2, [(0, 0.0), (1, 0.8), (2, 0.3), (3, 0.5)]);
        let err = validate_capacity(&c).unwrap_err();
        assert!(!err.is_structural());
        assert!(matches!(
            err,
            CapacityError::Monotonicity { a: 1, b: 3, .. }
        ));
    }

    #[test]
    fn empty_set_normalization() {
        let c = Capacity::from_values(2, [(0, 0.1), (1, 0.5), (2, 0.5), (3, 1.0)]);
        assert!(matches!(
            validate_capacity(&c),
            Err(CapacityError::Normalization { subset: 0, .. })
        ));
    }

    #[test]
    fn missing_entry_is_structural() {
        let c = Capacity::from_values(2, [(0, 0.0), (1, 0.5), (3, 1.0)]);
        let err = validate_capacity(&c).unwrap_err();
        assert_eq!(err, CapacityError::MissingSubset(2));
        assert!(err.is_structural());
    }

    #[test]
    fn special_cases() {
        let v = [0.3, 0.7];
        assert_eq!(choquet(&Capacity::two(1.0, 1.0), &v).unwrap(), 0.7);
        assert_eq!(choquet(&Capacity::two(0.0, 0.0), &v).unwrap(), 0.3);
        let w = choquet(&Capacity::two(0.6, 0.4), &[1.0, 2.0]).unwrap();
        assert!((w - 1.4).abs() < 1e-15);
    }

    #[test]
    fn constant_vector() {
        let c = Capacity::two(0.2, 0.1);
        assert_eq!(choquet(&c, &[-2.5, -2.5]).unwrap(), -2.5);
    }

    #[test]
    fn choquet2_matches_general_form() {
        let c = Capacity::two(0.3, 0.45);
        for &(a, b) in &[(1.0, 2.0), (2.0, 1.0), (-1.0, 3.0), (0.0, -2.0), (5.0, 5.0)] {
            assert_eq!(
                choquet2(0.3, 0.45, a, b).to_bits(),
                choquet_unchecked(&c, &[a, b]).to_bits()
            );
        }
    }

    #[test]
    fn comonotonicity_examples() {
        assert_eq!(comonotonic(&[1.0, 2.0], &[3.0, 4.0]), Ok(true));
        assert_eq!(comonotonic(&[1.0, 2.0], &[4.0, 3.0]), Ok(false));
        assert_eq!(comonotonic(&[1.0, 1.0], &[5.0, 0.0]), Ok(true));
        assert_eq!(comonotonic(&[1.0], &[1.0, 2.0]), Err(LengthMismatch(1, 2)));
    }

    #[test]
    fn errors_on_bad_vectors() {
        let c = Capacity::two(0.5, 0.5);
        assert!(matches!(
            choquet(&c, &[1.0]),
            Err(ChoquetError::Length { .. })
        ));
        assert!(matches!(
            choquet(&c, &[1.0, f64::NAN]),
            Err(ChoquetError::NotFinite { index: 1 })
        ));
    }
}
