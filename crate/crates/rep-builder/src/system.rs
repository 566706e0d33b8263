use microlp::{ComparisonOp, OptimizationDirection, Problem};

/// How a row's linear form compares with zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// `form > 0`; the LP backend enforces `form ≥ δ`.
    Strict,
    /// `form ≥ 0`.
    NonNeg,
    /// `form = 0`.
    Zero,
}

/// One homogeneous constraint with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
}

impl Row {
    /// Builds a row, summing repeated variables and dropping zeros.
    pub fn new(terms: impl IntoIterator<Item = (usize, i64)>, sense: Sense) -> Self {
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for (v, c) in terms {
            match acc.iter_mut().find(|(w, _)| *w == v) {
                Some(slot) => slot.1 += c,
                None => acc.push((v, c)),
            }
        }
        acc.retain(|&(_, c)| c != 0);
        acc.sort_unstable();
        Row { terms: acc, sense }
    }
}

/// A homogeneous linear system: every row compares a form with zero.
///
/// Such a system with strict rows is feasible iff it is feasible with every
/// strict row raised to `≥ δ` for any `δ > 0`, which is what lets the exact
/// elimination oracle and the LP backend answer the same question.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HomSystem {
    pub vars: usize,
    pub rows: Vec<Row>,
}

impl HomSystem {
    pub fn new(vars: usize) -> Self {
        HomSystem {
            vars,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }
}

/// LP feasibility of `sys` with strict rows at margin `delta`. Returns a
/// feasible point, or `None` when the backend reports infeasibility.
pub fn lp_solve(sys: &HomSystem, delta: f64) -> Option<Vec<f64>> {
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = (0..sys.vars)
        .map(|_| p.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY)))
        .collect();
    for row in &sys.rows {
        let expr: Vec<_> = row
            .terms
            .iter()
            .map(|&(v, c)| (vars[v], c as f64))
            .collect();
        if expr.is_empty() {
            if row.sense == Sense::Strict {
                return None;
            }
            continue;
        }
        let (op, rhs) = match row.sense {
            Sense::Strict => (ComparisonOp::Ge, delta),
            Sense::NonNeg => (ComparisonOp::Ge, 0.0),
            Sense::Zero => (ComparisonOp::Eq, 0.0),
        };
        p.add_constraint(expr.as_slice(), op, rhs);
    }
    let sol = p.solve().ok()?.into_solution().ok()?;
    Some(vars.iter().map(|&v| sol.var_value(v)).collect())
}

/// Checks `point` against `sys` with strict rows at `delta`, up to `slack`.
pub fn satisfies(sys: &HomSystem, point: &[f64], delta: f64, slack: f64) -> bool {
    sys.rows.iter().all(|row| {
        let s: f64 = row.terms.iter().map(|&(v, c)| c as f64 * point[v]).sum();
        match row.sense {
            Sense::Strict => s >= delta - slack,
            Sense::NonNeg => s >= -slack,
            Sense::Zero => s.abs() <= slack,
        }
    })
}
