use microlp::{ComparisonOp, OptimizationDirection, Problem, Variable};
use nalgebra::{DMatrix, DVector};
use relation_model::{Alt, AltSet, Cmp, PreferenceRelation, WeakOrder};

use crate::cone::sorted_members;

/// A weight that is either searched for or held fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    Free,
    Fixed(f64),
}

/// Consecutive pairs `(lower, upper, strict)` of the whole relation.
pub fn chain(rel: &PreferenceRelation) -> Vec<(Alt, Alt, bool)> {
    let order = sorted_members(rel, &AltSet::full(rel.space()));
    order
        .windows(2)
        .map(|w| (w[0], w[1], rel.cmp(w[1], w[0]) != Cmp::Indiff))
        .collect()
}

/// Dense ranks times `delta`: the starting point of the search.
pub fn rank_values(o: &WeakOrder, delta: f64) -> Vec<f64> {
    o.ranks().iter().map(|&r| r as f64 * delta).collect()
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub f1: Vec<f64>,
    pub f2: Vec<f64>,
    pub nu1: f64,
    pub nu2: f64,
    /// Half the squared residual norm at the end of the search.
    pub cost: f64,
}

fn sigmoid(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

fn logit(p: f64) -> f64 {
    let p = p.clamp(1e-9, 1.0 - 1e-9);
    (p / (1.0 - p)).ln()
}

struct Layout {
    m1: usize,
    /// Parameter index of `t₁`, `t₂` (logits of the free weights).
    t: [Option<usize>; 2],
    fixed: [f64; 2],
    n: usize,
}

impl Layout {
    fn new(m1: usize, m2: usize, w: [Weight; 2]) -> Self {
        let mut n = m1 + m2;
        let mut t = [None, None];
        let mut fixed = [0.0; 2];
        for i in 0..2 {
            match w[i] {
                Weight::Free => {
                    t[i] = Some(n);
                    n += 1;
                }
                Weight::Fixed(v) => fixed[i] = v,
            }
        }
        Layout { m1, t, fixed, n }
    }

    fn nu(&self, th: &[f64]) -> [f64; 2] {
        [0, 1].map(|i| self.t[i].map_or(self.fixed[i], |j| sigmoid(th[j])))
    }

    /// `C(x)` and its gradient as sparse `(param, derivative)` entries.
    fn eval(&self, th: &[f64], nu: [f64; 2], x: Alt, grad: &mut Vec<(usize, f64)>) -> f64 {
        grad.clear();
        let (i1, i2) = (x.0, self.m1 + x.1);
        let (a, b) = (th[i1], th[i2]);
        if a >= b {
            grad.push((i1, nu[0]));
            grad.push((i2, 1.0 - nu[0]));
            if let Some(j) = self.t[0] {
                grad.push((j, (a - b) * nu[0] * (1.0 - nu[0])));
            }
            nu[0] * a + (1.0 - nu[0]) * b
        } else {
            grad.push((i1, 1.0 - nu[1]));
            grad.push((i2, nu[1]));
            if let Some(j) = self.t[1] {
                grad.push((j, (b - a) * nu[1] * (1.0 - nu[1])));
            }
            (1.0 - nu[1]) * a + nu[1] * b
        }
    }

    fn residuals(
        &self,
        th: &[f64],
        steps: &[(Alt, Alt, bool)],
        delta: f64,
        jac: Option<&mut DMatrix<f64>>,
    ) -> DVector<f64> {
        let nu = self.nu(th);
        let mut r = DVector::zeros(steps.len());
        let (mut gx, mut gy) = (Vec::new(), Vec::new());
        let mut jac = jac;
        if let Some(j) = jac.as_deref_mut() {
            j.fill(0.0);
        }
        for (row, &(x, y, strict)) in steps.iter().enumerate() {
            let cx = self.eval(th, nu, x, &mut gx);
            let cy = self.eval(th, nu, y, &mut gy);
            let gap = cy - cx;
            let sign = if strict {
                if gap >= delta {
                    continue;
                }
                r[row] = delta - gap;
                -1.0
            } else {
                r[row] = gap;
                1.0
            };
            if let Some(j) = jac.as_deref_mut() {
                for &(p, d) in &gy {
                    j[(row, p)] += sign * d;
                }
                for &(p, d) in &gx {
                    j[(row, p)] -= sign * d;
                }
            }
        }
        r
    }
}

/// Levenberg–Marquardt on hinge residuals `max(0, δ − gap)` for strict
/// consecutive pairs and `gap` for ties, over the value functions and the
/// logits of the free weights.
pub fn search(
    steps: &[(Alt, Alt, bool)],
    m1: usize,
    m2: usize,
    delta: f64,
    w: [Weight; 2],
    start: (&[f64], &[f64], [f64; 2]),
    max_iter: usize,
) -> Solution {
    let lay = Layout::new(m1, m2, w);
    let mut th: Vec<f64> = start.0.iter().chain(start.1).copied().collect();
    for i in 0..2 {
        if lay.t[i].is_some() {
            th.push(logit(start.2[i]));
        }
    }
    let mut jac = DMatrix::zeros(steps.len(), lay.n);
    let mut r = lay.residuals(&th, steps, delta, Some(&mut jac));
    let mut cost = 0.5 * r.norm_squared();
    let mut mu = 1e-3;
    let floor = 1e-30 * delta * delta;
    for _ in 0..max_iter {
        if cost <= floor {
            break;
        }
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * &r;
        let mut improved = false;
        while mu < 1e12 {
            let mut a = jtj.clone();
            for i in 0..lay.n {
                a[(i, i)] += mu * (jtj[(i, i)] + 1e-9);
            }
            let Some(ch) = a.cholesky() else {
                mu *= 4.0;
                continue;
            };
            let h = ch.solve(&(-&g));
            let cand: Vec<f64> = th.iter().zip(h.iter()).map(|(a, b)| a + b).collect();
            let rc = lay.residuals(&cand, steps, delta, None);
            let cc = 0.5 * rc.norm_squared();
            if cc < cost {
                let small =
                    h.norm() <= 1e-15 * (1.0 + th.iter().map(|v| v * v).sum::<f64>().sqrt());
                th = cand;
                cost = cc;
                mu = (mu / 3.0).max(1e-15);
                improved = !small;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
        r = lay.residuals(&th, steps, delta, Some(&mut jac));
    }
    let nu = lay.nu(&th);
    Solution {
        f1: th[..m1].to_vec(),
        f2: th[m1..m1 + m2].to_vec(),
        nu1: nu[0],
        nu2: nu[1],
        cost,
    }
}

/// Re-solves the value functions as an LP at fixed weights.
///
/// Sides come from the sign of `f1 − f2` in `guess`; points with
/// `|f1 − f2| ≤ frontier` are held on the diagonal up to `eps` when
/// `pin_frontier` is set. Strict pairs get gaps `≥ δ`, ties `|gap| ≤ eps`,
/// and the margin by which off-diagonal points clear the diagonal (capped
/// at δ) is maximized.
#[allow(clippy::too_many_arguments)]
pub fn polish(
    steps: &[(Alt, Alt, bool)],
    m1: usize,
    m2: usize,
    nu: [f64; 2],
    guess: (&[f64], &[f64]),
    delta: f64,
    eps: f64,
    frontier: f64,
    pin_frontier: bool,
) -> Option<(Vec<f64>, Vec<f64>)> {
    let mut p = Problem::new(OptimizationDirection::Maximize);
    let free = (f64::NEG_INFINITY, f64::INFINITY);
    let v1: Vec<_> = (0..m1).map(|_| p.add_var(0.0, free)).collect();
    let v2: Vec<_> = (0..m2).map(|_| p.add_var(0.0, free)).collect();
    let margin = p.add_var(1.0, (0.0, delta));
    #[derive(Clone, Copy, PartialEq)]
    enum Side {
        Se,
        Nw,
        Diag,
    }
    let side = |x: Alt| {
        let d = guess.0[x.0] - guess.1[x.1];
        if pin_frontier && d.abs() <= frontier {
            Side::Diag
        } else if d >= 0.0 {
            Side::Se
        } else {
            Side::Nw
        }
    };
    let form = |x: Alt| -> [(usize, f64); 2] {
        match side(x) {
            Side::Se | Side::Diag => [(x.0, nu[0]), (x.1, 1.0 - nu[0])],
            Side::Nw => [(x.0, 1.0 - nu[1]), (x.1, nu[1])],
        }
    };
    let mut seen = vec![false; m1 * m2];
    let mut touch = |x: Alt, p: &mut Problem| {
        if std::mem::replace(&mut seen[x.0 * m2 + x.1], true) {
            return;
        }
        let (a, b) = (v1[x.0], v2[x.1]);
        match side(x) {
            Side::Diag => {
                p.add_constraint([(a, 1.0), (b, -1.0)], ComparisonOp::Le, eps);
                p.add_constraint([(a, 1.0), (b, -1.0)], ComparisonOp::Ge, -eps);
            }
            Side::Se => {
                p.add_constraint([(a, 1.0), (b, -1.0), (margin, -1.0)], ComparisonOp::Ge, 0.0)
            }
            Side::Nw => {
                p.add_constraint([(b, 1.0), (a, -1.0), (margin, -1.0)], ComparisonOp::Ge, 0.0)
            }
        }
    };
    for &(x, y, strict) in steps {
        touch(x, &mut p);
        touch(y, &mut p);
        let fx = form(x);
        let fy = form(y);
        // Shared labels must be summed: the backend rejects repeated variables.
        let mut terms: Vec<(usize, f64)> = Vec::with_capacity(4);
        for (idx, c) in [
            (fy[0].0, fy[0].1),
            (m1 + fy[1].0, fy[1].1),
            (fx[0].0, -fx[0].1),
            (m1 + fx[1].0, -fx[1].1),
        ] {
            match terms.iter_mut().find(|t| t.0 == idx) {
                Some(t) => t.1 += c,
                None => terms.push((idx, c)),
            }
        }
        terms.sort_by_key(|t| t.0);
        let var = |i: usize| if i < m1 { v1[i] } else { v2[i - m1] };
        let expr: Vec<_> = terms.iter().map(|&(i, c)| (var(i), c)).collect();
        if strict {
            p.add_constraint(expr.as_slice(), ComparisonOp::Ge, delta);
        } else {
            p.add_constraint(expr.as_slice(), ComparisonOp::Le, eps);
            p.add_constraint(expr.as_slice(), ComparisonOp::Ge, -eps);
        }
    }
    let sol = p.solve().ok()?.into_solution().ok()?;
    Some((
        v1.iter().map(|&v| sol.var_value(v)).collect(),
        v2.iter().map(|&v| sol.var_value(v)).collect(),
    ))
}

/// Value functions at fixed weights by a convex–concave procedure.
///
/// At fixed `ν` the integral is the smaller of the two linear forms when
/// `ν₁ + ν₂ ≤ 1` and the larger one otherwise. Each constraint
/// `C(u) ≥ C(v) + c` is made linear by replacing the nonconvex side with the
/// form active at the current values, which only shrinks the feasible set.
/// Each round solves an LP minimizing total slack and moves to its
/// solution; the loop stops at zero slack or when the slack stops falling.
#[allow(clippy::too_many_arguments)]
pub fn convex_concave(
    steps: &[(Alt, Alt, bool)],
    m1: usize,
    m2: usize,
    nu: [f64; 2],
    guess: (&[f64], &[f64]),
    delta: f64,
    eps: f64,
    max_rounds: usize,
) -> Option<(Vec<f64>, Vec<f64>)> {
    let lower = nu[0] + nu[1] <= 1.0;
    // Coefficients of the SE and NW forms on (f1, f2).
    let forms = [[nu[0], 1.0 - nu[0]], [1.0 - nu[1], nu[1]]];
    let mut f1 = guess.0.to_vec();
    let mut f2 = guess.1.to_vec();
    let mut last = f64::INFINITY;
    for _ in 0..max_rounds {
        let active = |x: Alt, f1: &[f64], f2: &[f64]| {
            let a = forms[0][0] * f1[x.0] + forms[0][1] * f2[x.1];
            let b = forms[1][0] * f1[x.0] + forms[1][1] * f2[x.1];
            usize::from((a <= b) != lower)
        };
        let mut p = Problem::new(OptimizationDirection::Minimize);
        let free = (f64::NEG_INFINITY, f64::INFINITY);
        let v1: Vec<_> = (0..m1).map(|_| p.add_var(0.0, free)).collect();
        let v2: Vec<_> = (0..m2).map(|_| p.add_var(0.0, free)).collect();
        // Row L_j(u) − L_k(v) + slack ≥ c with shared labels merged.
        let row = |p: &mut Problem, u: Alt, j: usize, v: Alt, k: usize, slack: Variable, c: f64| {
            let mut terms: Vec<(usize, f64)> = Vec::with_capacity(5);
            for (idx, coef) in [
                (u.0, forms[j][0]),
                (m1 + u.1, forms[j][1]),
                (v.0, -forms[k][0]),
                (m1 + v.1, -forms[k][1]),
            ] {
                match terms.iter_mut().find(|t| t.0 == idx) {
                    Some(t) => t.1 += coef,
                    None => terms.push((idx, coef)),
                }
            }
            terms.sort_by_key(|t| t.0);
            let mut expr: Vec<_> = terms
                .iter()
                .map(|&(i, c)| (if i < m1 { v1[i] } else { v2[i - m1] }, c))
                .collect();
            expr.push((slack, 1.0));
            p.add_constraint(expr.as_slice(), ComparisonOp::Ge, c);
        };
        // C(u) ≥ C(v) + c
        let at_least = |p: &mut Problem, u: Alt, v: Alt, c: f64| {
            let slack = p.add_var(1.0, (0.0, f64::INFINITY));
            if lower {
                let k = active(v, &f1, &f2);
                for j in 0..2 {
                    row(p, u, j, v, k, slack, c);
                }
            } else {
                let j = active(u, &f1, &f2);
                for k in 0..2 {
                    row(p, u, j, v, k, slack, c);
                }
            }
        };
        for &(x, y, strict) in steps {
            if strict {
                at_least(&mut p, y, x, delta);
            } else {
                at_least(&mut p, y, x, -eps);
                at_least(&mut p, x, y, -eps);
            }
        }
        let sol = p.solve().ok()?.into_solution().ok()?;
        f1 = v1.iter().map(|&v| sol.var_value(v)).collect();
        f2 = v2.iter().map(|&v| sol.var_value(v)).collect();
        let total = sol.objective();
        if total <= 1e-9 * delta {
            return Some((f1, f2));
        }
        if total >= last * (1.0 - 1e-9) {
            return None;
        }
        last = total;
    }
    None
}
