use thiserror::Error;

use crate::system::{HomSystem, Sense};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FmError {
    #[error("coefficient overflow during elimination")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct FmRow {
    coef: Vec<i128>,
    hist: Vec<u64>,
}

impl FmRow {
    fn is_zero(&self) -> bool {
        self.coef.iter().all(|&c| c == 0)
    }

    fn normalize(&mut self) {
        let g = self.coef.iter().fold(0i128, |g, &c| gcd(g, c.abs()));
        if g > 1 {
            for c in &mut self.coef {
                *c /= g;
            }
        }
    }

    fn weight(&self) -> u32 {
        self.hist.iter().map(|w| w.count_ones()).sum()
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `s·r + t·e`, coefficientwise.
fn combine(r: &[i128], s: i128, e: &[i128], t: i128) -> Result<Vec<i128>, FmError> {
    r.iter()
        .zip(e)
        .map(|(&a, &b)| {
            let x = a.checked_mul(s).ok_or(FmError::Overflow)?;
            let y = b.checked_mul(t).ok_or(FmError::Overflow)?;
            x.checked_add(y).ok_or(FmError::Overflow)
        })
        .collect()
}

/// Exact feasibility of a homogeneous system by Fourier–Motzkin elimination.
///
/// Each strict row `a·x > 0` becomes `a·x − t ≥ 0` with one extra variable
/// `t`, and the system is feasible iff it has a solution with `t > 0`.
/// Equalities are substituted out first. The original variables are then
/// eliminated with Chernikov's rule (a derived row built from more than
/// `eliminated + 1` original rows is redundant) and duplicate removal; what
/// remains bounds `t` alone, and a row `−c·t ≥ 0` with `c > 0` means
/// infeasible.
pub fn fm_feasible(sys: &HomSystem) -> Result<bool, FmError> {
    let n = sys.vars;
    let t = n;
    let words = sys.rows.len().div_ceil(64).max(1);
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    for row in &sys.rows {
        let mut coef = vec![0i128; n + 1];
        for &(v, c) in &row.terms {
            coef[v] += c as i128;
        }
        if row.sense == Sense::Strict {
            coef[t] = -1;
        }
        let r = FmRow {
            coef,
            hist: vec![0; words],
        };
        match row.sense {
            Sense::Zero => eqs.push(r),
            _ => ineqs.push(r),
        }
    }
    for (i, r) in ineqs.iter_mut().enumerate() {
        r.hist[i / 64] |= 1 << (i % 64);
    }

    while let Some(eq) = eqs.pop() {
        let Some(j) = (0..n)
            .filter(|&j| eq.coef[j] != 0)
            .min_by_key(|&j| eq.coef[j].abs())
        else {
            continue;
        };
        let a = eq.coef[j];
        for r in eqs.iter_mut().chain(ineqs.iter_mut()) {
            let c = r.coef[j];
            if c != 0 {
                r.coef = combine(&r.coef, a.abs(), &eq.coef, -a.signum() * c)?;
                r.normalize();
            }
        }
    }

    let mut rows = Vec::new();
    for mut r in ineqs {
        if !r.is_zero() {
            r.normalize();
            rows.push(r);
        }
    }
    dedup(&mut rows);

    let mut eliminated = 0u32;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for j in 0..n {
            let pos = rows.iter().filter(|r| r.coef[j] > 0).count();
            let neg = rows.iter().filter(|r| r.coef[j] < 0).count();
            if pos + neg == 0 {
                continue;
            }
            let cost = pos * neg;
            if best.is_none_or(|(_, c, _)| cost < c) {
                best = Some((j, cost, pos + neg));
            }
        }
        let Some((j, _, _)) = best else { break };
        eliminated += 1;
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            match r.coef[j].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => keep.push(r),
            }
        }
        for p in &pos {
            for q in &neg {
                let a = p.coef[j];
                let b = -q.coef[j];
                let mut r = FmRow {
                    coef: combine(&p.coef, b, &q.coef, a)?,
                    hist: p.hist.iter().zip(&q.hist).map(|(x, y)| x | y).collect(),
                };
                if r.weight() > eliminated + 1 || r.is_zero() {
                    continue;
                }
                r.normalize();
                keep.push(r);
            }
        }
        rows = keep;
        dedup(&mut rows);
    }
    Ok(rows.iter().all(|r| r.coef[t] >= 0))
}

/// Drops repeated forms, keeping the copy with the smallest history.
fn dedup(rows: &mut Vec<FmRow>) {
    rows.sort_by(|a, b| a.coef.cmp(&b.coef).then(a.weight().cmp(&b.weight())));
    rows.dedup_by(|later, earlier| later.coef == earlier.coef);
}
