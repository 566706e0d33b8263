use serde::{Deserialize, Serialize};

use crate::altset::AltSet;
use crate::budget::{Budget, BudgetExceeded};
use crate::relation::PreferenceRelation;
use crate::space::Alt;

/// Labels with `ap ≼ bq`, `ar ≽ bs`, `cp ≽ dq` and `cr ≺ ds`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
}

impl TcWitness {
    /// `[ap, bq, ar, bs, cp, dq, cr, ds]`
    pub fn points(&self) -> [Alt; 8] {
        let TcWitness {
            a,
            b,
            c,
            d,
            p,
            q,
            r,
            s,
        } = *self;
        [
            Alt(a, p),
            Alt(b, q),
            Alt(a, r),
            Alt(b, s),
            Alt(c, p),
            Alt(d, q),
            Alt(c, r),
            Alt(d, s),
        ]
    }

    /// True iff the eight points lie in `subset` and the premises hold while
    /// the conclusion fails.
    pub fn replays(&self, rel: &PreferenceRelation, subset: &AltSet) -> bool {
        self.replays_sides(rel, [subset, subset, subset, subset])
    }

    /// Replay against per-pair admissible sets as in [`cancellation_scan`].
    pub fn replays_sides(&self, rel: &PreferenceRelation, sides: [&AltSet; 4]) -> bool {
        let [ap, bq, ar, bs, cp, dq, cr, ds] = self.points();
        [(ap, bq), (ar, bs), (cp, dq), (cr, ds)]
            .iter()
            .zip(sides)
            .all(|(&(x, y), s)| s.contains(x) && s.contains(y))
            && rel.ge(bq, ap)
            && rel.ge(ar, bs)
            && rel.ge(cp, dq)
            && rel.gt(ds, cr)
    }
}

struct Bits {
    words: usize,
    data: Vec<u64>,
}

impl Bits {
    fn new(slots: usize, bits: usize) -> Self {
        let words = bits.div_ceil(64).max(1);
        Bits {
            words,
            data: vec![0; slots * words],
        }
    }

    fn set(&mut self, slot: usize, bit: usize) {
        self.data[slot * self.words + bit / 64] |= 1 << (bit % 64);
    }

    fn row(&self, slot: usize) -> &[u64] {
        &self.data[slot * self.words..(slot + 1) * self.words]
    }
}

fn first_bit(words: impl Iterator<Item = u64>) -> Option<usize> {
    for (k, w) in words.enumerate() {
        if w != 0 {
            return Some(k * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

/// Exhaustive triple-cancellation scan over `subset`.
///
/// Only instances whose eight points all lie in `subset` count. Row labels
/// `(p, q, r, s)` are scanned outermost in lexicographic order, then the
/// first `(a, b)` and the first `(c, d)`; the first failing instance is
/// returned. Budget is charged one unit per row quadruple and column pair.
pub fn triple_cancellation(
    rel: &PreferenceRelation,
    subset: &AltSet,
    budget: &mut Budget,
) -> Result<Option<TcWitness>, BudgetExceeded> {
    cancellation_scan(rel, [subset, subset, subset, subset], budget)
}

/// Cancellation scan where each premise/conclusion pair of points has its
/// own admissible set: `ap, bq ∈ sides[0]`, `ar, bs ∈ sides[1]`,
/// `cp, dq ∈ sides[2]`, `cr, ds ∈ sides[3]`. Same order and budget as
/// [`triple_cancellation`].
pub fn cancellation_scan(
    rel: &PreferenceRelation,
    sides: [&AltSet; 4],
    budget: &mut Budget,
) -> Result<Option<TcWitness>, BudgetExceeded> {
    let space = rel.space();
    let any = |x: Alt| sides.iter().any(|s| s.contains(x));
    let cols: Vec<usize> = (0..space.m1())
        .filter(|&a| (0..space.m2()).any(|p| any(Alt(a, p))))
        .collect();
    let rows: Vec<usize> = (0..space.m2())
        .filter(|&p| (0..space.m1()).any(|a| any(Alt(a, p))))
        .collect();
    let (mc, mr) = (cols.len(), rows.len());
    if mc == 0 {
        return Ok(None);
    }
    let pairs = mc * mc;
    // For row pair (p, q) and side set S, bit (a, b) of `le` means
    // ap, bq ∈ S and ap ≼ bq; `ge` likewise with ≽; `both` membership only.
    let tables = |s: &AltSet| {
        let mut le = Bits::new(mr * mr, pairs);
        let mut ge = Bits::new(mr * mr, pairs);
        let mut both = Bits::new(mr * mr, pairs);
        for (ip, &p) in rows.iter().enumerate() {
            for (iq, &q) in rows.iter().enumerate() {
                let slot = ip * mr + iq;
                for (ia, &a) in cols.iter().enumerate() {
                    let x = Alt(a, p);
                    if !s.contains(x) {
                        continue;
                    }
                    for (ib, &b) in cols.iter().enumerate() {
                        let y = Alt(b, q);
                        if !s.contains(y) {
                            continue;
                        }
                        let bit = ia * mc + ib;
                        both.set(slot, bit);
                        if rel.ge(y, x) {
                            le.set(slot, bit);
                        }
                        if rel.ge(x, y) {
                            ge.set(slot, bit);
                        }
                    }
                }
            }
        }
        (le, ge, both)
    };
    let mut cache: Vec<(&AltSet, (Bits, Bits, Bits))> = Vec::new();
    let mut slot_of = [0usize; 4];
    for (k, s) in sides.iter().enumerate() {
        slot_of[k] = match cache.iter().position(|(t, _)| *t == *s) {
            Some(i) => i,
            None => {
                cache.push((s, tables(s)));
                cache.len() - 1
            }
        };
    }
    let le_a = &cache[slot_of[0]].1 .0;
    let ge_b = &cache[slot_of[1]].1 .1;
    let ge_c = &cache[slot_of[2]].1 .1;
    let (ge_d, both_d) = (&cache[slot_of[3]].1 .1, &cache[slot_of[3]].1 .2);
    let unit = pairs as u64;
    for ip in 0..mr {
        for iq in 0..mr {
            let pq = ip * mr + iq;
            for ir in 0..mr {
                for is in 0..mr {
                    budget.spend(unit)?;
                    let rs = ir * mr + is;
                    let ab = first_bit(le_a.row(pq).iter().zip(ge_b.row(rs)).map(|(x, y)| x & y));
                    let Some(ab) = ab else { continue };
                    let cd = first_bit(
                        ge_c.row(pq)
                            .iter()
                            .zip(both_d.row(rs))
                            .zip(ge_d.row(rs))
                            .map(|((g, m), g2)| g & m & !g2),
                    );
                    if let Some(cd) = cd {
                        return Ok(Some(TcWitness {
                            a: cols[ab / mc],
                            b: cols[ab % mc],
                            c: cols[cd / mc],
                            d: cols[cd % mc],
                            p: rows[ip],
                            q: rows[iq],
                            r: rows[ir],
                            s: rows[is],
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}
