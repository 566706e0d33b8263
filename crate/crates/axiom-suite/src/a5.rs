use relation_model::{
    Alt, AltSet, Axis, Budget, ConeKind, PreferenceRelation, ProductSpace, RegionLabeling,
};

use crate::report::{cores, region_of, AxiomId, AxiomReport, Status, Witness};

/// `(first, second)` label indices.
type LabelPair = (usize, usize);

const REGIONS: [ConeKind; 2] = [ConeKind::SE, ConeKind::NW];

fn kind_name(k: ConeKind) -> &'static str {
    match k {
        ConeKind::SE => "SE",
        ConeKind::NW => "NW",
    }
}

/// One instance of A5: the interval `[b, a]` is no longer than `[d, c]`
/// (measured at `p, q` in region `regions[0]`), both are projected onto the
/// second axis through `a·y₀ ∼ x₀·pa`, `b·y₀ ∼ x₀·pb`, `c·y₁ ∼ x₁·pc`,
/// `d·y₁ ∼ x₁·pd` (points in `regions[1]` and `regions[2]`), and `e, f`
/// (points in `regions[3]`) compare the projections inconsistently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A5Tuple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub p: usize,
    pub q: usize,
    pub y0: usize,
    pub x0: usize,
    pub y1: usize,
    pub x1: usize,
    pub pa: usize,
    pub pb: usize,
    pub pc: usize,
    pub pd: usize,
    pub e: usize,
    pub f: usize,
    pub regions: [ConeKind; 4],
}

impl A5Tuple {
    pub fn replays(&self, rel: &PreferenceRelation, lab: &RegionLabeling) -> bool {
        let (se, nw) = cores(rel.space(), lab);
        let reg = |k: usize| region_of(self.regions[k], &se, &nw);
        let all_in = |set: &AltSet, pts: &[Alt]| pts.iter().all(|&x| set.contains(x));
        let A5Tuple {
            a,
            b,
            c,
            d,
            p,
            q,
            y0,
            x0,
            y1,
            x1,
            pa,
            pb,
            pc,
            pd,
            e,
            f,
            regions,
        } = self.clone();
        let g1 = [Alt(a, p), Alt(b, q), Alt(c, p), Alt(d, q)];
        let g2 = [Alt(a, y0), Alt(b, y0), Alt(c, y1), Alt(d, y1)];
        let g3 = [Alt(x0, pa), Alt(x0, pb), Alt(x1, pc), Alt(x1, pd)];
        let g4 = [Alt(e, pa), Alt(f, pb), Alt(e, pc), Alt(f, pd)];
        lab.essential(regions[0])[0]
            && lab.essential(regions[2])[1]
            && all_in(&reg(0), &g1)
            && all_in(&reg(1), &g2)
            && all_in(&reg(2), &g3)
            && all_in(&reg(3), &g4)
            && rel.ge(g1[1], g1[0])
            && rel.ge(g1[2], g1[3])
            && (0..4).all(|k| rel.indiff(g2[k], g3[k]))
            && rel.ge(g4[0], g4[1])
            && !rel.ge(g4[2], g4[3])
    }

    pub fn items(&self, sp: &ProductSpace) -> Vec<String> {
        let l1 = |i: usize| sp.label(Axis::One, i).to_string();
        let l2 = |i: usize| sp.label(Axis::Two, i).to_string();
        let mut v = vec![
            format!("a={}", l1(self.a)),
            format!("b={}", l1(self.b)),
            format!("c={}", l1(self.c)),
            format!("d={}", l1(self.d)),
            format!("p={}", l2(self.p)),
            format!("q={}", l2(self.q)),
            format!("y0={}", l2(self.y0)),
            format!("x0={}", l1(self.x0)),
            format!("y1={}", l2(self.y1)),
            format!("x1={}", l1(self.x1)),
            format!("pi(a)={}", l2(self.pa)),
            format!("pi(b)={}", l2(self.pb)),
            format!("pi(c)={}", l2(self.pc)),
            format!("pi(d)={}", l2(self.pd)),
            format!("e={}", l1(self.e)),
            format!("f={}", l1(self.f)),
        ];
        for (k, r) in self.regions.iter().enumerate() {
            v.push(format!("group{}={}", k + 1, kind_name(*r)));
        }
        v
    }

    pub fn remap(&self, m1: &[usize], m2: &[usize]) -> A5Tuple {
        A5Tuple {
            a: m1[self.a],
            b: m1[self.b],
            c: m1[self.c],
            d: m1[self.d],
            p: m2[self.p],
            q: m2[self.q],
            y0: m2[self.y0],
            x0: m1[self.x0],
            y1: m2[self.y1],
            x1: m1[self.x1],
            pa: m2[self.pa],
            pb: m2[self.pb],
            pc: m2[self.pc],
            pd: m2[self.pd],
            e: m1[self.e],
            f: m1[self.f],
            regions: self.regions,
        }
    }
}

enum Scan<T> {
    Found(T),
    Clean { instantiated: bool },
    Budget,
}

fn a5_scan(rel: &PreferenceRelation, lab: &RegionLabeling, budget: &mut Budget) -> Scan<A5Tuple> {
    let s = rel.space();
    let (m1, m2) = (s.m1(), s.m2());
    let (se, nw) = cores(s, lab);
    let reg = |k: ConeKind| region_of(k, &se, &nw);
    let idx4 = |a: usize, b: usize, c: usize, d: usize| ((a * m1 + b) * m1 + c) * m1 + d;

    // Group 1: first (region, p, q) ordering [b, a] below [d, c].
    let mut cmp1: Vec<Option<(ConeKind, usize, usize)>> = vec![None; m1.pow(4)];
    for r1 in REGIONS {
        if !lab.essential(r1)[0] {
            continue;
        }
        let set = reg(r1);
        for p in 0..m2 {
            for q in 0..m2 {
                if budget.spend((m1 * m1 * m1 * m1) as u64).is_err() {
                    return Scan::Budget;
                }
                let lo: Vec<(usize, usize)> = (0..m1)
                    .flat_map(|a| (0..m1).map(move |b| (a, b)))
                    .filter(|&(a, b)| {
                        let (ap, bq) = (Alt(a, p), Alt(b, q));
                        set.contains(ap) && set.contains(bq) && rel.ge(bq, ap)
                    })
                    .collect();
                let hi: Vec<(usize, usize)> = (0..m1)
                    .flat_map(|c| (0..m1).map(move |d| (c, d)))
                    .filter(|&(c, d)| {
                        let (cp, dq) = (Alt(c, p), Alt(d, q));
                        set.contains(cp) && set.contains(dq) && rel.ge(cp, dq)
                    })
                    .collect();
                for &(a, b) in &lo {
                    for &(c, d) in &hi {
                        let slot = &mut cmp1[idx4(a, b, c, d)];
                        if slot.is_none() {
                            *slot = Some((r1, p, q));
                        }
                    }
                }
            }
        }
    }

    // Group 4: first (e, f) comparing (u, v) and (u', v') inconsistently.
    let idx_uv = |u: usize, v: usize, u2: usize, v2: usize| ((u * m2 + v) * m2 + u2) * m2 + v2;
    let mut bad: Vec<Vec<Option<(usize, usize)>>> = Vec::new();
    for r4 in REGIONS {
        let set = reg(r4);
        let mut t = vec![None; m2.pow(4)];
        if budget.spend((m2.pow(4) * m1 * m1) as u64).is_err() {
            return Scan::Budget;
        }
        for u in 0..m2 {
            for v in 0..m2 {
                for u2 in 0..m2 {
                    for v2 in 0..m2 {
                        'ef: for e in 0..m1 {
                            for f in 0..m1 {
                                let pts = [Alt(e, u), Alt(f, v), Alt(e, u2), Alt(f, v2)];
                                if pts.iter().all(|&x| set.contains(x))
                                    && rel.ge(pts[0], pts[1])
                                    && !rel.ge(pts[2], pts[3])
                                {
                                    t[idx_uv(u, v, u2, v2)] = Some((e, f));
                                    break 'ef;
                                }
                            }
                        }
                    }
                }
            }
        }
        bad.push(t);
    }

    let mut instantiated = false;
    for r2 in REGIONS {
        let set2 = reg(r2);
        for r3 in REGIONS {
            if !lab.essential(r3)[1] {
                continue;
            }
            let set3 = reg(r3);
            // Projections of each ordered pair (a, b): distinct (πa, πb)
            // with the first (y0, x0) producing them.
            let mut proj: Vec<Vec<(LabelPair, LabelPair)>> = vec![Vec::new(); m1 * m1];
            let mut nontrivial = vec![false; m1 * m1];
            for a in 0..m1 {
                for b in 0..m1 {
                    let list = &mut proj[a * m1 + b];
                    for y0 in 0..m2 {
                        let (ay, by) = (Alt(a, y0), Alt(b, y0));
                        if !(set2.contains(ay) && set2.contains(by)) {
                            continue;
                        }
                        for x0 in 0..m1 {
                            let us: Vec<usize> = (0..m2)
                                .filter(|&u| {
                                    set3.contains(Alt(x0, u)) && rel.indiff(ay, Alt(x0, u))
                                })
                                .collect();
                            let vs: Vec<usize> = (0..m2)
                                .filter(|&v| {
                                    set3.contains(Alt(x0, v)) && rel.indiff(by, Alt(x0, v))
                                })
                                .collect();
                            for &u in &us {
                                for &v in &vs {
                                    if ay != Alt(x0, u) || by != Alt(x0, v) {
                                        nontrivial[a * m1 + b] = true;
                                    }
                                    if !list.iter().any(|&(uv, _)| uv == (u, v)) {
                                        list.push(((u, v), (y0, x0)));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            for a in 0..m1 {
                for b in 0..m1 {
                    let pab = &proj[a * m1 + b];
                    if pab.is_empty() {
                        continue;
                    }
                    for c in 0..m1 {
                        for d in 0..m1 {
                            let Some((r1, p, q)) = cmp1[idx4(a, b, c, d)] else {
                                continue;
                            };
                            let pcd = &proj[c * m1 + d];
                            if pcd.is_empty() {
                                continue;
                            }
                            if nontrivial[a * m1 + b] || nontrivial[c * m1 + d] {
                                instantiated = true;
                            }
                            if budget.spend((2 * pab.len() * pcd.len()) as u64).is_err() {
                                return Scan::Budget;
                            }
                            for &((u, v), (y0, x0)) in pab {
                                for &((u2, v2), (y1, x1)) in pcd {
                                    for (k, r4) in REGIONS.iter().enumerate() {
                                        if let Some((e, f)) = bad[k][idx_uv(u, v, u2, v2)] {
                                            return Scan::Found(A5Tuple {
                                                a,
                                                b,
                                                c,
                                                d,
                                                p,
                                                q,
                                                y0,
                                                x0,
                                                y1,
                                                x1,
                                                pa: u,
                                                pb: v,
                                                pc: u2,
                                                pd: v2,
                                                e,
                                                f,
                                                regions: [r1, r2, r3, *r4],
                                            });
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Scan::Clean { instantiated }
}

/// Runs `scan` on the relation and then on its transpose (the form with the
/// coordinate roles exchanged).
fn both_orientations<T>(
    rel: &PreferenceRelation,
    lab: &RegionLabeling,
    budget: &mut Budget,
    scan: impl Fn(&PreferenceRelation, &RegionLabeling, &mut Budget) -> Scan<T>,
) -> (Scan<T>, bool) {
    match scan(rel, lab, budget) {
        Scan::Clean { instantiated } => match scan(&rel.transposed(), &lab.transposed(), budget) {
            Scan::Clean { instantiated: i2 } => (
                Scan::Clean {
                    instantiated: instantiated || i2,
                },
                true,
            ),
            other => (other, true),
        },
        other => (other, false),
    }
}

/// A5: interval comparisons survive projection onto the other axis.
///
/// The mirror form swaps the coordinate roles and runs on the transposed
/// relation. Reported `vacuous` when no instance with a projection between
/// two distinct points exists.
pub fn check_a5(
    rel: &PreferenceRelation,
    lab: &RegionLabeling,
    budget: &mut Budget,
) -> AxiomReport {
    match both_orientations(rel, lab, budget, a5_scan) {
        (Scan::Found(tuple), mirrored) => {
            AxiomReport::violated(AxiomId::A5, Witness::A5 { mirrored, tuple })
        }
        (Scan::Clean { instantiated: true }, _) => AxiomReport::new(AxiomId::A5, Status::Ok),
        (
            Scan::Clean {
                instantiated: false,
            },
            _,
        ) => AxiomReport::new(AxiomId::A5, Status::Vacuous),
        (Scan::Budget, _) => AxiomReport::new(AxiomId::A5, Status::BudgetExceeded)
            .with_note(format!("stopped after {} tuples", budget.limit())),
    }
}

/// Two standard sequences pinned together at consecutive terms `k, k + 1`
/// but not at term `i`.
///
/// `g` runs on the first axis with `g[j]·y0 ∼ g[j+1]·y1` inside
/// `region_g`; `h` runs on the second axis with `x0·h[j] ∼ x1·h[j+1]` inside
/// `region_h`. The link is `g[j]·p ∼ b·h[j]` with the `g[j]·p` in
/// `region_p` and the `b·h[j]` in `region_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceWitness {
    pub region_g: ConeKind,
    pub y0: usize,
    pub y1: usize,
    pub g: Vec<usize>,
    pub region_h: ConeKind,
    pub x0: usize,
    pub x1: usize,
    pub h: Vec<usize>,
    pub p: usize,
    pub b: usize,
    pub region_p: ConeKind,
    pub region_b: ConeKind,
    pub k: usize,
    pub i: usize,
}

impl SequenceWitness {
    pub fn replays(&self, rel: &PreferenceRelation, lab: &RegionLabeling) -> bool {
        let (se, nw) = cores(rel.space(), lab);
        let reg = |k: ConeKind| region_of(k, &se, &nw);
        let n = self.g.len().min(self.h.len());
        if n < 3 || self.k + 1 >= n || self.i >= n {
            return false;
        }
        let (rg, rh, rp, rb) = (
            reg(self.region_g),
            reg(self.region_h),
            reg(self.region_p),
            reg(self.region_b),
        );
        let g_ok = is_chain(rel, &rg, &self.g, Alt, self.y0, self.y1);
        let h_ok = is_chain(rel, &rh, &self.h, |t, x| Alt(x, t), self.x0, self.x1);
        let link = |j: usize| rel.indiff(Alt(self.g[j], self.p), Alt(self.b, self.h[j]));
        g_ok && h_ok
            && (0..n)
                .all(|j| rp.contains(Alt(self.g[j], self.p)) && rb.contains(Alt(self.b, self.h[j])))
            && link(self.k)
            && link(self.k + 1)
            && !link(self.i)
    }

    pub fn items(&self, sp: &ProductSpace) -> Vec<String> {
        let l1 = |i: usize| sp.label(Axis::One, i).to_string();
        let l2 = |i: usize| sp.label(Axis::Two, i).to_string();
        vec![
            format!("g.region={}", kind_name(self.region_g)),
            format!("g.y0={}", l2(self.y0)),
            format!("g.y1={}", l2(self.y1)),
            format!(
                "g={}",
                self.g.iter().map(|&t| l1(t)).collect::<Vec<_>>().join(",")
            ),
            format!("h.region={}", kind_name(self.region_h)),
            format!("h.x0={}", l1(self.x0)),
            format!("h.x1={}", l1(self.x1)),
            format!(
                "h={}",
                self.h.iter().map(|&t| l2(t)).collect::<Vec<_>>().join(",")
            ),
            format!("p={}", l2(self.p)),
            format!("b={}", l1(self.b)),
            format!("k={}", self.k),
            format!("i={}", self.i),
        ]
    }

    pub fn remap(&self, m1: &[usize], m2: &[usize]) -> SequenceWitness {
        SequenceWitness {
            y0: m2[self.y0],
            y1: m2[self.y1],
            g: self.g.iter().map(|&t| m1[t]).collect(),
            x0: m1[self.x0],
            x1: m1[self.x1],
            h: self.h.iter().map(|&t| m2[t]).collect(),
            p: m2[self.p],
            b: m1[self.b],
            ..self.clone()
        }
    }
}

/// `terms` is a nondegenerate standard sequence: `at(t[j], s0) ∼ at(t[j+1], s1)`,
/// all `at(t[j], s0)`, `at(t[j], s1)` in `set`, and `at(t[0], s0) ≁ at(t[0], s1)`.
fn is_chain(
    rel: &PreferenceRelation,
    set: &AltSet,
    terms: &[usize],
    at: impl Fn(usize, usize) -> Alt,
    s0: usize,
    s1: usize,
) -> bool {
    !terms.is_empty()
        && !rel.indiff(at(terms[0], s0), at(terms[0], s1))
        && terms
            .iter()
            .all(|&t| set.contains(at(t, s0)) && set.contains(at(t, s1)))
        && terms
            .windows(2)
            .all(|w| w[0] != w[1] && rel.indiff(at(w[0], s0), at(w[1], s1)))
}

struct Chain {
    region: ConeKind,
    s0: usize,
    s1: usize,
    terms: Vec<usize>,
}

/// Windows of up to `len` terms starting at every label; kept when they reach
/// `len` terms or cannot be extended, and have at least three terms.
fn chains(
    rel: &PreferenceRelation,
    sets: &[(ConeKind, AltSet)],
    m_terms: usize,
    m_steps: usize,
    at: impl Fn(usize, usize) -> Alt + Copy,
    len: usize,
    budget: &mut Budget,
) -> Option<Vec<Chain>> {
    let mut out = Vec::new();
    for (region, set) in sets {
        for s0 in 0..m_steps {
            for s1 in 0..m_steps {
                if s0 == s1 {
                    continue;
                }
                budget.spend((m_terms * m_terms) as u64).ok()?;
                let inside = |t: usize| set.contains(at(t, s0)) && set.contains(at(t, s1));
                let succ: Vec<Vec<usize>> = (0..m_terms)
                    .map(|t| {
                        if !inside(t) {
                            return Vec::new();
                        }
                        (0..m_terms)
                            .filter(|&u| u != t && inside(u) && rel.indiff(at(t, s0), at(u, s1)))
                            .collect()
                    })
                    .collect();
                for start in 0..m_terms {
                    if !inside(start) || rel.indiff(at(start, s0), at(start, s1)) {
                        continue;
                    }
                    let mut stack = vec![vec![start]];
                    while let Some(path) = stack.pop() {
                        let last = *path.last().expect("nonempty");
                        if path.len() == len || succ[last].is_empty() {
                            if path.len() >= 3 {
                                out.push(Chain {
                                    region: *region,
                                    s0,
                                    s1,
                                    terms: path,
                                });
                            }
                            continue;
                        }
                        budget.spend(succ[last].len() as u64).ok()?;
                        for &nx in succ[last].iter().rev() {
                            let mut p = path.clone();
                            p.push(nx);
                            stack.push(p);
                        }
                    }
                }
            }
        }
    }
    Some(out)
}

fn sequence_scan(
    rel: &PreferenceRelation,
    lab: &RegionLabeling,
    len: usize,
    budget: &mut Budget,
) -> Scan<SequenceWitness> {
    let s = rel.space();
    let (m1, m2) = (s.m1(), s.m2());
    let (se, nw) = cores(s, lab);
    let sets = [(ConeKind::SE, se.clone()), (ConeKind::NW, nw.clone())];
    let Some(gs) = chains(rel, &sets, m1, m2, Alt, len, budget) else {
        return Scan::Budget;
    };
    let Some(hs) = chains(rel, &sets, m2, m1, |t, x| Alt(x, t), len, budget) else {
        return Scan::Budget;
    };
    let region_all = |pts: &mut dyn Iterator<Item = Alt>| -> Option<ConeKind> {
        let pts: Vec<Alt> = pts.collect();
        sets.iter()
            .find(|(_, set)| pts.iter().all(|&x| set.contains(x)))
            .map(|(k, _)| *k)
    };
    let mut instantiated = false;
    for g in &gs {
        for h in &hs {
            let n = g.terms.len().min(h.terms.len());
            if budget.spend((m1 * m2 * n) as u64).is_err() {
                return Scan::Budget;
            }
            for p in 0..m2 {
                let Some(region_p) = region_all(&mut (0..n).map(|j| Alt(g.terms[j], p))) else {
                    continue;
                };
                for b in 0..m1 {
                    let Some(region_b) = region_all(&mut (0..n).map(|j| Alt(b, h.terms[j]))) else {
                        continue;
                    };
                    let link: Vec<bool> = (0..n)
                        .map(|j| rel.indiff(Alt(g.terms[j], p), Alt(b, h.terms[j])))
                        .collect();
                    let Some(k) = (0..n - 1).find(|&k| link[k] && link[k + 1]) else {
                        continue;
                    };
                    instantiated = true;
                    if let Some(i) = (0..n).find(|&i| !link[i]) {
                        return Scan::Found(SequenceWitness {
                            region_g: g.region,
                            y0: g.s0,
                            y1: g.s1,
                            g: g.terms[..n].to_vec(),
                            region_h: h.region,
                            x0: h.s0,
                            x1: h.s1,
                            h: h.terms[..n].to_vec(),
                            p,
                            b,
                            region_p,
                            region_b,
                            k,
                            i,
                        });
                    }
                }
            }
        }
    }
    Scan::Clean { instantiated }
}

/// Standard-sequence consequence of A5, over sequences of up to `len` terms.
pub fn check_a5_sequences(
    rel: &PreferenceRelation,
    lab: &RegionLabeling,
    len: usize,
    budget: &mut Budget,
) -> AxiomReport {
    let scan =
        |r: &PreferenceRelation, l: &RegionLabeling, b: &mut Budget| sequence_scan(r, l, len, b);
    match both_orientations(rel, lab, budget, scan) {
        (Scan::Found(seq), mirrored) => {
            AxiomReport::violated(AxiomId::A5Seq, Witness::A5Seq { mirrored, seq })
        }
        (Scan::Clean { instantiated: true }, _) => AxiomReport::new(AxiomId::A5Seq, Status::Ok),
        (
            Scan::Clean {
                instantiated: false,
            },
            _,
        ) => AxiomReport::new(AxiomId::A5Seq, Status::Vacuous),
        (Scan::Budget, _) => AxiomReport::new(AxiomId::A5Seq, Status::BudgetExceeded)
            .with_note(format!("stopped after {} tuples", budget.limit())),
    }
}
