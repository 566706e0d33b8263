use relation_model::{
    Alt, AltSet, Axis, ConeKind, CoordinateOrders, PreferenceRelation, ProductSpace,
    RegionLabeling, SeparabilityWitness, TcWitness,
};
use serde::{Serialize, Serializer};

use crate::a5::{A5Tuple, SequenceWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    A1,
    A2,
    Struct,
    Tc,
    A3,
    Regions,
    A4,
    A5,
    A5Seq,
    A6,
    A7,
    A8,
    A9,
}

impl AxiomId {
    pub fn name(self) -> &'static str {
        match self {
            AxiomId::A1 => "A1",
            AxiomId::A2 => "A2",
            AxiomId::Struct => "STRUCT",
            AxiomId::Tc => "TC",
            AxiomId::A3 => "A3",
            AxiomId::Regions => "REGIONS",
            AxiomId::A4 => "A4",
            AxiomId::A5 => "A5",
            AxiomId::A5Seq => "A5-SEQ",
            AxiomId::A6 => "A6",
            AxiomId::A7 => "A7",
            AxiomId::A8 => "A8",
            AxiomId::A9 => "A9",
        }
    }
}

impl Serialize for AxiomId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Vacuous,
    Violated,
    BudgetExceeded,
    /// Not run because a prerequisite failed.
    Skipped,
    /// Informational finding that does not count as a violation.
    Diagnostic,
}

/// Which membership pattern of A4 was instantiated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum A4Clause {
    /// All eight points in `region`.
    #[serde(rename = "a")]
    Single,
    /// `ap, bq, ar, bs` in `region`, `cp, dq, cr, ds` in the other one.
    #[serde(rename = "b")]
    SplitColumns,
    /// `ap, bq, cp, dq` in `region`, `ar, bs, cr, ds` in the other one.
    #[serde(rename = "c")]
    SplitRows,
}

/// Evidence of a violation. Labels are indices into the relation's space;
/// `mirrored` witnesses refer to the transposed relation.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// `x ≽ y`, `y ≽ z`, not `x ≽ z`.
    Transitivity {
        x: Alt,
        y: Alt,
        z: Alt,
    },
    Separability(SeparabilityWitness),
    /// `a·p ∼ b·p` for every `p` on the other axis.
    Duplicate {
        axis: Axis,
        a: usize,
        b: usize,
    },
    /// Triple cancellation fails inside the given set (caller supplied).
    Cancellation(TcWitness),
    /// Both cones at `z` fail triple cancellation.
    A3 {
        z: Alt,
        se: TcWitness,
        nw: TcWitness,
    },
    /// `z` is in neither region.
    Uncovered {
        z: Alt,
    },
    A4 {
        clause: A4Clause,
        region: ConeKind,
        tuple: TcWitness,
    },
    A5 {
        mirrored: bool,
        tuple: A5Tuple,
    },
    A5Seq {
        mirrored: bool,
        seq: SequenceWitness,
    },
    /// `ap ≻ bp` and `cq ≻ dq` but not `cp ≻ dp`, with `ap, bp, cp, dp` in
    /// `region`.
    BiIndependence {
        mirrored: bool,
        region: ConeKind,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        p: usize,
        q: usize,
    },
    /// Axes on which no strict comparison exists with the other label fixed.
    Inessential {
        axis1: bool,
        axis2: bool,
    },
}

/// Sets a region-based checker scans: each region without its extreme Θ points.
pub(crate) fn cores(space: &ProductSpace, lab: &RegionLabeling) -> (AltSet, AltSet) {
    (
        lab.core_set(space, ConeKind::SE),
        lab.core_set(space, ConeKind::NW),
    )
}

pub(crate) fn region_of(kind: ConeKind, se: &AltSet, nw: &AltSet) -> AltSet {
    match kind {
        ConeKind::SE => se.clone(),
        ConeKind::NW => nw.clone(),
    }
}

impl Witness {
    /// Re-checks the violation against `rel` (and `lab` for region-based
    /// axioms). Returns false if the witness does not exhibit a violation.
    pub fn replays(&self, rel: &PreferenceRelation, lab: Option<&RegionLabeling>) -> bool {
        match self {
            Witness::Transitivity { x, y, z } => {
                rel.ge(*x, *y) && rel.ge(*y, *z) && !rel.ge(*x, *z)
            }
            Witness::Separability(w) => w.replays(rel),
            Witness::Duplicate { axis, a, b } => {
                a != b
                    && (0..rel.space().size(axis.other())).all(|p| match axis {
                        Axis::One => rel.indiff(Alt(*a, p), Alt(*b, p)),
                        Axis::Two => rel.indiff(Alt(p, *a), Alt(p, *b)),
                    })
            }
            Witness::Cancellation(w) => w.replays(rel, &AltSet::full(rel.space())),
            Witness::A3 { z, se, nw } => match CoordinateOrders::of(rel) {
                Ok(o) => {
                    se.replays(rel, &o.cone(rel.space(), *z, ConeKind::SE))
                        && nw.replays(rel, &o.cone(rel.space(), *z, ConeKind::NW))
                }
                Err(_) => false,
            },
            Witness::Uncovered { z } => match lab {
                Some(l) => !l.in_se(*z) && !l.in_nw(*z),
                None => {
                    // Classification runs on the relation with duplicate
                    // labels merged, as in the suite.
                    let (merged, map) = rel.merge_duplicates();
                    let zm = Alt(map.axis1[z.0], map.axis2[z.1]);
                    matches!(
                        relation_model::classify_regions_with(&merged, &mut relation_model::Budget::unlimited()),
                        Err(relation_model::ClassifyError::Uncovered { z: u, .. }) if u == zm
                    )
                }
            },
            Witness::A4 {
                clause,
                region,
                tuple,
            } => {
                let Some(lab) = lab else { return false };
                let (se, nw) = cores(rel.space(), lab);
                let first = region_of(*region, &se, &nw);
                let second = region_of(region.other(), &se, &nw);
                let ess = lab.essential(*region);
                let sides = match clause {
                    A4Clause::Single => [&first, &first, &first, &first],
                    A4Clause::SplitColumns if ess[1] => [&first, &first, &second, &second],
                    A4Clause::SplitRows if ess[0] => [&first, &second, &first, &second],
                    _ => return false,
                };
                tuple.replays_sides(rel, sides)
            }
            Witness::A5 { mirrored, tuple } => {
                let Some(lab) = lab else { return false };
                with_orientation(*mirrored, rel, lab, |r, l| tuple.replays(r, l))
            }
            Witness::A5Seq { mirrored, seq } => {
                let Some(lab) = lab else { return false };
                with_orientation(*mirrored, rel, lab, |r, l| seq.replays(r, l))
            }
            Witness::BiIndependence {
                mirrored,
                region,
                a,
                b,
                c,
                d,
                p,
                q,
            } => {
                let Some(lab) = lab else { return false };
                with_orientation(*mirrored, rel, lab, |r, l| {
                    let (se, nw) = cores(r.space(), l);
                    let reg = region_of(*region, &se, &nw);
                    let (ap, bp, cp, dp) = (Alt(*a, *p), Alt(*b, *p), Alt(*c, *p), Alt(*d, *p));
                    [ap, bp, cp, dp].iter().all(|&x| reg.contains(x))
                        && r.gt(ap, bp)
                        && r.gt(Alt(*c, *q), Alt(*d, *q))
                        && !r.gt(cp, dp)
                })
            }
            Witness::Inessential { axis1, axis2 } => {
                let s = rel.space();
                let strict_on = |axis: Axis| {
                    s.alts().any(|x| {
                        s.alts()
                            .any(|y| x.coord(axis.other()) == y.coord(axis.other()) && rel.gt(x, y))
                    })
                };
                (*axis1 || *axis2)
                    && (!axis1 || !strict_on(Axis::One))
                    && (!axis2 || !strict_on(Axis::Two))
            }
        }
    }

    /// Human-readable `role=value` items.
    pub fn items(&self, space: &ProductSpace) -> Vec<String> {
        let l1 = |a: usize, sp: &ProductSpace| sp.label(Axis::One, a).to_string();
        let l2 = |p: usize, sp: &ProductSpace| sp.label(Axis::Two, p).to_string();
        let tspace = space.transposed();
        let sp_for = |mirrored: bool| if mirrored { &tspace } else { space };
        let tc_items = |w: &TcWitness, sp: &ProductSpace, prefix: &str| {
            vec![
                format!("{prefix}a={}", l1(w.a, sp)),
                format!("{prefix}b={}", l1(w.b, sp)),
                format!("{prefix}c={}", l1(w.c, sp)),
                format!("{prefix}d={}", l1(w.d, sp)),
                format!("{prefix}p={}", l2(w.p, sp)),
                format!("{prefix}q={}", l2(w.q, sp)),
                format!("{prefix}r={}", l2(w.r, sp)),
                format!("{prefix}s={}", l2(w.s, sp)),
            ]
        };
        let kind = |k: ConeKind| match k {
            ConeKind::SE => "SE",
            ConeKind::NW => "NW",
        };
        match self {
            Witness::Transitivity { x, y, z } => vec![
                format!("x={}", space.show(*x)),
                format!("y={}", space.show(*y)),
                format!("z={}", space.show(*z)),
            ],
            Witness::Separability(w) => {
                let sp = if w.axis == Axis::One { space } else { &tspace };
                vec![
                    format!("axis={}", w.axis.number()),
                    format!("a={}", l1(w.a, sp)),
                    format!("b={}", l1(w.b, sp)),
                    format!("p={}", l2(w.c, sp)),
                    format!("q={}", l2(w.d, sp)),
                ]
            }
            Witness::Duplicate { axis, a, b } => vec![
                format!("axis={}", axis.number()),
                format!("a={}", space.label(*axis, *a)),
                format!("b={}", space.label(*axis, *b)),
            ],
            Witness::Cancellation(w) => tc_items(w, space, ""),
            Witness::A3 { z, se, nw } => {
                let mut v = vec![format!("z={}", space.show(*z))];
                v.extend(tc_items(se, space, "SE."));
                v.extend(tc_items(nw, space, "NW."));
                v
            }
            Witness::Uncovered { z } => vec![format!("z={}", space.show(*z))],
            Witness::A4 {
                clause,
                region,
                tuple,
            } => {
                let c = match clause {
                    A4Clause::Single => "a",
                    A4Clause::SplitColumns => "b",
                    A4Clause::SplitRows => "c",
                };
                let mut v = vec![format!("clause={c}"), format!("region={}", kind(*region))];
                v.extend(tc_items(tuple, space, ""));
                v
            }
            Witness::A5 { mirrored, tuple } => {
                let mut v = vec![format!("mirrored={mirrored}")];
                v.extend(tuple.items(sp_for(*mirrored)));
                v
            }
            Witness::A5Seq { mirrored, seq } => {
                let mut v = vec![format!("mirrored={mirrored}")];
                v.extend(seq.items(sp_for(*mirrored)));
                v
            }
            Witness::BiIndependence {
                mirrored,
                region,
                a,
                b,
                c,
                d,
                p,
                q,
            } => {
                let sp = sp_for(*mirrored);
                vec![
                    format!("mirrored={mirrored}"),
                    format!("region={}", kind(*region)),
                    format!("a={}", l1(*a, sp)),
                    format!("b={}", l1(*b, sp)),
                    format!("c={}", l1(*c, sp)),
                    format!("d={}", l1(*d, sp)),
                    format!("p={}", l2(*p, sp)),
                    format!("q={}", l2(*q, sp)),
                ]
            }
            Witness::Inessential { axis1, axis2 } => {
                let mut v = Vec::new();
                if *axis1 {
                    v.push("inessential=1".to_string());
                }
                if *axis2 {
                    v.push("inessential=2".to_string());
                }
                v
            }
        }
    }

    /// Rewrites label indices through `m1`/`m2` (index maps on each axis of
    /// the unmirrored space).
    pub fn remap(&self, m1: &[usize], m2: &[usize]) -> Witness {
        let alt = |x: Alt| Alt(m1[x.0], m2[x.1]);
        let tc = |w: &TcWitness, f1: &[usize], f2: &[usize]| TcWitness {
            a: f1[w.a],
            b: f1[w.b],
            c: f1[w.c],
            d: f1[w.d],
            p: f2[w.p],
            q: f2[w.q],
            r: f2[w.r],
            s: f2[w.s],
        };
        let pick = |mirrored: bool| if mirrored { (m2, m1) } else { (m1, m2) };
        match self {
            Witness::Transitivity { x, y, z } => Witness::Transitivity {
                x: alt(*x),
                y: alt(*y),
                z: alt(*z),
            },
            Witness::Separability(w) => {
                let (f1, f2) = pick(w.axis == Axis::Two);
                Witness::Separability(SeparabilityWitness {
                    axis: w.axis,
                    a: f1[w.a],
                    b: f1[w.b],
                    c: f2[w.c],
                    d: f2[w.d],
                })
            }
            Witness::Duplicate { axis, a, b } => {
                let f = if *axis == Axis::One { m1 } else { m2 };
                Witness::Duplicate {
                    axis: *axis,
                    a: f[*a],
                    b: f[*b],
                }
            }
            Witness::Cancellation(w) => Witness::Cancellation(tc(w, m1, m2)),
            Witness::A3 { z, se, nw } => Witness::A3 {
                z: alt(*z),
                se: tc(se, m1, m2),
                nw: tc(nw, m1, m2),
            },
            Witness::Uncovered { z } => Witness::Uncovered { z: alt(*z) },
            Witness::A4 {
                clause,
                region,
                tuple,
            } => Witness::A4 {
                clause: *clause,
                region: *region,
                tuple: tc(tuple, m1, m2),
            },
            Witness::A5 { mirrored, tuple } => {
                let (f1, f2) = pick(*mirrored);
                Witness::A5 {
                    mirrored: *mirrored,
                    tuple: tuple.remap(f1, f2),
                }
            }
            Witness::A5Seq { mirrored, seq } => {
                let (f1, f2) = pick(*mirrored);
                Witness::A5Seq {
                    mirrored: *mirrored,
                    seq: seq.remap(f1, f2),
                }
            }
            Witness::BiIndependence {
                mirrored,
                region,
                a,
                b,
                c,
                d,
                p,
                q,
            } => {
                let (f1, f2) = pick(*mirrored);
                Witness::BiIndependence {
                    mirrored: *mirrored,
                    region: *region,
                    a: f1[*a],
                    b: f1[*b],
                    c: f1[*c],
                    d: f1[*d],
                    p: f2[*p],
                    q: f2[*q],
                }
            }
            Witness::Inessential { .. } => self.clone(),
        }
    }
}

pub(crate) fn with_orientation(
    mirrored: bool,
    rel: &PreferenceRelation,
    lab: &RegionLabeling,
    f: impl FnOnce(&PreferenceRelation, &RegionLabeling) -> bool,
) -> bool {
    if mirrored {
        f(&rel.transposed(), &lab.transposed())
    } else {
        f(rel, lab)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Free-form detail (counts, reasons for skipping, budget used).
    pub note: Option<String>,
}

impl AxiomReport {
    pub fn new(axiom: AxiomId, status: Status) -> Self {
        AxiomReport {
            axiom,
            status,
            witness: None,
            note: None,
        }
    }

    pub fn violated(axiom: AxiomId, witness: Witness) -> Self {
        AxiomReport {
            axiom,
            status: Status::Violated,
            witness: Some(witness),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_violation(&self) -> bool {
        self.status == Status::Violated
    }

    /// JSON object `{"axiom", "status", "witness", "note"?}`.
    pub fn to_json(&self, space: &ProductSpace) -> serde_json::Value {
        let mut obj = serde_json::json!({
            "axiom": self.axiom,
            "status": self.status,
            "witness": self.witness.as_ref().map(|w| w.items(space)),
        });
        if let Some(n) = &self.note {
            obj["note"] = serde_json::Value::String(n.clone());
        }
        obj
    }
}
