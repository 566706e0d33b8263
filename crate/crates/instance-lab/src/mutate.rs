use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relation_model::{Alt, Cmp, PreferenceRelation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MutationOp {
    /// Reverses one strict pair.
    FlipStrict,
    /// Breaks one indifference between distinct alternatives into a strict
    /// preference.
    CollapseIndifference,
    /// Exchanges the outcomes of two pairs that compare differently.
    SwapPair,
}

impl MutationOp {
    pub const ALL: [MutationOp; 3] = [
        MutationOp::FlipStrict,
        MutationOp::CollapseIndifference,
        MutationOp::SwapPair,
    ];
}

/// One edited unordered pair; the mirror entry changes with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EditedPair {
    pub x: Alt,
    pub y: Alt,
    pub before: Cmp,
    pub after: Cmp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mutation {
    pub op: MutationOp,
    pub edits: Vec<EditedPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutateError {
    #[error("no eligible edit site for {0:?}")]
    NoSite(MutationOp),
}

/// Unordered pairs `x < y` (by id) in id order.
fn pairs(rel: &PreferenceRelation) -> Vec<(Alt, Alt)> {
    let s = rel.space();
    let n = s.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (s.alt(i), s.alt(j)))
        .collect()
}

/// Applies one minimal edit chosen by `seed` and reports where it went.
/// The result stays reflexive, complete and mirror-consistent.
pub fn mutate(
    rel: &PreferenceRelation,
    op: MutationOp,
    seed: u64,
) -> Result<(PreferenceRelation, Mutation), MutateError> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let all = pairs(rel);
    let pick = |want: &dyn Fn(Cmp) -> bool, r: &mut ChaCha8Rng| -> Option<(Alt, Alt)> {
        let sites: Vec<(Alt, Alt)> = all
            .iter()
            .copied()
            .filter(|&(x, y)| want(rel.cmp(x, y)))
            .collect();
        sites.choose(r).copied()
    };
    let edit = |x: Alt, y: Alt, after: Cmp| EditedPair {
        x,
        y,
        before: rel.cmp(x, y),
        after,
    };
    let edits = match op {
        MutationOp::FlipStrict => {
            let (x, y) = pick(&|c| c != Cmp::Indiff, &mut r).ok_or(MutateError::NoSite(op))?;
            vec![edit(x, y, rel.cmp(x, y).mirror())]
        }
        MutationOp::CollapseIndifference => {
            let (x, y) = pick(&|c| c == Cmp::Indiff, &mut r).ok_or(MutateError::NoSite(op))?;
            let after = *[Cmp::Pref, Cmp::Dispref].choose(&mut r).expect("nonempty");
            vec![edit(x, y, after)]
        }
        MutationOp::SwapPair => {
            let (x, y) = pick(&|_| true, &mut r).ok_or(MutateError::NoSite(op))?;
            let c = rel.cmp(x, y);
            let (u, v) = pick(&|d| d != c, &mut r).ok_or(MutateError::NoSite(op))?;
            vec![edit(x, y, rel.cmp(u, v)), edit(u, v, c)]
        }
    };
    let out = edits
        .iter()
        .fold(rel.clone(), |acc, e| acc.with_entry(e.x, e.y, e.after));
    Ok((out, Mutation { op, edits }))
}
