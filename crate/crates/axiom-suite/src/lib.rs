//! Checkers for the axioms of the two-factor Choquet representation.
//!
//! Every checker returns an [`AxiomReport`]. A `violated` report always
//! carries a [`Witness`] that replays against the relation it came from;
//! scans run in a fixed lexicographic order, so the witness is the first one
//! found and is reproducible.

mod a4;
mod a5;
mod basic;
mod cones;
mod report;
mod suite;

pub use a4::check_a4;
pub use a5::{check_a5, check_a5_sequences, A5Tuple, SequenceWitness};
pub use basic::{
    check_archimedean, check_bi_independence, check_essentiality, check_solvability,
    check_structural, check_weak_order, check_weak_separability,
};
pub use cones::{check_a3, check_regions, check_triple_cancellation};
pub use report::{A4Clause, AxiomId, AxiomReport, Status, Witness};
pub use suite::{check_all, check_all_with, CheckConfig, CheckOutcome, Resolver};
