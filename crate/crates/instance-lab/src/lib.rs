//! Synthetic instances with known value functions and capacity, mutation
//! operators for negative tests, and the necessity harness.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64`, so every
//! instance is a deterministic function of its spec.

mod generate;
mod mutate;
mod necessity;

pub use generate::{
    identified_spec, induce, regime_spec, GeneratorSpec, Instance, Regime, SpecError, ValueMode,
    DESIGN_PAIRS, RNG,
};
pub use mutate::{mutate, EditedPair, MutateError, Mutation, MutationOp};
pub use necessity::{
    fit_resolver, necessity_run, necessity_run_with, witnesses_replay, Failure, NecessityOptions,
    NecessitySummary,
};
