//! Fitting value functions and a two-criterion capacity to a finite
//! preference relation, and checking the result pair by pair.
//!
//! The constructive route fits additive values on cones, joins them into
//! region scales, aligns the regions, and reads the capacity off the scale
//! parameters. A joint search over the value functions and the weights,
//! followed by an LP at fixed weights, turns that starting point into an
//! exact representation.

mod align;
mod capacity;
mod cone;
mod extremes;
mod fit;
mod fm;
mod join;
mod one_essential;
mod refine;
mod representation;
mod system;
mod verify;

pub use align::{align_regions, reference_pair, AlignError, Alignment};
pub use capacity::{
    extract_capacity, k_of, lambda_of, uniqueness_case, Essentials, ExtractError, CASE_TOL,
};
pub use cone::{
    cone_system, fit_cone_additive, region_cones, sorted_members, AdditiveCone, ConeSystem,
    InfeasibleCone,
};
pub use extremes::{extend_extremes, PartialValues};
pub use fit::{
    fit, fit_additive, pipeline, weak_order_violation, Diagnosis, Fit, FitConfig, FitPath,
    PipelineStart, Stage,
};
pub use fm::{fm_feasible, FmError};
pub use join::{join_cones, JoinError, RegionScale};
pub use one_essential::{
    fit_lattice, fit_one_essential, lattice_values, levels, profile_weights, Lattice,
};
pub use refine::{chain, convex_concave, polish, search, Solution, Weight};
pub use representation::{resolved_labeling, RepError, Representation};
pub use system::{lp_solve, satisfies, HomSystem, Row, Sense};
pub use verify::{implied, verify, Agreement, Disagreement};
