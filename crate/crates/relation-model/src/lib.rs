//! Finite preference relations on `X = X₁ × X₂`: encoding, JSON format,
//! the induced coordinate orders, SE/NW cones, region classification and
//! essentiality.

mod altset;
mod budget;
mod io;
mod orders;
mod regions;
mod relation;
mod solvability;
mod space;
mod tc;

pub use altset::AltSet;
pub use budget::{Budget, BudgetExceeded};
pub use io::{parse_relation, relation_to_json, LoadError, RelationFile};
pub use orders::{coordinate_order, CoordinateOrders, SeparabilityWitness, WeakOrder};
pub use regions::{
    classify_regions, classify_regions_with, cone, essential_on, ClassifyError, ConeKind,
    ConeTable, RegionLabeling,
};
pub use relation::{Cmp, MergeMap, PreferenceRelation, RelationError};
pub use solvability::{solvability_gaps, SolvabilityGap};
pub use space::{Alt, Axis, ProductSpace, SpaceError};
pub use tc::{cancellation_scan, triple_cancellation, TcWitness};
