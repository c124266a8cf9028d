//! Finite sites and their sheaf toposes.
//!
//! A finite category is given by a composition table. On top of it this crate
//! computes sieves and their Heyting operations, Grothendieck topologies
//! (generated, dense, De Morgan, enumerated), subpresheaves with their
//! closure operators, and the reduced site from which Booleanization,
//! DeMorganization and the Boolean and De Morgan verdicts for `Sh(C, J)` are
//! read off.

pub mod bitset;
pub mod fincat;
pub mod fixtures;
pub mod format;
pub mod oracle;
pub mod presheaf;
pub mod reduct;
pub mod sieve;
pub mod topology;

pub use fincat::{
    is_groupoid, opposite, satisfies_right_ore, validate_category, ArrowDecl, ArrowId,
    CategoryDescription, CategoryError, CompositeEntry, FiniteCategory, ObjectId,
};
pub use format::{PresheafFile, Report, SieveFile, SubpresheafFile, TopologyFile, Witness};
pub use presheaf::{yoneda, Presheaf, PresheafError, Subpresheaf};
pub use reduct::{
    analyze, boolean_witness, booleanization, booleanization_by_generation, de_morgan_witness,
    demorganization, demorganization_by_generation,
    extend_topology, is_boolean, is_de_morgan, reduced_subcategory, restrict_topology,
    FullSubcategory, ReducedSite, ReductError,
};
pub use sieve::{Sieve, SieveError};
pub use topology::{
    de_morgan_topology, dense_topology, effective_epimorphic, generate_topology,
    trivial_topology, universally_effective_epimorphic, AxiomViolation, GrothendieckTopology,
    TopologyError,
};

/// Any error the crate can report.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Sieve(#[from] SieveError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Presheaf(#[from] PresheafError),
    #[error(transparent)]
    Reduct(#[from] ReductError),
}
