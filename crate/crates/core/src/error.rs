use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid simple type {family}{rank}")]
    InvalidSimpleType { family: char, rank: usize },

    #[error("{0} has no epsilon realization (exceptional type)")]
    NotClassical(String),

    #[error("vector is not an integral weight in epsilon coordinates")]
    NonIntegralWeight,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("Weyl orbit exceeds the configured cap of {cap} elements")]
    OrbitCapExceeded { cap: usize },

    #[error("weight is not dominant")]
    NotDominant,

    #[error("reflection subgroup does not stabilize the lattice")]
    UnstableLattice,

    #[error("lattices are not nested")]
    NonNested,

    #[error("character does not vanish on the sublattice")]
    CharacterNotDefined,

    #[error("computed value {computed} differs from the stored table value {stored}")]
    TableMismatch { computed: String, stored: String },

    #[error("unrecognized subalgebra id: {0}")]
    UnrecognizedSubalgebra(String),

    #[error("table row {row} is not applicable to {what}")]
    RowNotApplicable { row: u8, what: String },

    #[error("row {0} has no nontrivial duality")]
    NoDuality(u8),

    #[error("branching is not faithful on the designated factor")]
    NotFaithful,

    #[error("module is zero")]
    ZeroModule,

    #[error("reduction exceeded the step cap of {0}")]
    StepCapExceeded(usize),

    #[error("subspace is not stable under the reduced group")]
    UnstableSubspace,

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid module realization: {0}")]
    BadRealization(String),

    #[error("verification failed: {0}")]
    Verification(String),
}
