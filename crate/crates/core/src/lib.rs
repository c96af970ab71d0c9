//! Exact computational toolkit for root lattices and weight lattices of
//! affine homogeneous spaces of reductive groups.
//!
//! The crate is organized in five layers:
//!
//! * [`lattice`] — exact integer-lattice arithmetic (Hermite/Smith normal
//!   forms, membership, quotients, annihilators, character kernels),
//! * [`rootsys`] — root systems, Weyl orbits and minimal root systems for
//!   the simple types A–G,
//! * [`liealg`] — weight systems of irreducible modules, trace forms,
//!   Dynkin indices of embeddings and the associated Diophantine systems,
//! * [`atlas`] — the classification database: Λ-essential subalgebras,
//!   root lattices Λ(g,h), weight lattices of homogeneous spaces, the
//!   duality table, and self-verification,
//! * [`weightlat`] — the iterative semiinvariant-reduction pipeline for
//!   module actions, together with two independent oracles.
//!
//! All arithmetic is exact: `i64` weight coordinates, arbitrary-precision
//! integers for lattice bases and rationals for trace forms. There is no
//! floating point anywhere in the crate.

pub mod atlas;
pub mod error;
pub mod lattice;
pub mod liealg;
pub mod ratmat;
pub mod rootsys;
pub mod weightlat;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Arbitrary-precision integer used throughout the lattice layer.
pub type Int = num::BigInt;
/// Exact rational used by trace forms and the reduction pipeline.
pub type Rat = num::BigRational;

pub(crate) fn int(v: i64) -> Int {
    Int::from(v)
}

pub(crate) fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}
