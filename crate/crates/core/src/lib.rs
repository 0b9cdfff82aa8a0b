//! Exact computations for higher-form symmetry algebras on triangulated
//! closed manifolds: compactly supported cohomology on star-opens with its
//! prefactorization structure, defect operators and their fusion, descent
//! checks for supportive covers, group-ring linearizations and finite
//! anomaly cocycles.
//!
//! All arithmetic is exact. The linear algebra layer is generic over
//! [`abelian::IntScalar`]; everything above it works with [`Int`].

pub mod abelian;
pub mod anomaly;
pub mod complex;
pub mod covers;
pub mod error;
pub mod homology;
pub mod symmetry;

pub use error::{Error, Result};

/// Arbitrary-precision integer used throughout the topology layers.
pub type Int = num_bigint::BigInt;
/// Integer matrix over [`Int`].
pub type IntMatrix = abelian::Matrix<Int>;
/// Smith normal form over [`Int`].
pub type IntSnf = abelian::SmithNormalForm<Int>;
