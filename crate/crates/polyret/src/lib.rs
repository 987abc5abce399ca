//! Exact computation with lattice polytopes and their graded semigroup
//! algebras k[P].
//!
//! The crate provides:
//! - exact lattice-polytope geometry (hulls, faces, lattice points,
//!   Minkowski arithmetic, joins, widths, segment embeddings),
//! - multivariate Laurent polynomial arithmetic over the rationals with
//!   Newton polytopes and exact GCD,
//! - affine semigroups, normality and homogeneity checks, toric relations,
//! - the generators of polytopal linear groups (column vectors, elementary
//!   and toric automorphisms, polytope symmetries),
//! - segmentonomial minimal primes and binomial quotient verification,
//! - graded retraction analysis: base detection, toric and elementary
//!   corrections, the polygon tameness pipeline, and machine-checkable
//!   factorization certificates.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod error;
pub mod geometry;
pub mod groups;
pub mod ideals;
pub mod json;
pub mod laurent;
pub mod linalg;
pub mod retraction;
pub mod semigroup;

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;

use num_bigint::BigInt;

/// Shorthand for constructing a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Schema version embedded in every CLI report and certificate.
pub const SCHEMA_VERSION: &str = "1.0.0";
