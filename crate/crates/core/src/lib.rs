//! Divisor classes of zero-residue strata on moduli spaces of pointed
//! curves, their positivity certificates, flat-surface residue forms,
//! twisted differentials, and braid orbits of monodromy tuples.
//!
//! The class calculus is generic over [`scalar::Scalar`]; the aliases below
//! fix the exact rational instantiation used by the CLI and the tests.

pub mod scalar;
pub mod linalg;
pub mod signature;
pub mod picard;
pub mod curves;
pub mod flatgeom;
pub mod twisted;
pub mod hurwitz;
pub mod serial;
pub mod fixtures;

pub use picard::{BoundaryIndex, DivisorClass, EdgeLabeledGraph, Generator, PicardError, PicardSpace};
pub use signature::{HypothesisVerdict, Partition, ProfileError, RamificationProfile, Signature, SignatureError};

/// Exact rationals with arbitrary precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// A divisor class with exact rational coefficients.
pub type Class = DivisorClass<Rational>;

/// Shorthand for an integer as an exact rational.
pub fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}
