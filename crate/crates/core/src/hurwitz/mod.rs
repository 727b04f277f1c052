//! Monodromy tuples of branched covers of the line, braid moves, Hurwitz
//! numbers and braid orbits.
//!
//! Permutations compose left to right: in `a·b` the factor `a` acts first,
//! so `(12)·(13)` sends `1 ↦ 2`, `2 ↦ 3`, `3 ↦ 1`.

mod cache;
mod enumerate;
mod examples;
mod perm;
mod tuple;

pub use cache::{cache_key, OrbitCache, CACHE_ENV, CONVENTION_VERSION};
pub use enumerate::{
    braid_orbits, conjugacy_classes, cycle_type_counts, enumerate_tuples, exists_tuple, hurwitz_number, Guard, Orbit,
    OrbitReport,
};
pub use examples::{reference_examples, ReferenceExample};
pub use perm::Perm;
pub use tuple::MonodromyTuple;

use crate::signature::ProfileError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HurwitzError {
    #[error("product of the tuple is {0}, not the identity")]
    ProductNotIdentity(String),
    #[error("the tuple does not generate a transitive group")]
    NotTransitive,
    #[error("braid index {index} out of range for a tuple of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("degree {degree} with {points} branch points exceeds the limit (degree {}, points {})", guard.max_degree, guard.max_points)]
    InstanceTooLarge { degree: usize, points: usize, guard: Guard },
    #[error("bad permutation: {0}")]
    BadPermutation(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("orbit cache: {0}")]
    Cache(String),
}
