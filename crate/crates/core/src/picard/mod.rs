//! Divisor classes on `M̄_{g,n}`: generators, relations, the zero-residue
//! class formulas, gluing pullbacks and boundary restrictions.

mod boundary;
mod class;
mod formulas;
mod keel;
mod pullback;
mod relations;
mod restriction;

use thiserror::Error;

pub use boundary::{all_boundary, full_mask, has, mask_of, members, BoundaryIndex, Mask, MAX_MARKINGS};
pub use class::{generators, DivisorClass, Generator};
pub use formulas::{
    boundary_effective_witness, class_for_signature, dcor_class, full_signature, zr_class,
    zr_div_i, zr_div_i_raw, zr_div_ii, zr_div_ii_raw, BoundaryWitness, ZrShape,
};
pub use keel::{basis_graphs, keel_graph_class, EdgeLabeledGraph};
pub use pullback::{induction_source, pullback_glue};
pub use relations::{equals_mod_relations, normal_form, relation_classes, PicardSpace};
pub use restriction::{n_st, zr_restriction, RestrictionSide, ZrRestriction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicardError {
    #[error("marking {marking} is outside 1..={n}")]
    MarkingOutOfRange { marking: u32, n: u32 },
    #[error("δ_{{{i}:{set:?}}} is not a boundary divisor of M̄_{{{g},{n}}}")]
    InvalidBoundary { g: u32, n: u32, i: u32, set: Vec<u32> },
    #[error("classes live on different moduli spaces")]
    DimensionMismatch,
    #[error("λ and δ_0 must vanish in genus zero")]
    GenusZeroLambda,
    #[error("signature has the wrong shape: {0}")]
    SignatureShape(String),
    #[error("the zero-residue stratum is empty")]
    EmptyStratum,
    #[error("entries sum to {0}, expected 0")]
    SumNonzero(i64),
    #[error("need at least {needed} markings, got {n}")]
    TooFewMarkings { needed: u32, n: u32 },
}
