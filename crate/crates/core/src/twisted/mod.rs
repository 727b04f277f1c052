//! Twisted canonical divisors on nodal curves: the matching axioms, level
//! graphs, the global residue condition with zeroed poles, and the residue
//! linear system.
//!
//! Residues are complex, but every condition here is linear with rational
//! coefficients, so real and imaginary parts satisfy the same system and
//! [`solve_residues`] works with one rational unknown per pole.

mod compact;
mod config;
mod graph;
mod grc;

use thiserror::Error;

pub use compact::{compact_type_second_kind, restriction_codim, RestrictionCodim};
pub use config::{AxiomViolation, Pole, ResidueEntry, TwistedConfig};
pub use graph::{DualGraph, Edge, Vertex};
pub use grc::{solve_residues, zr_grc_check, GrcReport, GrcViolation, PoleValue, ResidueSolution, SOLVABILITY_CAVEAT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistedError {
    #[error("bad dual graph: {0}")]
    Graph(String),
    #[error("bad configuration: {0}")]
    Shape(String),
    #[error("levels are not a full order compatible with the node orders: {0}")]
    NotFullOrder(String),
    #[error("configuration violates {} axiom(s)", .0.len())]
    Axioms(Vec<AxiomViolation>),
    #[error("dual graph is not a tree")]
    NotATree,
    #[error("component signatures do not come from a splitting of κ: {0}")]
    InconsistentSplit(String),
}
