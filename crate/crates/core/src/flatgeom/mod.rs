//! Infinite zippered rectangle charts for meromorphic strata and the linear
//! forms giving residues in period coordinates.
//!
//! A chart glues basic domains `D_i^±` (one run of `d_k - d_{k-1}` of them per
//! non-simple pole) and `C_i^±` (one per simple pole) along saddle
//! connections `v_1, ..., v_n`. Residues are integer combinations of the
//! `v_j`; the overall factor `1/2πi` is dropped.

mod chart;

pub use chart::{coordinate_count, ChartData, ChartError, Domain, PoleKind, ResidueForm};
