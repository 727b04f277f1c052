//! F-curves, test curves and positivity certificates on `M̄_{0,n}`.

mod fcurve;
mod nef;
mod testcurve;

use thiserror::Error;

use crate::picard::PicardError;

pub use fcurve::{enumerate_fcurves, is_fnef, pair_fcurve, FCurve, FCurvePairing, FNefReport};
pub use nef::{nef_certificate, CertNode, NefCertificate, RestrictionCert, FNEF_LIMIT};
pub use testcurve::{lowered_pole, pair_test_curve_last_point, pair_test_curve_tail, tail_curve_intersection};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Picard(#[from] PicardError),
    #[error("expected a genus zero class, got genus {0}")]
    NotGenusZero(u32),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("certificate fails at {d:?} below {path:?}: {reason}")]
    RecursionFailure { path: Vec<Vec<u32>>, d: Vec<i64>, reason: String },
}
