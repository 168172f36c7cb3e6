//! S-lemma based copositivity certification and the joint-range curves
//! used to study it.

mod certify;
mod curve;
mod lmi;

pub use certify::{
    best_xi, certify, check_slater, margin, problem_scale, BestXi, Certificate, CertifyOptions,
    CertifyReport, CopositivityVerdict, Diagnostics, IndeterminateReason, SlaterPoint,
    DEFAULT_INDETERMINATE_BAND, DEFAULT_MAX_ITER, DEFAULT_SLATER_BUDGET, DEFAULT_TOL_CERT,
    DEFAULT_TOL_SLATER, DEFAULT_XI_TOL, XI_BRACKET_CAP,
};
pub use curve::{joint_range_curve, projected_curve, ProjectedCurve, QuadCurve2, TOL_RANK};
pub use lmi::{emit_lmi, LmiRecord};

use crate::quadform::QuadError;
use crate::symcore::LinalgError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SlemmaError {
    #[error("no point with h(x) > 0 found after {budget} trials")]
    SlaterViolated { budget: usize },
    #[error("margin still increasing at xi = 2^60 (best xi {best_xi}, margin {best_margin})")]
    BracketOverflow {
        best_xi: f64,
        best_margin: f64,
        iterations: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite input")]
    NonFinite,
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
