//! Text formats shared by the command-line tool: problem files, verdict
//! reports, cone specifications and vector arguments.

mod conespec;
mod problem;
mod report;

pub use conespec::{format_cone, parse_cone_spec};
pub use problem::{MatrixPayload, ProblemFile, QuadraticPayload, SYMMETRY_TOL};
pub use report::{
    CounterexampleReport, SlaterReport, Tolerances, VerdictDiagnostics, VerdictReport, VerdictTag,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error("bad cone spec {spec:?}: {reason}")]
    BadConeSpec { spec: String, reason: String },
    #[error("bad number list {0:?}")]
    BadVector(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e.to_string())
    }
}

/// Parses `"1,2.5,-3"` (spaces allowed, optional surrounding brackets).
pub fn parse_vector(s: &str) -> Result<Vec<f64>, FormatError> {
    let body = s.trim();
    let body = body
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .unwrap_or(body);
    if body.trim().is_empty() {
        return Err(FormatError::BadVector(s.to_string()));
    }
    body.split(',')
        .map(|tok| {
            let v: f64 = tok
                .trim()
                .parse()
                .map_err(|_| FormatError::BadVector(s.to_string()))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(FormatError::BadVector(s.to_string()))
            }
        })
        .collect()
}
