//! Export of the feasibility problem `find ξ ≥ 0 : A − ξB ⪰ 0` for external
//! SDP solvers.

use serde::{Deserialize, Serialize};

use crate::quadform::QuadraticFunction;

use super::SlemmaError;

/// Dense form of the LMI in one scalar variable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LmiRecord {
    /// Size of the matrices, `n + 1`.
    pub dim: usize,
    /// `lift(g)`, row-major.
    pub a: Vec<Vec<f64>>,
    /// `lift(h)`, row-major.
    pub b: Vec<Vec<f64>>,
    /// Human-readable statement of the constraint.
    pub constraint: String,
    pub variable_lower_bound: f64,
}

pub fn emit_lmi(g: &QuadraticFunction, h: &QuadraticFunction) -> Result<LmiRecord, SlemmaError> {
    if g.dim() != h.dim() {
        return Err(SlemmaError::DimensionMismatch {
            expected: g.dim(),
            found: h.dim(),
        });
    }
    Ok(LmiRecord {
        dim: g.dim() + 1,
        a: g.lift().as_sym().to_rows(),
        b: h.lift().as_sym().to_rows(),
        constraint: "A - xi * B is positive semidefinite, xi >= 0".into(),
        variable_lower_bound: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trips() {
        let g = QuadraticFunction::univariate(-1.0, 0.0, 4.0).unwrap();
        let h = QuadraticFunction::univariate(-1.0, 0.5, 1.0).unwrap();
        let r = emit_lmi(&g, &h).unwrap();
        assert_eq!(r.dim, 2);
        assert_eq!(r.b, vec![vec![-1.0, 0.5], vec![0.5, 1.0]]);
        let back: LmiRecord = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
