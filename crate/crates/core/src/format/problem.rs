use serde::{Deserialize, Serialize};

use super::FormatError;
use crate::quadform::QuadraticFunction;
use crate::symcore::SymMatrix;

/// Largest accepted asymmetry of `Q`, relative to its largest entry.
pub const SYMMETRY_TOL: f64 = 1e-8;

/// `Q` either as rows or flattened row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixPayload {
    Rows(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

/// `xᵀQx + 2ℓᵀx + c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticPayload {
    #[serde(rename = "Q")]
    pub q: MatrixPayload,
    pub l: Vec<f64>,
    pub c: f64,
}

/// Input of `copos certify`: the implication `h(x) ≥ 0 ⇒ g(x) ≥ 0` on `Rⁿ`,
/// optionally with a known point where `h > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    pub g: QuadraticPayload,
    pub h: QuadraticPayload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

impl QuadraticPayload {
    pub fn from_function(f: &QuadraticFunction) -> Self {
        QuadraticPayload {
            q: MatrixPayload::Rows(f.q().to_rows()),
            l: f.l().to_vec(),
            c: f.c(),
        }
    }

    fn to_function(&self, n: usize, name: &str) -> Result<QuadraticFunction, FormatError> {
        let flat: Vec<f64> = match &self.q {
            MatrixPayload::Rows(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(invalid(format!("{name}.Q must be {n}x{n}")));
                }
                rows.concat()
            }
            MatrixPayload::Flat(v) => {
                if Some(v.len()) != n.checked_mul(n) {
                    return Err(invalid(format!("{name}.Q must have {n}x{n} entries")));
                }
                v.clone()
            }
        };
        if self.l.len() != n {
            return Err(invalid(format!("{name}.l must have {n} entries")));
        }
        if flat.iter().chain(&self.l).any(|v| !v.is_finite()) || !self.c.is_finite() {
            return Err(invalid(format!("{name} has non-finite coefficients")));
        }
        let q = SymMatrix::from_row_major(n, &flat, SYMMETRY_TOL)
            .map_err(|e| invalid(format!("{name}.Q: {e}")))?;
        QuadraticFunction::new(q, self.l.clone(), self.c).map_err(|e| invalid(format!("{name}: {e}")))
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let p: ProblemFile = serde_json::from_str(text)?;
        p.validate()?;
        Ok(p)
    }

    pub fn from_functions(g: &QuadraticFunction, h: &QuadraticFunction, x0: Option<Vec<f64>>) -> Self {
        ProblemFile {
            n: g.dim(),
            g: QuadraticPayload::from_function(g),
            h: QuadraticPayload::from_function(h),
            x0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn validate(&self) -> Result<(), FormatError> {
        self.functions().map(|_| ())
    }

    /// `(g, h)` with `Q` symmetrized by averaging.
    pub fn functions(&self) -> Result<(QuadraticFunction, QuadraticFunction), FormatError> {
        if self.n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        let g = self.g.to_function(self.n, "g")?;
        let h = self.h.to_function(self.n, "h")?;
        if let Some(x0) = &self.x0 {
            if x0.len() != self.n || x0.iter().any(|v| !v.is_finite()) {
                return Err(invalid(format!("x0 must have {} finite entries", self.n)));
            }
        }
        Ok((g, h))
    }
}
