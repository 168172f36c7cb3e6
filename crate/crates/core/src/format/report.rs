use serde::{Deserialize, Serialize};

use super::FormatError;
use crate::slemma::{CertifyOptions, CertifyReport, CopositivityVerdict, IndeterminateReason};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictTag {
    Certified,
    Refuted,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleReport {
    pub x: Vec<f64>,
    pub g: f64,
    pub h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlaterReport {
    pub x0: Vec<f64>,
    pub h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub tol_cert: f64,
    pub indeterminate_band: f64,
    pub xi_tol: f64,
    pub tol_feas: f64,
    pub tol_strict: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDiagnostics {
    pub iterations: usize,
    pub bracket: [f64; 2],
    pub oracle_trials: usize,
    pub scale: f64,
    pub seed: u64,
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// JSON output of `copos certify`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictReport {
    pub verdict: VerdictTag,
    pub xi: f64,
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slater: Option<SlaterReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indeterminate_reason: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub diagnostics: VerdictDiagnostics,
}

impl VerdictReport {
    pub fn new(report: &CertifyReport, opts: &CertifyOptions, wall_time_ms: Option<f64>) -> Self {
        let d = &report.diagnostics;
        let (verdict, counterexample, indeterminate_reason) = match &report.verdict {
            CopositivityVerdict::Certified(_) => (VerdictTag::Certified, None, None),
            CopositivityVerdict::Refuted(w) => (
                VerdictTag::Refuted,
                Some(CounterexampleReport {
                    x: w.x.clone(),
                    g: w.g_val,
                    h: w.h_val,
                }),
                None,
            ),
            CopositivityVerdict::Indeterminate { reason, .. } => (
                VerdictTag::Indeterminate,
                None,
                Some(
                    match reason {
                        IndeterminateReason::NearBoundary => "margin within the indeterminate band",
                        IndeterminateReason::OracleExhausted => "no counterexample within the oracle budget",
                    }
                    .to_string(),
                ),
            ),
        };
        let mut warnings = Vec::new();
        if d.forced {
            warnings.push(
                "no strictly feasible point for h: only 'certificate implies copositive' holds".to_string(),
            );
        }
        if d.bracket_overflow {
            warnings.push("margin still increasing at xi = 2^60; best sampled xi reported".to_string());
        }
        VerdictReport {
            verdict,
            xi: d.xi,
            margin: d.margin,
            counterexample,
            slater: d.slater.as_ref().map(|s| SlaterReport {
                x0: s.x0.clone(),
                h: s.h_val,
            }),
            indeterminate_reason,
            warnings,
            diagnostics: VerdictDiagnostics {
                iterations: d.iterations,
                bracket: [d.bracket.0, d.bracket.1],
                oracle_trials: d.oracle_trials,
                scale: d.scale,
                seed: d.seed,
                tolerances: Tolerances {
                    tol_cert: opts.tol_cert,
                    indeterminate_band: opts.indeterminate_band,
                    xi_tol: opts.xi_tol,
                    tol_feas: opts.tol_feas,
                    tol_strict: opts.tol_strict,
                },
                wall_time_ms,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("finite report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Process exit status: 0 certified, 1 refuted, 2 indeterminate.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            VerdictTag::Certified => 0,
            VerdictTag::Refuted => 1,
            VerdictTag::Indeterminate => 2,
        }
    }
}
