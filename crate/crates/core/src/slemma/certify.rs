//! Copositivity certification: `h(x) ≥ 0 ⇒ g(x) ≥ 0`.
//!
//! With a Slater point for `h`, the implication holds exactly when some
//! `ξ ≥ 0` makes `lift(g) − ξ·lift(h)` positive semidefinite. The margin
//! `m(ξ) = λ_min(lift(g) − ξ·lift(h))` is concave, so its maximizer is
//! bracketed by doubling and then located by golden-section search.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::quadform::{
    oracle_search, restrict_line, Counterexample, OracleOptions, QuadraticFunction,
    DEFAULT_ORACLE_BUDGET, DEFAULT_TOL_FEAS, DEFAULT_TOL_STRICT, DEFAULT_UNBOUNDED_CAP,
};
use crate::symcore::{eigen_sym, is_psd, min_eig, SymMatrix, DEFAULT_TOL_EIG};

use super::SlemmaError;

pub const DEFAULT_TOL_CERT: f64 = 1e-9;
pub const DEFAULT_INDETERMINATE_BAND: f64 = 1e-6;
pub const DEFAULT_XI_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 500;
pub const DEFAULT_SLATER_BUDGET: usize = 2000;
/// Relative threshold (times `1 + ‖lift h‖_F`) for a strictly feasible point.
pub const DEFAULT_TOL_SLATER: f64 = 1e-9;
/// Bracketing gives up once the upper end passes `2^60`.
pub const XI_BRACKET_CAP: f64 = (1u64 << 60) as f64;

/// `1 + ‖lift g‖_F + ‖lift h‖_F`, the scale for absolute tolerances.
pub fn problem_scale(g: &QuadraticFunction, h: &QuadraticFunction) -> f64 {
    1.0 + g.lift().as_sym().frobenius_norm() + h.lift().as_sym().frobenius_norm()
}

fn check_pair(g: &QuadraticFunction, h: &QuadraticFunction) -> Result<(), SlemmaError> {
    if g.dim() != h.dim() {
        return Err(SlemmaError::DimensionMismatch {
            expected: g.dim(),
            found: h.dim(),
        });
    }
    Ok(())
}

/// `λ_min(lift g − ξ·lift h)` with a unit eigenvector.
pub fn margin(
    g: &QuadraticFunction,
    h: &QuadraticFunction,
    xi: f64,
) -> Result<(f64, Vec<f64>), SlemmaError> {
    check_pair(g, h)?;
    if !xi.is_finite() {
        return Err(SlemmaError::NonFinite);
    }
    let m = g.lift().as_sym().sub_scaled(xi, h.lift().as_sym())?;
    Ok(min_eig(&m)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BestXi {
    pub xi: f64,
    pub margin: f64,
    /// Margin evaluations, bracketing included.
    pub iterations: usize,
    /// Final search interval.
    pub bracket: (f64, f64),
}

struct MarginFn {
    a: SymMatrix,
    b: SymMatrix,
    evals: usize,
    best: (f64, f64),
}

impl MarginFn {
    fn eval(&mut self, xi: f64) -> Result<f64, SlemmaError> {
        let m = self.a.sub_scaled(xi, &self.b)?;
        let v = eigen_sym(&m, DEFAULT_TOL_EIG)?.eigenvalues[0];
        self.evals += 1;
        if v > self.best.1 || (v == self.best.1 && xi < self.best.0) {
            self.best = (xi, v);
        }
        Ok(v)
    }
}

/// Maximizes the margin over `ξ ≥ 0`. The search stops when the golden
/// section interval is at most `tol·(1 + |ξ|)` wide or after `max_iter`
/// evaluations; the best sampled point is returned.
pub fn best_xi(
    g: &QuadraticFunction,
    h: &QuadraticFunction,
    tol: f64,
    max_iter: usize,
) -> Result<BestXi, SlemmaError> {
    check_pair(g, h)?;
    let mut f = MarginFn {
        a: g.lift().into_sym(),
        b: h.lift().into_sym(),
        evals: 0,
        best: (0.0, f64::NEG_INFINITY),
    };
    f.eval(0.0)?;
    let mut hi = 1.0;
    let mut m_half = f.eval(0.5)?;
    let mut m_hi = f.eval(hi)?;
    while m_hi >= m_half {
        if hi >= XI_BRACKET_CAP {
            return Err(SlemmaError::BracketOverflow {
                best_xi: f.best.0,
                best_margin: f.best.1,
                iterations: f.evals,
            });
        }
        hi *= 2.0;
        m_half = m_hi;
        m_hi = f.eval(hi)?;
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0_f64, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f.eval(c)?;
    let mut fd = f.eval(d)?;
    while b - a > tol * (1.0 + 0.5 * (a + b).abs()) && f.evals < max_iter {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f.eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f.eval(d)?;
        }
    }
    Ok(BestXi {
        xi: f.best.0,
        margin: f.best.1,
        iterations: f.evals,
        bracket: (a, b),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlaterPoint {
    pub x0: Vec<f64>,
    pub h_val: f64,
}

/// Searches for `x0` with `h(x0) > tol_slater`, trying the origin, the top
/// eigenvector of `lift h`, coordinate points and then maximizers of `h`
/// along random lines.
pub fn check_slater(h: &QuadraticFunction, budget: usize, seed: u64) -> Option<SlaterPoint> {
    let n = h.dim();
    let lh = h.lift().into_sym();
    let tol = DEFAULT_TOL_SLATER * (1.0 + lh.frobenius_norm());
    let accept = |x: Vec<f64>| -> Option<SlaterPoint> {
        let v = h.eval(&x).ok()?;
        (v > tol && x.iter().all(|c| c.is_finite())).then_some(SlaterPoint { x0: x, h_val: v })
    };
    if let Some(p) = accept(vec![0.0; n]) {
        return Some(p);
    }
    if let Ok(e) = eigen_sym(&lh, DEFAULT_TOL_EIG) {
        let z = e.vector(n);
        if z[n].abs() > 1e-8 {
            if let Some(p) = accept(z[..n].iter().map(|v| v / z[n]).collect()) {
                return Some(p);
            }
        }
        for t in [1.0, 1e2, 1e4, 1e6] {
            if let Some(p) = accept(z[..n].iter().map(|v| t * v).collect()) {
                return Some(p);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..budget {
        let scale = [1.0, 3.0, 0.3, 10.0][k % 4];
        let anchor: Vec<f64> = (0..n).map(|_| scale * rng.sample::<f64, _>(StandardNormal)).collect();
        let dir: Vec<f64> = if k < n {
            let mut e = vec![0.0; n];
            e[k] = 1.0;
            e
        } else {
            (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
        };
        let Ok(q) = restrict_line(h, &anchor, &dir) else {
            continue;
        };
        let mut ts = vec![0.0];
        if q.alpha < 0.0 {
            ts.push(-q.beta / (2.0 * q.alpha));
        } else {
            let reach = 1e3 * (1.0 + anchor.iter().map(|v| v.abs()).fold(0.0, f64::max));
            ts.extend([reach, -reach]);
        }
        for t in ts {
            let x: Vec<f64> = anchor.iter().zip(&dir).map(|(a, d)| a + t * d).collect();
            if let Some(p) = accept(x) {
                return Some(p);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifyOptions {
    /// Relative PSD tolerance for accepting a certificate.
    pub tol_cert: f64,
    /// Relative margin band below zero reported as indeterminate rather
    /// than as a likely refutation when the oracle finds nothing.
    pub indeterminate_band: f64,
    pub xi_tol: f64,
    pub max_iter: usize,
    pub oracle_budget: usize,
    pub slater_budget: usize,
    pub seed: u64,
    pub tol_feas: f64,
    pub tol_strict: f64,
    /// Known strictly feasible point; searched for when absent.
    pub x0: Option<Vec<f64>>,
    /// Proceed without a Slater point; only the direction
    /// "certificate ⇒ copositive" then remains valid.
    pub force: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            tol_cert: DEFAULT_TOL_CERT,
            indeterminate_band: DEFAULT_INDETERMINATE_BAND,
            xi_tol: DEFAULT_XI_TOL,
            max_iter: DEFAULT_MAX_ITER,
            oracle_budget: DEFAULT_ORACLE_BUDGET,
            slater_budget: DEFAULT_SLATER_BUDGET,
            seed: 0,
            tol_feas: DEFAULT_TOL_FEAS,
            tol_strict: DEFAULT_TOL_STRICT,
            x0: None,
            force: false,
        }
    }
}

/// `lift g − ξ·lift h ⪰ 0` with `ξ ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub xi: f64,
    pub margin: f64,
    pub slack: SymMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndeterminateReason {
    /// The best margin is negative but within the band of zero.
    NearBoundary,
    /// The margin is clearly negative yet no counterexample was found.
    OracleExhausted,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CopositivityVerdict {
    Certified(Certificate),
    Refuted(Counterexample),
    Indeterminate {
        xi: f64,
        margin: f64,
        reason: IndeterminateReason,
    },
}

impl CopositivityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            CopositivityVerdict::Certified(_) => "certified",
            CopositivityVerdict::Refuted(_) => "refuted",
            CopositivityVerdict::Indeterminate { .. } => "indeterminate",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostics {
    pub xi: f64,
    pub margin: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
    pub oracle_trials: usize,
    pub scale: f64,
    pub seed: u64,
    pub slater: Option<SlaterPoint>,
    /// Set when no Slater point was found and `force` was used.
    pub forced: bool,
    /// Set when bracketing overflowed (only reachable with `force`).
    pub bracket_overflow: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifyReport {
    pub verdict: CopositivityVerdict,
    pub diagnostics: Diagnostics,
}

pub fn certify(
    g: &QuadraticFunction,
    h: &QuadraticFunction,
    opts: &CertifyOptions,
) -> Result<CertifyReport, SlemmaError> {
    check_pair(g, h)?;
    let scale = problem_scale(g, h);
    let slater = match &opts.x0 {
        Some(x0) => {
            let v = h.eval(x0)?;
            let tol = DEFAULT_TOL_SLATER * (1.0 + h.lift().as_sym().frobenius_norm());
            (v > tol).then(|| SlaterPoint {
                x0: x0.clone(),
                h_val: v,
            })
        }
        None => None,
    }
    .or_else(|| check_slater(h, opts.slater_budget, opts.seed));
    if slater.is_none() && !opts.force {
        return Err(SlemmaError::SlaterViolated {
            budget: opts.slater_budget,
        });
    }
    let forced = slater.is_none();

    let (best, bracket_overflow) = match best_xi(g, h, opts.xi_tol, opts.max_iter) {
        Ok(b) => (b, false),
        Err(SlemmaError::BracketOverflow {
            best_xi,
            best_margin,
            iterations,
        }) if opts.force => (
            BestXi {
                xi: best_xi,
                margin: best_margin,
                iterations,
                bracket: (0.0, XI_BRACKET_CAP),
            },
            true,
        ),
        Err(e) => return Err(e),
    };

    let mut diagnostics = Diagnostics {
        xi: best.xi,
        margin: best.margin,
        iterations: best.iterations,
        bracket: best.bracket,
        oracle_trials: 0,
        scale,
        seed: opts.seed,
        slater,
        forced,
        bracket_overflow,
    };

    let tol_abs = opts.tol_cert * scale;
    let slack = g.lift().as_sym().sub_scaled(best.xi, h.lift().as_sym())?;
    if best.margin >= -tol_abs && is_psd(&slack, tol_abs)? {
        return Ok(CertifyReport {
            verdict: CopositivityVerdict::Certified(Certificate {
                xi: best.xi,
                margin: best.margin,
                slack,
            }),
            diagnostics,
        });
    }

    let oracle = oracle_search(
        g,
        h,
        &OracleOptions {
            budget: opts.oracle_budget,
            seed: opts.seed,
            tol_feas: opts.tol_feas,
            tol_strict: opts.tol_strict,
            unbounded_cap: DEFAULT_UNBOUNDED_CAP,
            hint_xi: Some(best.xi),
        },
    )?;
    diagnostics.oracle_trials = oracle.trials;
    let verdict = match oracle.witness {
        Some(w) => CopositivityVerdict::Refuted(w),
        None => CopositivityVerdict::Indeterminate {
            xi: best.xi,
            margin: best.margin,
            reason: if best.margin >= -opts.indeterminate_band * scale {
                IndeterminateReason::NearBoundary
            } else {
                IndeterminateReason::OracleExhausted
            },
        },
    };
    Ok(CertifyReport {
        verdict,
        diagnostics,
    })
}
