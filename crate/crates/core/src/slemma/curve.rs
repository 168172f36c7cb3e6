//! Quadratic curves in the plane and the joint-range curves of two
//! quadratic functions along a line.

use crate::cone2d::Point2;
use crate::quadform::{restrict_line, QuadraticFunction};
use crate::symcore::{gram_schmidt, trace_inner, SymMatrix};

use super::SlemmaError;

/// `t ↦ (a0 + a1·t + a2·t², b0 + b1·t + b2·t²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadCurve2 {
    pub a: [f64; 3],
    pub b: [f64; 3],
}

impl QuadCurve2 {
    pub fn new(a: [f64; 3], b: [f64; 3]) -> Self {
        QuadCurve2 { a, b }
    }

    pub fn eval(&self, t: f64) -> Point2 {
        let p = |c: &[f64; 3]| (c[2] * t + c[1]) * t + c[0];
        [p(&self.a), p(&self.b)]
    }

    /// `cos²s · x(tan s)`, written so that it stays finite at `s = ±π/2`
    /// where it equals the leading coefficients.
    pub fn eval_compact(&self, s: f64) -> Point2 {
        let (sn, cs) = s.sin_cos();
        let p = |c: &[f64; 3]| c[0] * cs * cs + c[1] * sn * cs + c[2] * sn * sn;
        [p(&self.a), p(&self.b)]
    }

    pub fn coeff_scale(&self) -> f64 {
        self.a.iter().chain(&self.b).fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Limit directions of `x(t)/‖x(t)‖` as `t → ±∞`; coefficients at most
    /// `tol_rel` times the coefficient scale count as zero.
    pub fn recession_directions(&self, tol_rel: f64) -> Vec<Point2> {
        let small = tol_rel * self.coeff_scale();
        let quad = [self.a[2], self.b[2]];
        if quad[0].hypot(quad[1]) > small {
            return vec![quad];
        }
        let lin = [self.a[1], self.b[1]];
        if lin[0].hypot(lin[1]) > small {
            return vec![lin, [-lin[0], -lin[1]]];
        }
        vec![]
    }
}

fn check_point(n: usize, x: &[f64]) -> Result<(), SlemmaError> {
    if x.len() != n {
        return Err(SlemmaError::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(SlemmaError::NonFinite);
    }
    Ok(())
}

/// `t ↦ (g(x(t)), h(x(t)))` along `x(t) = x2 − t·(x2 − x1)`, so that
/// `t = 0` gives `x2` and `t = 1` gives `x1`.
pub fn joint_range_curve(
    g: &QuadraticFunction,
    h: &QuadraticFunction,
    x1: &[f64],
    x2: &[f64],
) -> Result<QuadCurve2, SlemmaError> {
    let n = g.dim();
    if h.dim() != n {
        return Err(SlemmaError::DimensionMismatch {
            expected: n,
            found: h.dim(),
        });
    }
    check_point(n, x1)?;
    check_point(n, x2)?;
    let d: Vec<f64> = x1.iter().zip(x2).map(|(a, b)| a - b).collect();
    if d.iter().all(|&v| v == 0.0) {
        return Ok(QuadCurve2::new([g.eval(x2)?, 0.0, 0.0], [h.eval(x2)?, 0.0, 0.0]));
    }
    let rg = restrict_line(g, x2, &d)?;
    let rh = restrict_line(h, x2, &d)?;
    Ok(QuadCurve2::new(
        [rg.gamma, rg.beta, rg.alpha],
        [rh.gamma, rh.beta, rh.alpha],
    ))
}

/// The curve `t ↦ (⟨A, X(t)⟩, ⟨B, X(t)⟩)` for `X(t) = [x(t);1][x(t);1]ᵀ`,
/// where `(A, B)` is an orthonormal basis of `span{lift g, lift h}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedCurve {
    pub curve: QuadCurve2,
    /// Orthonormal basis actually used (0, 1 or 2 matrices).
    pub basis: Vec<SymMatrix>,
    /// The span has dimension below 2; missing coordinates are zero.
    pub rank_deficient: bool,
}

/// Tolerance for dropping dependent directions from the span.
pub const TOL_RANK: f64 = 1e-10;

pub fn projected_curve(
    g: &QuadraticFunction,
    h: &QuadraticFunction,
    x1: &[f64],
    x2: &[f64],
) -> Result<ProjectedCurve, SlemmaError> {
    let n = g.dim();
    if h.dim() != n {
        return Err(SlemmaError::DimensionMismatch {
            expected: n,
            found: h.dim(),
        });
    }
    check_point(n, x1)?;
    check_point(n, x2)?;
    let basis = gram_schmidt(
        &[g.lift().into_sym(), h.lift().into_sym()],
        TOL_RANK,
    )?;
    // X(t) = G0 + t·G1 + t²·G2 with z2 = [x2; 1], d = [x2 − x1; 0]
    let mut z2 = x2.to_vec();
    z2.push(1.0);
    let mut d: Vec<f64> = x2.iter().zip(x1).map(|(a, b)| a - b).collect();
    d.push(0.0);
    let g0 = SymMatrix::rank_one(&z2)?;
    let g1 = SymMatrix::sym_outer(&z2, &d)?.scaled(-1.0);
    let g2 = SymMatrix::rank_one(&d)?;
    let coeffs = |m: Option<&SymMatrix>| -> Result<[f64; 3], SlemmaError> {
        match m {
            None => Ok([0.0; 3]),
            Some(m) => Ok([
                trace_inner(m, &g0)?,
                trace_inner(m, &g1)?,
                trace_inner(m, &g2)?,
            ]),
        }
    };
    let curve = QuadCurve2::new(coeffs(basis.first())?, coeffs(basis.get(1))?);
    Ok(ProjectedCurve {
        curve,
        rank_deficient: basis.len() < 2,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn joint_range_of_univariate_pair() {
        let g = QuadraticFunction::univariate(1.0, 0.0, 0.0).unwrap();
        let h = QuadraticFunction::univariate(0.0, 0.5, 0.0).unwrap();
        let c = joint_range_curve(&g, &h, &[1.0], &[0.0]).unwrap();
        // x(t) = t: g = t², h = t
        assert_eq!(c.a, [0.0, 0.0, 1.0]);
        assert_eq!(c.b, [0.0, 1.0, 0.0]);
        assert_eq!(c.eval(1.0), [1.0, 1.0]);
        let p = c.eval(-3.0);
        assert_eq!(p, [9.0, -3.0]);
    }

    #[test]
    fn compact_evaluation_matches_direction() {
        let c = QuadCurve2::new([1.0, -2.0, 0.5], [0.3, 1.0, -1.0]);
        for s in [-1.2_f64, -0.3, 0.0, 0.7, 1.4] {
            let p = c.eval(s.tan());
            let q = c.eval_compact(s);
            let k = s.cos().powi(2);
            assert!((p[0] * k - q[0]).abs() < 1e-12 && (p[1] * k - q[1]).abs() < 1e-12);
        }
        assert_eq!(c.eval_compact(std::f64::consts::FRAC_PI_2).map(|v| (v * 1e12).round()), [0.5e12, -1e12]);
    }

    #[test]
    fn recession() {
        let c = QuadCurve2::new([1.0, 1.0, 0.0], [0.0, 1.0, 0.0]);
        assert_eq!(c.recession_directions(1e-12), vec![[1.0, 1.0], [-1.0, -1.0]]);
        let c = QuadCurve2::new([1.0, 0.0, 0.0], [0.0, 0.0, 0.0]);
        assert!(c.recession_directions(1e-12).is_empty());
    }

    #[test]
    fn projected_curve_rank() {
        let g = QuadraticFunction::univariate(1.0, 0.0, -1.0).unwrap();
        let h = g.lin_comb(2.0, &g, 0.0).unwrap();
        let pc = projected_curve(&g, &h, &[1.0], &[0.0]).unwrap();
        assert!(pc.rank_deficient);
        assert_eq!(pc.basis.len(), 1);
        assert_eq!(pc.curve.b, [0.0; 3]);
        // ⟨A, X(t)⟩ is g(x(t)) / ‖lift g‖_F
        let nf = g.lift().as_sym().frobenius_norm();
        for t in [-1.0, 0.5, 2.0] {
            let want = g.eval(&[t]).unwrap() / nf;
            assert!((pc.curve.eval(t)[0] - want).abs() < 1e-12);
        }
    }
}
