//! Cone-intersection regularity and the planar S-procedure.

use super::angular_set::{conic_hull, spherical_project, AngularSet, DEFAULT_TOL_ORIGIN};
use super::cone::{angle_of, unit, Cone2, TOL_ANG};
use super::{ConeError, Point2};

/// Whether `closure(cone(C ∩ relint K)) = closure(cone(C)) ∩ K` for the
/// homogeneous hull of a finite point set `C`.
///
/// Under this condition the dual of the intersection splits as
/// `(cone(C) ∩ K)* = C* + K*`.
pub fn regularity_check(points: &[Point2], k: &Cone2, tol: f64) -> bool {
    let hull = conic_hull(&spherical_project(points, DEFAULT_TOL_ORIGIN, 0.0), TOL_ANG);
    regularity_check_cone(&hull, k, tol)
}

/// [`regularity_check`] for a set already described by its closed conic hull.
pub fn regularity_check_cone(hull: &Cone2, k: &Cone2, tol: f64) -> bool {
    let meet = hull.intersect(k);
    let through_interior = if k.meets_relative_interior(&meet, tol) {
        meet
    } else {
        Cone2::Zero
    };
    through_interior.approx_eq(&meet, tol)
}

/// Linear form `x ↦ ⟨coef, x⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearForm2(pub [f64; 2]);

impl LinearForm2 {
    pub fn eval(&self, x: Point2) -> f64 {
        self.0[0] * x[0] + self.0[1] * x[1]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SProcedure2d {
    /// Least `ξ ≥ 0` with `ψ − ξφ ≥ 0` on the set.
    Multiplier(f64),
    /// Unit direction in the conic hull with `φ ≥ 0` and `ψ < 0`.
    Infeasible { witness: Point2 },
}

/// Planar S-procedure: for `φ` strictly positive somewhere on `C`, decides
/// whether `ψ ≥ 0` on `cone(C) ∩ {φ ≥ 0}`, returning the least multiplier
/// or a violating direction.
pub fn sprocedure_2d(
    c: &AngularSet,
    psi: LinearForm2,
    phi: LinearForm2,
    tol: f64,
) -> Result<SProcedure2d, ConeError> {
    if !(psi.0.iter().chain(phi.0.iter()).all(|v| v.is_finite()) && tol.is_finite()) {
        return Err(ConeError::NonFinite);
    }
    if max_on_arcs(c, phi) <= tol {
        return Err(ConeError::SlaterViolated);
    }
    let hull = conic_hull(c, TOL_ANG);
    let (mut lo, mut hi) = (0.0_f64, f64::INFINITY);
    let mut blocked = false;
    for u in hull.generators() {
        let (p, s) = (phi.eval(u), psi.eval(u));
        if p > tol {
            hi = hi.min(s / p);
        } else if p < -tol {
            lo = lo.max(s / p);
        } else if s < -tol {
            blocked = true;
        }
    }
    if !blocked && lo <= hi + tol * (1.0 + hi.abs().min(1.0 / tol)) {
        return Ok(SProcedure2d::Multiplier(lo));
    }
    let phi_dir = angle_of(phi.0);
    let feasible = hull.intersect(&Cone2::halfplane(phi_dir));
    let witness = feasible
        .generators()
        .into_iter()
        .min_by(|a, b| psi.eval(*a).total_cmp(&psi.eval(*b)))
        .unwrap_or_else(|| unit(phi_dir));
    Ok(SProcedure2d::Infeasible { witness })
}

/// Largest value of a linear form on the unit directions of `set`.
fn max_on_arcs(set: &AngularSet, f: LinearForm2) -> f64 {
    let norm = f.0[0].hypot(f.0[1]);
    if norm == 0.0 {
        return 0.0;
    }
    let peak = angle_of(f.0);
    set.arcs()
        .iter()
        .map(|a| {
            if a.distance(peak) == 0.0 {
                norm
            } else {
                f.eval(unit(a.start)).max(f.eval(unit(a.end())))
            }
        })
        .fold(f64::NEG_INFINITY, f64::max)
}
