//! Canonical closed convex cones in the plane.
//!
//! Every closed convex cone in R² is `{0}`, a ray, a line, a wedge of opening
//! at most π (π being a closed halfplane) or the whole plane. Intersection and
//! sum are computed on the circle of directions, so both reduce to arc
//! arithmetic followed by [`conic_hull`].

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use super::angular_set::{conic_hull, Arc, AngularSet};
use super::{ConeError, Point2};

/// Tolerance for canonical angle comparisons.
pub const TOL_ANG: f64 = 1e-12;

/// Reduces an angle to `[0, 2π)`.
#[inline]
pub fn wrap_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `a − b` reduced to `(−π, π]`.
#[inline]
pub fn signed_angle_diff(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// Distance on the unit circle between two angles.
#[inline]
pub fn angle_dist(a: f64, b: f64) -> f64 {
    signed_angle_diff(a, b).abs()
}

#[inline]
pub fn unit(theta: f64) -> Point2 {
    [theta.cos(), theta.sin()]
}

#[inline]
pub fn angle_of(p: Point2) -> f64 {
    wrap_angle(p[1].atan2(p[0]))
}

/// An angle canonicalized to `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub fn new(theta: f64) -> Self {
        Angle(wrap_angle(theta))
    }

    pub fn from_degrees(deg: f64) -> Self {
        Self::new(deg.to_radians())
    }

    #[inline]
    pub fn rad(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    pub fn approx_eq(self, other: Angle, tol: f64) -> bool {
        angle_dist(self.0, other.0) <= tol
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cone2 {
    Zero,
    /// `{τ·u(θ) : τ ≥ 0}`.
    Ray(Angle),
    /// The line through `u(θ)`, with `θ ∈ [0, π)`.
    Line(Angle),
    /// Directions `[start, start + width]` counterclockwise, `0 < width ≤ π`.
    Wedge { start: Angle, width: f64 },
    Plane,
}

impl Cone2 {
    pub fn ray(theta: f64) -> Self {
        Cone2::Ray(Angle::new(theta))
    }

    pub fn line(theta: f64) -> Self {
        let mut t = theta.rem_euclid(PI);
        if t >= PI || PI - t <= TOL_ANG {
            t = 0.0;
        }
        Cone2::Line(Angle(t))
    }

    /// Wedge with the given start direction and opening. Widths within
    /// [`TOL_ANG`] of 0 give a ray; widths within [`TOL_ANG`] of π are snapped
    /// to an exact halfplane.
    pub fn wedge(start: f64, width: f64) -> Result<Self, ConeError> {
        if !start.is_finite() || !width.is_finite() || !(-TOL_ANG..=PI + TOL_ANG).contains(&width) {
            return Err(ConeError::InvalidWidth(width));
        }
        if width <= TOL_ANG {
            return Ok(Cone2::ray(start));
        }
        let width = if (PI - width).abs() <= TOL_ANG { PI } else { width };
        Ok(Cone2::Wedge {
            start: Angle::new(start),
            width,
        })
    }

    /// Wedge from `lo` counterclockwise to `hi` (`0 ≤ hi − lo ≤ π`).
    pub fn wedge_between(lo: f64, hi: f64) -> Result<Self, ConeError> {
        Self::wedge(lo, hi - lo)
    }

    /// Closed halfplane `{x : ⟨n, x⟩ ≥ 0}` for `n = u(normal)`.
    pub fn halfplane(normal: f64) -> Self {
        Cone2::Wedge {
            start: Angle::new(normal - FRAC_PI_2),
            width: PI,
        }
    }

    pub fn is_halfplane(&self) -> bool {
        matches!(self, Cone2::Wedge { width, .. } if *width == PI)
    }

    /// The directions of the cone as arcs on the unit circle.
    pub fn arcs(&self) -> Vec<Arc> {
        match *self {
            Cone2::Zero => vec![],
            Cone2::Ray(a) => vec![Arc::point(a.rad())],
            Cone2::Line(a) => vec![Arc::point(a.rad()), Arc::point(a.rad() + PI)],
            Cone2::Wedge { start, width } => vec![Arc::new(start.rad(), width)],
            Cone2::Plane => vec![Arc::full()],
        }
    }

    pub fn directions(&self) -> AngularSet {
        AngularSet::from_arcs(self.arcs(), 0.0)
    }

    /// `K* = {y : ⟨x, y⟩ ≥ 0 ∀x ∈ K}`.
    pub fn dual(&self) -> Cone2 {
        match *self {
            Cone2::Zero => Cone2::Plane,
            Cone2::Plane => Cone2::Zero,
            Cone2::Ray(a) => Cone2::halfplane(a.rad()),
            Cone2::Line(a) => Cone2::line(a.rad() + FRAC_PI_2),
            Cone2::Wedge { start, width } => {
                if width == PI {
                    Cone2::ray(start.rad() + FRAC_PI_2)
                } else {
                    Cone2::wedge(start.rad() + width - FRAC_PI_2, PI - width)
                        .expect("dual width lies in (0, π)")
                }
            }
        }
    }

    pub fn intersect(&self, other: &Cone2) -> Cone2 {
        let both = self.directions().intersect(&other.directions(), TOL_ANG);
        conic_hull(&both, TOL_ANG)
    }

    /// Minkowski sum, i.e. the conic hull of the union.
    pub fn sum(&self, other: &Cone2) -> Cone2 {
        let mut arcs = self.arcs();
        arcs.extend(other.arcs());
        conic_hull(&AngularSet::from_arcs(arcs, TOL_ANG), TOL_ANG)
    }

    /// Membership with angular tolerance `tol`; the origin always belongs.
    pub fn contains(&self, x: Point2, tol: f64) -> bool {
        if x[0] == 0.0 && x[1] == 0.0 {
            return true;
        }
        self.contains_direction(angle_of(x), tol)
    }

    pub fn contains_direction(&self, theta: f64, tol: f64) -> bool {
        match *self {
            Cone2::Zero => false,
            Cone2::Plane => true,
            Cone2::Ray(a) => angle_dist(theta, a.rad()) <= tol,
            Cone2::Line(a) => {
                angle_dist(theta, a.rad()) <= tol || angle_dist(theta, a.rad() + PI) <= tol
            }
            Cone2::Wedge { start, width } => Arc::new(start.rad(), width).distance(theta) <= tol,
        }
    }

    /// Unit vectors whose conic hull is the cone.
    pub fn generators(&self) -> Vec<Point2> {
        match *self {
            Cone2::Zero => vec![],
            Cone2::Ray(a) => vec![unit(a.rad())],
            Cone2::Line(a) => vec![unit(a.rad()), unit(a.rad() + PI)],
            Cone2::Wedge { start, width } if width == PI => vec![
                unit(start.rad()),
                unit(start.rad() + PI),
                unit(start.rad() + FRAC_PI_2),
            ],
            Cone2::Wedge { start, width } => vec![unit(start.rad()), unit(start.rad() + width)],
            Cone2::Plane => vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]],
        }
    }

    /// Canonical equality up to angular tolerance.
    pub fn approx_eq(&self, other: &Cone2, tol: f64) -> bool {
        match (*self, *other) {
            (Cone2::Zero, Cone2::Zero) | (Cone2::Plane, Cone2::Plane) => true,
            (Cone2::Ray(a), Cone2::Ray(b)) => a.approx_eq(b, tol),
            (Cone2::Line(a), Cone2::Line(b)) => {
                angle_dist(a.rad(), b.rad()) <= tol || angle_dist(a.rad(), b.rad() + PI) <= tol
            }
            (Cone2::Wedge { start: s1, width: w1 }, Cone2::Wedge { start: s2, width: w2 }) => {
                s1.approx_eq(s2, tol) && (w1 - w2).abs() <= tol
            }
            _ => false,
        }
    }

    /// Relative boundary test used by the regularity check: `part ⊆ self` is
    /// assumed, and the answer is whether `part` reaches the relative
    /// interior of `self`.
    pub(crate) fn meets_relative_interior(&self, part: &Cone2, tol: f64) -> bool {
        if matches!(part, Cone2::Zero) {
            return false;
        }
        match *self {
            Cone2::Zero => false,
            Cone2::Ray(_) | Cone2::Line(_) | Cone2::Plane => true,
            Cone2::Wedge { start, width } => match *part {
                Cone2::Ray(r) => {
                    let on_edge = if width == PI {
                        angle_dist(r.rad(), start.rad()) <= tol
                            || angle_dist(r.rad(), start.rad() + PI) <= tol
                    } else {
                        angle_dist(r.rad(), start.rad()) <= tol
                            || angle_dist(r.rad(), start.rad() + width) <= tol
                    };
                    !on_edge
                }
                // a line inside a wedge is the boundary line of a halfplane
                Cone2::Line(_) => false,
                _ => true,
            },
        }
    }
}

/// Angle display unit for [`Cone2::display_in`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AngleUnit {
    #[default]
    Degrees,
    Radians,
}

impl AngleUnit {
    pub fn to_radians(self, v: f64) -> f64 {
        match self {
            AngleUnit::Degrees => v.to_radians(),
            AngleUnit::Radians => v,
        }
    }

    pub fn from_radians(self, v: f64) -> f64 {
        match self {
            AngleUnit::Degrees => v.to_degrees(),
            AngleUnit::Radians => v,
        }
    }
}

/// Rounds to `digits` significant digits and prints the shortest decimal
/// that reproduces the rounded value.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x.is_infinite() { x.to_string() } else { "0".into() };
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x);
    if rounded == 0.0 {
        "0".into()
    } else {
        format!("{rounded}")
    }
}

/// Angle in `(−π, π]`, used for printing wedge and ray endpoints.
fn centered(theta: f64) -> f64 {
    signed_angle_diff(theta, 0.0)
}

pub struct ConeDisplay<'a> {
    cone: &'a Cone2,
    unit: AngleUnit,
}

impl fmt::Display for ConeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |v: f64| format_significant(self.unit.from_radians(v), 12);
        match *self.cone {
            Cone2::Zero => write!(f, "zero"),
            Cone2::Plane => write!(f, "plane"),
            Cone2::Ray(a) => write!(f, "ray[{}]", p(centered(a.rad()))),
            Cone2::Line(a) => write!(f, "line[{}]", p(a.rad())),
            Cone2::Wedge { start, width } => {
                let lo = centered(start.rad());
                write!(f, "wedge[{},{}]", p(lo), p(lo + width))
            }
        }
    }
}

impl Cone2 {
    pub fn display_in(&self, unit: AngleUnit) -> ConeDisplay<'_> {
        ConeDisplay { cone: self, unit }
    }
}

impl fmt::Display for Cone2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in(AngleUnit::Degrees).fmt(f)
    }
}
