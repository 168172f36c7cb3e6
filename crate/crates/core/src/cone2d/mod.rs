//! Planar cone calculus: canonical cones, direction sets, homogeneous
//! convexity, regularity of intersections and the planar S-procedure.

mod angular_set;
mod calculus;
mod cone;
mod homconvex;
mod polygon;

pub use angular_set::{
    conic_hull, polyline_angular_set, spherical_project, Arc, AngularSet, DEFAULT_MERGE_GAP,
    DEFAULT_TOL_ORIGIN,
};
pub use calculus::{
    regularity_check, regularity_check_cone, sprocedure_2d, LinearForm2, SProcedure2d,
};
pub use cone::{
    angle_dist, angle_of, format_significant, signed_angle_diff, unit, wrap_angle, Angle,
    AngleUnit, Cone2, ConeDisplay, TOL_ANG,
};
pub use homconvex::{
    curve_angular_set, curve_angular_set_with, hom_convex_check, hom_convex_check_against,
    CurveSampling, HomConvexOptions, HomConvexReport, HomConvexWitness, SamplingPlan,
};
pub use polygon::{gauge_inf, gauge_sup, polygon_boundary_sample, ConvexPolygon};

pub use crate::slemma::QuadCurve2;

pub type Point2 = [f64; 2];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConeError {
    #[error("wedge width {0} is outside [0, π]")]
    InvalidWidth(f64),
    #[error("non-finite input")]
    NonFinite,
    #[error("zero direction")]
    ZeroDirection,
    #[error("ray does not meet the polygon")]
    RayMissesPolygon,
    #[error("polygon needs at least three non-collinear vertices")]
    DegeneratePolygon,
    #[error("vertices are not in strictly convex counterclockwise order")]
    NotConvex,
    #[error("the constraint form is not positive anywhere on the set")]
    SlaterViolated,
}
