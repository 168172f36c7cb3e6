//! Numerical homogeneous-convexity checks.
//!
//! A set `C ⊆ R²` is homogeneously convex when every segment between two of
//! its points has all of its directions inside the direction set of `C`.
//! The check samples segments and measures how far each sampled direction
//! lies from a reference direction set.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::angular_set::{
    norm, spherical_project, Arc, AngularSet, DEFAULT_MERGE_GAP, DEFAULT_TOL_ORIGIN,
};
use super::cone::angle_of;
use super::Point2;
use crate::slemma::QuadCurve2;

#[derive(Clone, Debug, PartialEq)]
pub struct HomConvexOptions {
    /// Largest accepted angular distance to the reference set.
    pub eps: f64,
    /// Interior samples per segment.
    pub segment_samples: usize,
    /// All pairs are checked when there are at most this many; otherwise
    /// this many pairs are drawn at random.
    pub max_pairs: usize,
    pub seed: u64,
    /// Samples with norm at most `tol_origin` times the larger endpoint norm
    /// have no direction and are skipped.
    pub tol_origin: f64,
}

impl Default for HomConvexOptions {
    fn default() -> Self {
        HomConvexOptions {
            eps: 1e-3,
            segment_samples: 64,
            max_pairs: 100_000,
            seed: 0,
            tol_origin: DEFAULT_TOL_ORIGIN,
        }
    }
}

/// Segment sample whose direction is farthest from the reference set.
#[derive(Clone, Debug, PartialEq)]
pub struct HomConvexWitness {
    pub i: usize,
    pub j: usize,
    pub t: f64,
    pub point: Point2,
    pub angle: f64,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomConvexReport {
    pub passed: bool,
    pub pairs_checked: usize,
    pub samples_skipped: usize,
    /// Worst sample seen, present whenever at least one sample was measured.
    pub worst: Option<HomConvexWitness>,
}

impl HomConvexReport {
    pub fn max_distance(&self) -> f64 {
        self.worst.as_ref().map_or(0.0, |w| w.distance)
    }
}

/// Checks the points against their own direction set, with `m` samples per
/// segment and all pairs.
pub fn hom_convex_check(points: &[Point2], eps: f64, m: usize) -> HomConvexReport {
    let reference = spherical_project(points, DEFAULT_TOL_ORIGIN, DEFAULT_MERGE_GAP);
    let opts = HomConvexOptions {
        eps,
        segment_samples: m,
        max_pairs: usize::MAX,
        ..HomConvexOptions::default()
    };
    hom_convex_check_against(points, &reference, &opts)
}

/// Checks segments between the points against an explicit reference set,
/// typically a dense description of the set the points were sampled from.
pub fn hom_convex_check_against(
    points: &[Point2],
    reference: &AngularSet,
    opts: &HomConvexOptions,
) -> HomConvexReport {
    let n = points.len();
    let total_pairs = n * n.saturating_sub(1) / 2;
    let mut report = HomConvexReport {
        passed: true,
        pairs_checked: 0,
        samples_skipped: 0,
        worst: None,
    };
    if reference.is_full() || total_pairs == 0 {
        report.pairs_checked = if reference.is_full() { total_pairs } else { 0 };
        return report;
    }
    let visit = |i: usize, j: usize, report: &mut HomConvexReport| {
        check_pair(points, i, j, reference, opts, report);
        report.pairs_checked += 1;
    };
    if total_pairs <= opts.max_pairs {
        for i in 0..n {
            for j in (i + 1)..n {
                visit(i, j, &mut report);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for k in 0..opts.max_pairs {
            let idx = sample(&mut rng, n, 2);
            let (i, j) = (idx.index(0).min(idx.index(1)), idx.index(0).max(idx.index(1)));
            // keep the extreme pair in the sample: it spans the widest segment
            if k == 0 {
                visit(0, n - 1, &mut report);
            } else {
                visit(i, j, &mut report);
            }
        }
    }
    report.passed = report.max_distance() <= opts.eps;
    report
}

fn check_pair(
    points: &[Point2],
    i: usize,
    j: usize,
    reference: &AngularSet,
    opts: &HomConvexOptions,
    report: &mut HomConvexReport,
) {
    let (p, q) = (points[i], points[j]);
    let small = opts.tol_origin * norm(p).max(norm(q));
    let m = opts.segment_samples.max(1);
    for k in 1..=m {
        let t = k as f64 / (m + 1) as f64;
        let x = [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];
        let r = norm(x);
        if r <= small || r == 0.0 {
            report.samples_skipped += 1;
            continue;
        }
        let angle = angle_of(x);
        let distance = reference.distance(angle);
        if report.worst.as_ref().map_or(true, |w| distance > w.distance) {
            report.worst = Some(HomConvexWitness {
                i,
                j,
                t,
                point: x,
                angle,
                distance,
            });
        }
    }
}

/// How a parametrized curve is sampled.
#[derive(Clone, Debug, PartialEq)]
pub enum SamplingPlan {
    /// `count` values of `t` evenly spread over `[−range, range]`.
    Symmetric { range: f64, count: usize },
    /// `count` values `t = tan s`, `s` evenly spread over `[−π/2, π/2]`,
    /// covering the whole real line and the directions at infinity.
    Compactified { count: usize },
}

impl SamplingPlan {
    fn params(&self) -> Vec<f64> {
        let (lo, hi, count) = match *self {
            SamplingPlan::Symmetric { range, count } => (-range, range, count),
            SamplingPlan::Compactified { count } => (-FRAC_PI_2, FRAC_PI_2, count),
        };
        let count = count.max(2);
        (0..count)
            .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
            .collect()
    }

    /// Curve point for a parameter value of this plan. For the compactified
    /// plan this is the point at `tan s` scaled by `cos² s`, which has the
    /// same direction.
    fn point(&self, c: &QuadCurve2, u: f64) -> Point2 {
        match self {
            SamplingPlan::Symmetric { .. } => c.eval(u),
            SamplingPlan::Compactified { .. } => c.eval_compact(u),
        }
    }

    /// Parameter values in curve coordinates `t`.
    pub fn t_values(&self) -> Vec<f64> {
        match self {
            SamplingPlan::Symmetric { .. } => self.params(),
            SamplingPlan::Compactified { .. } => self.params().into_iter().map(f64::tan).collect(),
        }
    }

    /// Sampled curve points (compactified samples are rescaled as in
    /// [`Self::point`], so they stay finite at the ends).
    pub fn sample(&self, c: &QuadCurve2) -> Vec<Point2> {
        self.params().into_iter().map(|u| self.point(c, u)).collect()
    }
}

/// Refinement controls for [`curve_angular_set_with`].
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSampling {
    /// Neighbouring samples are refined until their directions differ by
    /// at most this much.
    pub max_step: f64,
    pub max_depth: u32,
    pub max_points: usize,
    pub merge_gap: f64,
    pub tol_origin: f64,
}

impl Default for CurveSampling {
    fn default() -> Self {
        CurveSampling {
            max_step: DEFAULT_MERGE_GAP / 2.0,
            max_depth: 40,
            max_points: 2_000_000,
            merge_gap: DEFAULT_MERGE_GAP,
            tol_origin: DEFAULT_TOL_ORIGIN,
        }
    }
}

/// Direction set of a quadratic curve sampled by `plan`.
pub fn curve_angular_set(c: &QuadCurve2, plan: &SamplingPlan) -> AngularSet {
    curve_angular_set_with(c, plan, &CurveSampling::default())
}

/// Direction set of a quadratic curve: the plan's samples are refined until
/// neighbouring directions are within `max_step`, then merged into arcs.
/// Recession directions are included for the compactified plan.
pub fn curve_angular_set_with(
    c: &QuadCurve2,
    plan: &SamplingPlan,
    sampling: &CurveSampling,
) -> AngularSet {
    let small = sampling.tol_origin * c.coeff_scale();
    let params = plan.params();
    let mut angles = Vec::with_capacity(params.len() * 2);
    let mut budget = sampling.max_points;
    let mut prev: Option<(f64, Point2)> = None;
    for &u in &params {
        let p = plan.point(c, u);
        if let Some((u0, p0)) = prev {
            refine(c, plan, sampling, small, (u0, p0), (u, p), 0, &mut angles, &mut budget);
        }
        push_angle(p, small, &mut angles);
        prev = Some((u, p));
    }
    if matches!(plan, SamplingPlan::Compactified { .. }) {
        for d in c.recession_directions(sampling.tol_origin) {
            angles.push(angle_of(d));
        }
    }
    let gap = sampling.merge_gap.min(TAU);
    AngularSet::from_arcs(angles.into_iter().map(Arc::point).collect(), gap)
}

fn push_angle(p: Point2, small: f64, out: &mut Vec<f64>) {
    let r = norm(p);
    if r > small && r > 0.0 {
        out.push(angle_of(p));
    }
}

#[allow(clippy::too_many_arguments)]
fn refine(
    c: &QuadCurve2,
    plan: &SamplingPlan,
    sampling: &CurveSampling,
    small: f64,
    (u0, p0): (f64, Point2),
    (u1, p1): (f64, Point2),
    depth: u32,
    out: &mut Vec<f64>,
    budget: &mut usize,
) {
    if depth >= sampling.max_depth || *budget == 0 {
        return;
    }
    let near0 = norm(p0) <= small;
    let near1 = norm(p1) <= small;
    let coarse = if near0 || near1 {
        true
    } else {
        let cross = p0[0] * p1[1] - p0[1] * p1[0];
        let dot = p0[0] * p1[0] + p0[1] * p1[1];
        cross.atan2(dot).abs() > sampling.max_step
    };
    if !coarse {
        return;
    }
    let um = 0.5 * (u0 + u1);
    if um <= u0 || um >= u1 {
        return;
    }
    let pm = plan.point(c, um);
    *budget -= 1;
    push_angle(pm, small, out);
    refine(c, plan, sampling, small, (u0, p0), (um, pm), depth + 1, out, budget);
    refine(c, plan, sampling, small, (um, pm), (u1, p1), depth + 1, out, budget);
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn quadrant_arc_passes() {
        let pts: Vec<Point2> = (0..=10)
            .map(|k| {
                let a = FRAC_PI_2 * k as f64 / 10.0;
                [a.cos(), a.sin()]
            })
            .collect();
        let refset = AngularSet::from_arcs(vec![Arc::new(0.0, FRAC_PI_2)], 0.0);
        let r = hom_convex_check_against(&pts, &refset, &HomConvexOptions::default());
        assert!(r.passed);
        assert!(r.max_distance() < 1e-12);
    }

    #[test]
    fn orthogonal_pair_fails_with_witness() {
        let r = hom_convex_check(&[[1.0, 0.0], [0.0, 1.0]], 1e-3, 16);
        assert!(!r.passed);
        let w = r.worst.unwrap();
        assert!((w.angle - FRAC_PI_4).abs() < 0.1);
        assert!(w.distance > 0.5);
    }

    #[test]
    fn antipodal_pair_passes() {
        let r = hom_convex_check(&[[1.0, 0.0], [-1.0, 0.0]], 1e-3, 17);
        assert!(r.passed);
        assert!(r.samples_skipped >= 1);
    }

    #[test]
    fn constant_curve_is_a_point() {
        let c = QuadCurve2::new([1.0, 0.0, 0.0], [0.0, 0.0, 0.0]);
        let s = curve_angular_set(&c, &SamplingPlan::Symmetric { range: 10.0, count: 1001 });
        assert_eq!(s.arcs().len(), 1);
        assert_eq!(s.arcs()[0].len, 0.0);
        assert!(s.contains(0.0, 0.0));
    }

    #[test]
    fn diagonal_line_gives_antipodal_pair() {
        let c = QuadCurve2::new([0.0, 1.0, 0.0], [0.0, 1.0, 0.0]);
        let s = curve_angular_set(&c, &SamplingPlan::Compactified { count: 1001 });
        assert_eq!(s.arcs().len(), 2);
        assert!(s.contains(FRAC_PI_4, 1e-12));
        assert!(s.contains(FRAC_PI_4 + PI, 1e-12));
    }

    #[test]
    fn parabola_direction_set() {
        // (t, t²) sweeps the open upper halfplane plus the recession direction
        let c = QuadCurve2::new([0.0, 1.0, 0.0], [0.0, 0.0, 1.0]);
        let s = curve_angular_set(&c, &SamplingPlan::Compactified { count: 2001 });
        assert_eq!(s.arcs().len(), 1);
        assert!(s.contains(FRAC_PI_2, 0.0));
        assert!(s.arcs()[0].len > PI - 0.01);
        assert!(!s.contains(-FRAC_PI_2, 0.1));
    }
}
