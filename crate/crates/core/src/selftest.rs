//! Randomized property suites exercising the whole library, runnable at a
//! reduced or a full scale. Each suite reports a single pass/fail line.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cone2d::{
    conic_hull, curve_angular_set, hom_convex_check_against, polygon_boundary_sample,
    polyline_angular_set, regularity_check, regularity_check_cone, Arc, AngularSet, Cone2,
    ConvexPolygon, HomConvexOptions, Point2, SamplingPlan, DEFAULT_TOL_ORIGIN, TOL_ANG,
};
use crate::quadform::{is_globally_nonneg, oracle_search, OracleOptions, QuadraticFunction};
use crate::slemma::{
    certify, joint_range_curve, margin, problem_scale, CertifyOptions, CopositivityVerdict,
};
use crate::symcore::{eigen_sym, min_eig, SymMatrix, DEFAULT_TOL_EIG};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Quick,
    Full,
}

impl Scale {
    fn pick(self, quick: usize, full: usize) -> usize {
        match self {
            Scale::Quick => quick,
            Scale::Full => full,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<34} {} ({:.2} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "s-lemma dichotomy"),
    (2, "dual cone calculus"),
    (3, "joint-range hom-convexity"),
    (4, "margin concavity"),
    (5, "psd lifting equivalence"),
    (6, "regularity under interior points"),
    (7, "dual of regular intersections"),
    (8, "polygon boundary hom-convexity"),
    (9, "worked instances"),
    (10, "jacobi reconstruction"),
];

pub fn run_all(scale: Scale) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .filter_map(|(id, _)| run_criterion(*id, scale))
        .collect()
}

pub fn run_criterion(id: u8, scale: Scale) -> Option<CriterionReport> {
    let name = CRITERIA.iter().find(|(i, _)| *i == id)?.1;
    let start = Instant::now();
    let (passed, detail) = match id {
        1 => slemma_dichotomy(scale),
        2 => dual_calculus(scale),
        3 => joint_range_homconvex(scale),
        4 => margin_concavity(scale),
        5 => psd_lifting(scale),
        6 => regularity_interior(scale),
        7 => regular_intersection_duals(scale),
        8 => polygon_boundaries(scale),
        9 => worked_instances(),
        10 => jacobi_reconstruction(scale),
        _ => return None,
    };
    Some(CriterionReport {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    })
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Symmetric matrix with standard normal upper-triangle entries.
pub fn random_sym(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix {
    SymMatrix::from_upper_fn(n, |_, _| normal(rng)).expect("finite")
}

/// Quadratic function with standard normal coefficients.
pub fn random_quadratic(rng: &mut ChaCha8Rng, n: usize) -> QuadraticFunction {
    let q = random_sym(rng, n);
    let l = (0..n).map(|_| normal(rng)).collect();
    QuadraticFunction::new(q, l, normal(rng)).expect("finite")
}

/// `ξ·h + s` with `lift(s) = RRᵀ − δI`: copositive with `h` when `δ ≤ 0`
/// and typically not when `δ` is clearly positive.
pub fn planted_quadratic(rng: &mut ChaCha8Rng, h: &QuadraticFunction) -> QuadraticFunction {
    let n = h.dim();
    let rank = rng.random_range(1..=n + 1);
    let r: Vec<Vec<f64>> = (0..rank)
        .map(|_| (0..=n).map(|_| normal(rng)).collect())
        .collect();
    let delta = rng.random_range(-0.5..0.5);
    let s = SymMatrix::from_upper_fn(n + 1, |i, j| {
        r.iter().map(|v| v[i] * v[j]).sum::<f64>() - if i == j { delta } else { 0.0 }
    })
    .expect("finite");
    let xi = rng.random_range(0.0..3.0);
    let s = crate::quadform::LiftedMatrix::from_sym(s)
        .expect("nonempty")
        .unlift();
    s.lin_comb(1.0, h, xi).expect("same dimension")
}

/// Shifts the constant of `h` so that `h(0) ≥ 0.1`.
pub fn with_slater_margin(h: QuadraticFunction) -> QuadraticFunction {
    if h.c() >= 0.1 {
        return h;
    }
    QuadraticFunction::new(h.q().clone(), h.l().to_vec(), 0.1).expect("finite")
}

fn random_angle(rng: &mut ChaCha8Rng, grid: bool) -> f64 {
    if grid {
        rng.random_range(0..8) as f64 * FRAC_PI_4
    } else {
        rng.random_range(0.0..TAU)
    }
}

/// Random canonical cone; a quarter of the angles lie on the π/4 grid so
/// that touching and antipodal configurations occur.
pub fn random_cone(rng: &mut ChaCha8Rng) -> Cone2 {
    let grid = rng.random_bool(0.25);
    match rng.random_range(0..10) {
        0 => Cone2::Zero,
        1 => Cone2::Plane,
        2 | 3 => Cone2::ray(random_angle(rng, grid)),
        4 => Cone2::line(random_angle(rng, grid)),
        5 => Cone2::halfplane(random_angle(rng, grid)),
        _ => {
            let width = if grid {
                rng.random_range(1..4) as f64 * FRAC_PI_4
            } else {
                rng.random_range(1e-3..PI - 1e-3)
            };
            Cone2::wedge(random_angle(rng, grid), width).expect("valid width")
        }
    }
}

fn slemma_dichotomy(scale: Scale) -> (bool, String) {
    let target = scale.pick(100, 500);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_1e44a);
    let (mut used, mut discarded, mut certified, mut refuted) = (0, 0, 0, 0);
    let mut disagreements = Vec::new();
    let mut k = 0u64;
    while used < target {
        k += 1;
        let n = rng.random_range(1..=5);
        let h = with_slater_margin(random_quadratic(&mut rng, n));
        // alternate plain Gaussian instances with planted near-copositive ones
        let g = if k % 2 == 0 {
            planted_quadratic(&mut rng, &h)
        } else {
            random_quadratic(&mut rng, n)
        };
        let opts = CertifyOptions {
            seed: k,
            ..CertifyOptions::default()
        };
        let report = match certify(&g, &h, &opts) {
            Ok(r) => r,
            Err(e) => {
                disagreements.push(format!("instance {k}: {e}"));
                used += 1;
                continue;
            }
        };
        let m_star = report.diagnostics.margin;
        if m_star.abs() < 1e-5 {
            discarded += 1;
            continue;
        }
        used += 1;
        let oracle = oracle_search(
            &g,
            &h,
            &OracleOptions {
                budget: 5000,
                seed: k ^ 0x9e37_79b9,
                hint_xi: Some(report.diagnostics.xi),
                ..OracleOptions::default()
            },
        )
        .expect("dimensions agree");
        let is_cert = matches!(report.verdict, CopositivityVerdict::Certified(_));
        if is_cert {
            certified += 1;
        } else {
            refuted += 1;
        }
        if is_cert == oracle.witness.is_some() {
            disagreements.push(format!(
                "instance {k}: verdict {} margin {m_star:.3e}, oracle witness {}",
                report.verdict.label(),
                oracle.witness.is_some()
            ));
        }
        if let CopositivityVerdict::Refuted(w) = &report.verdict {
            let (gv, hv) = (g.eval(&w.x).unwrap(), h.eval(&w.x).unwrap());
            if !(hv >= -opts.tol_feas && gv < 0.0) {
                disagreements.push(format!("instance {k}: witness does not re-verify"));
            }
        }
    }
    let detail = format!(
        "{used} instances ({certified} certified, {refuted} not), {discarded} borderline skipped, {} disagreements{}",
        disagreements.len(),
        disagreements.first().map(|d| format!("; first: {d}")).unwrap_or_default()
    );
    (disagreements.is_empty(), detail)
}

fn dual_calculus(scale: Scale) -> (bool, String) {
    let pairs = scale.pick(2_000, 10_000);
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0a1);
    let mut failures = Vec::new();
    for _ in 0..pairs {
        let (a, b) = (random_cone(&mut rng), random_cone(&mut rng));
        let lhs = a.intersect(&b).dual();
        let rhs = a.dual().sum(&b.dual());
        if !lhs.approx_eq(&rhs, TOL_ANG) {
            failures.push(format!("{a:?} ∩ {b:?}: {lhs} vs {rhs}"));
        }
        for k in [a, b] {
            if !k.dual().dual().approx_eq(&k, TOL_ANG) {
                failures.push(format!("involution fails for {k:?}"));
            }
        }
    }
    let detail = format!(
        "{pairs} pairs, {} failures{}",
        failures.len(),
        failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
    );
    (failures.is_empty(), detail)
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| 2.0 * normal(rng)).collect()
}

fn joint_range_homconvex(scale: Scale) -> (bool, String) {
    let instances = scale.pick(40, 200);
    let samples = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    let opts = HomConvexOptions {
        eps: 1e-3,
        segment_samples: scale.pick(2_000, 10_000),
        max_pairs: 64,
        ..HomConvexOptions::default()
    };
    let plan = SamplingPlan::Compactified { count: samples };
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let mut partial = 0;
    for k in 0..instances {
        let n = rng.random_range(1..=5);
        let g = random_quadratic(&mut rng, n);
        let h = random_quadratic(&mut rng, n);
        let (x1, x2) = (random_point(&mut rng, n), random_point(&mut rng, n));
        let curve = joint_range_curve(&g, &h, &x1, &x2).expect("dimensions agree");
        let reference = curve_angular_set(&curve, &plan);
        partial += usize::from(!reference.is_full());
        let points = plan.sample(&curve);
        let r = hom_convex_check_against(
            &points,
            &reference,
            &HomConvexOptions {
                seed: k as u64,
                ..opts.clone()
            },
        );
        worst = worst.max(r.max_distance());
        if !r.passed {
            failures.push(format!("instance {k}: {:?}", r.worst));
        }
    }
    let detail = format!(
        "{instances} curves ({partial} with a proper direction set), {} failures, worst angular distance {worst:.2e}{}",
        failures.len(),
        failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
    );
    (failures.is_empty(), detail)
}

fn margin_concavity(scale: Scale) -> (bool, String) {
    let instances = scale.pick(20, 100);
    let mut rng = ChaCha8Rng::seed_from_u64(0xcafe);
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..instances {
        let n = rng.random_range(1..=5);
        let g = random_quadratic(&mut rng, n);
        let h = random_quadratic(&mut rng, n);
        let slack = 1e-8 * problem_scale(&g, &h);
        let m = |xi: f64| margin(&g, &h, xi).expect("finite").0;
        for _ in 0..100 {
            let (x1, x2) = (rng.random_range(0.0..10.0), rng.random_range(0.0..10.0));
            let lam: f64 = rng.random_range(0.0..=1.0);
            let gap = lam * m(x1) + (1.0 - lam) * m(x2) - m(lam * x1 + (1.0 - lam) * x2);
            worst = worst.max(gap);
            if gap > slack {
                violations += 1;
            }
        }
    }
    (
        violations == 0,
        format!(
            "{} triples, {violations} violations, largest chord excess {worst:.2e}",
            instances * 100
        ),
    )
}

fn psd_lifting(scale: Scale) -> (bool, String) {
    let count = scale.pick(100, 500);
    let mut rng = ChaCha8Rng::seed_from_u64(0x1f7);
    let (mut checked, mut skipped, mut nonneg) = (0, 0, 0);
    let mut failures = Vec::new();
    for k in 0..count {
        let n = rng.random_range(1..=5);
        let one = QuadraticFunction::constant(n, 1.0).expect("finite");
        let g = if k % 2 == 0 {
            random_quadratic(&mut rng, n)
        } else {
            planted_quadratic(&mut rng, &QuadraticFunction::constant(n, 0.0).expect("finite"))
        };
        let lambda = min_eig(g.lift().as_sym()).expect("finite").0;
        if lambda.abs() < 1e-7 {
            skipped += 1;
            continue;
        }
        checked += 1;
        let psd = is_globally_nonneg(&g, 1e-9).expect("finite");
        nonneg += psd as usize;
        let oracle = oracle_search(
            &g,
            &one,
            &OracleOptions {
                budget: 2000,
                seed: k as u64,
                tol_strict: 1e-9,
                hint_xi: Some(0.0),
                ..OracleOptions::default()
            },
        )
        .expect("dimensions agree");
        if psd == oracle.witness.is_some() {
            failures.push(format!("instance {k}: lambda_min {lambda:.3e}, witness {}", oracle.witness.is_some()));
        }
    }
    (
        failures.is_empty(),
        format!(
            "{checked} functions ({nonneg} nonnegative), {skipped} in band, {} disagreements{}",
            failures.len(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

fn regularity_interior(scale: Scale) -> (bool, String) {
    let count = scale.pick(300, 1000);
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e6);
    let mut failures = Vec::new();
    for k in 0..count {
        let start = rng.random_range(0.0..TAU);
        let width = if rng.random_bool(0.2) {
            PI
        } else {
            rng.random_range(2.5e-3..PI)
        };
        let wedge = Cone2::wedge(start, width).expect("valid width");
        let depth = rng.random_range(1e-3..=width / 2.0);
        let inside = start + if rng.random_bool(0.5) { depth } else { width - depth };
        let r = rng.random_range(0.1..10.0);
        let mut pts: Vec<Point2> = vec![[r * inside.cos(), r * inside.sin()]];
        for _ in 0..rng.random_range(0..20) {
            let grid = rng.random_bool(0.2);
            let a = random_angle(&mut rng, grid);
            let r = rng.random_range(0.0..10.0);
            pts.push([r * a.cos(), r * a.sin()]);
        }
        if !regularity_check(&pts, &wedge, 1e-9) {
            failures.push(format!("instance {k}: {wedge:?} with {} points", pts.len()));
        }
    }
    let constructed = Cone2::wedge(FRAC_PI_4, FRAC_PI_4).expect("valid width");
    let counterexample_ok = !regularity_check(&[[1.0, -1.0], [1.0, 1.0]], &constructed, 1e-9);
    (
        failures.is_empty() && counterexample_ok,
        format!(
            "{count} interior instances, {} false negatives; constructed failure {}",
            failures.len(),
            if counterexample_ok { "reported false" } else { "MISSED" }
        ),
    )
}

/// Random spherically convex direction set: an arc of length at most π,
/// a point, an antipodal pair or the whole circle.
pub fn random_convex_arcs(rng: &mut ChaCha8Rng) -> AngularSet {
    let grid = rng.random_bool(0.2);
    let a = random_angle(rng, grid);
    match rng.random_range(0..10) {
        0 => AngularSet::from_angles([a], 0.0),
        1 => AngularSet::from_angles([a, a + PI], 0.0),
        2 => AngularSet::full(),
        3 => AngularSet::from_arcs(vec![Arc::new(a, PI)], 0.0),
        _ => AngularSet::from_arcs(vec![Arc::new(a, rng.random_range(0.0..PI))], 0.0),
    }
}

fn regular_intersection_duals(scale: Scale) -> (bool, String) {
    let target = scale.pick(300, 1000);
    let mut rng = ChaCha8Rng::seed_from_u64(0x3a17);
    let (mut passed_reg, mut tried) = (0, 0);
    let mut failures = Vec::new();
    while passed_reg < target && tried < 100 * target {
        tried += 1;
        let c = random_convex_arcs(&mut rng);
        let grid = rng.random_bool(0.3);
        let k = match rng.random_range(0..4) {
            0 => Cone2::halfplane(random_angle(&mut rng, false)),
            1 => Cone2::ray(random_angle(&mut rng, grid)),
            _ => Cone2::wedge(random_angle(&mut rng, false), rng.random_range(1e-3..PI)).expect("valid"),
        };
        let hull = conic_hull(&c, TOL_ANG);
        if !regularity_check_cone(&hull, &k, 1e-9) {
            continue;
        }
        passed_reg += 1;
        let lhs = conic_hull(&c.intersect_cone(&k, TOL_ANG), TOL_ANG).dual();
        let rhs = hull.dual().sum(&k.dual());
        if !lhs.approx_eq(&rhs, TOL_ANG) {
            failures.push(format!("{c:?} and {k:?}: {lhs} vs {rhs}"));
        }
    }
    (
        failures.is_empty() && passed_reg == target,
        format!(
            "{passed_reg} regular instances out of {tried}, {} mismatches{}",
            failures.len(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

/// Random convex polygon with the origin strictly inside or strictly
/// outside.
pub fn random_polygon(rng: &mut ChaCha8Rng, origin_inside: bool) -> ConvexPolygon {
    loop {
        let k = rng.random_range(3..=12);
        let pts: Vec<Point2> = (0..k)
            .map(|_| [normal(rng), rng.random_range(0.2..3.0) * normal(rng)])
            .collect();
        let Ok(p) = ConvexPolygon::hull(&pts) else {
            continue;
        };
        let v = p.vertices();
        let centroid = [
            v.iter().map(|q| q[0]).sum::<f64>() / v.len() as f64,
            v.iter().map(|q| q[1]).sum::<f64>() / v.len() as f64,
        ];
        let radius = v
            .iter()
            .map(|q| (q[0] - centroid[0]).hypot(q[1] - centroid[1]))
            .fold(0.0, f64::max);
        let shift = if origin_inside {
            centroid
        } else {
            let a = rng.random_range(0.0..TAU);
            let d = radius * rng.random_range(1.05..5.0);
            [centroid[0] - d * a.cos(), centroid[1] - d * a.sin()]
        };
        let moved: Vec<Point2> = v.iter().map(|q| [q[0] - shift[0], q[1] - shift[1]]).collect();
        if let Ok(p) = ConvexPolygon::new(moved) {
            if p.contains([0.0, 0.0], -1e-9) == origin_inside {
                return p;
            }
        }
    }
}

fn polygon_boundaries(scale: Scale) -> (bool, String) {
    let count = scale.pick(20, 100);
    let mut rng = ChaCha8Rng::seed_from_u64(0x9017);
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for k in 0..count {
        for inside in [true, false] {
            let p = random_polygon(&mut rng, inside);
            let samples = polygon_boundary_sample(&p, 256);
            let reference = polyline_angular_set(&samples, true, DEFAULT_TOL_ORIGIN);
            if inside != reference.is_full() {
                failures.push(format!("polygon {k}: direction set of the boundary misclassified"));
            }
            let r = hom_convex_check_against(
                &samples,
                &reference,
                &HomConvexOptions {
                    eps: 1e-3,
                    segment_samples: 16,
                    max_pairs: usize::MAX,
                    ..HomConvexOptions::default()
                },
            );
            worst = worst.max(r.max_distance());
            if !r.passed {
                failures.push(format!("polygon {k} (origin inside: {inside}): {:?}", r.worst));
            }
        }
    }
    (
        failures.is_empty(),
        format!(
            "{} polygons, {} failures, worst angular distance {worst:.2e}{}",
            2 * count,
            failures.len(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

fn worked_instances() -> (bool, String) {
    let uni = |q, l, c| QuadraticFunction::univariate(q, l, c).expect("finite");
    let opts = CertifyOptions::default();
    let mut notes = Vec::new();
    let first = match certify(&uni(-1.0, 0.0, 4.0), &uni(-1.0, 0.0, 1.0), &opts) {
        Ok(r) => match r.verdict {
            CopositivityVerdict::Certified(c) => {
                notes.push(format!("xi* = {:.9}, margin = {:.9}", c.xi, c.margin));
                (c.xi - 2.5).abs() <= 1e-4 && (c.margin - 1.5).abs() <= 1e-6
            }
            v => {
                notes.push(format!("first instance {}", v.label()));
                false
            }
        },
        Err(e) => {
            notes.push(e.to_string());
            false
        }
    };
    let (g, h) = (uni(0.0, 0.5, -1.0), uni(-1.0, 0.0, 1.0));
    let second = match certify(&g, &h, &opts) {
        Ok(r) => match r.verdict {
            CopositivityVerdict::Refuted(w) => {
                let (gv, hv) = (g.eval(&w.x).unwrap(), h.eval(&w.x).unwrap());
                notes.push(format!("witness x = {:.6}", w.x[0]));
                hv >= -opts.tol_feas && gv < 0.0
            }
            v => {
                notes.push(format!("second instance {}", v.label()));
                false
            }
        },
        Err(e) => {
            notes.push(e.to_string());
            false
        }
    };
    (first && second, notes.join("; "))
}

fn jacobi_reconstruction(scale: Scale) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ac0b1);
    let dims: Vec<usize> = match scale {
        Scale::Quick => (1..=50).step_by(7).chain([50]).collect(),
        Scale::Full => (1..=50).flat_map(|d| [d, d]).collect(),
    };
    let mut worst: f64 = 0.0;
    for &d in &dims {
        let m = random_sym(&mut rng, d).scaled(10f64.powi(rng.random_range(-3..=3)));
        let e = eigen_sym(&m, DEFAULT_TOL_EIG).expect("converges");
        let err = e
            .reconstruct()
            .lin_comb(1.0, &m, -1.0)
            .expect("same dimension")
            .frobenius_norm()
            / m.frobenius_norm().max(f64::MIN_POSITIVE);
        worst = worst.max(err);
    }
    (
        worst <= 1e-9,
        format!("{} matrices up to dim 50, worst relative error {worst:.2e}", dims.len()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let h = with_slater_margin(random_quadratic(&mut rng, 3));
            assert!(h.eval(&[0.0; 3]).unwrap() >= 0.1);
            assert!(random_convex_arcs(&mut rng).is_spherically_convex(1e-12));
        }
        for inside in [true, false] {
            let p = random_polygon(&mut rng, inside);
            assert_eq!(p.contains([0.0, 0.0], 0.0), inside);
        }
    }

    #[test]
    fn worked_instances_pass() {
        assert!(worked_instances().0);
    }
}
