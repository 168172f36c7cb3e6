//! Property-based invariants.

mod common;

use std::f64::consts::{PI, TAU};

use copositive::cone2d::{
    angle_of, conic_hull, hom_convex_check_against, spherical_project, sprocedure_2d, Arc,
    AngleUnit, AngularSet, Cone2, HomConvexOptions, LinearForm2, Point2, SProcedure2d, TOL_ANG,
};
use copositive::format::{format_cone, parse_cone_spec, ProblemFile, VerdictReport};
use copositive::quadform::{
    nonneg_region, rank1, restrict_line, QuadraticFunction, UnivariateQuadratic,
};
use copositive::slemma::{best_xi, certify, margin, CertifyOptions, CopositivityVerdict};
use copositive::symcore::{eigen_sym, gram_schmidt, is_psd, trace_inner, SymMatrix, DEFAULT_TOL_EIG};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = f64> {
    -5.0..5.0f64
}

fn sym(n: usize) -> impl Strategy<Value = SymMatrix> {
    prop::collection::vec(coeff(), n * (n + 1) / 2).prop_map(move |v| {
        let mut it = v.into_iter();
        SymMatrix::from_upper_fn(n, |_, _| it.next().unwrap()).unwrap()
    })
}

fn quadratic(n: usize) -> impl Strategy<Value = QuadraticFunction> {
    (sym(n), prop::collection::vec(coeff(), n), coeff())
        .prop_map(|(q, l, c)| QuadraticFunction::new(q, l, c).unwrap())
}

fn pair() -> impl Strategy<Value = (QuadraticFunction, QuadraticFunction)> {
    (1usize..=4).prop_flat_map(|n| (quadratic(n), quadratic(n)))
}

fn angle() -> impl Strategy<Value = f64> {
    prop_oneof![0.0..TAU, (0i32..8).prop_map(|k| k as f64 * PI / 4.0)]
}

fn cone() -> impl Strategy<Value = Cone2> {
    prop_oneof![
        Just(Cone2::Zero),
        Just(Cone2::Plane),
        angle().prop_map(Cone2::ray),
        angle().prop_map(Cone2::line),
        angle().prop_map(Cone2::halfplane),
        (angle(), 1e-3..PI - 1e-3).prop_map(|(a, w)| Cone2::wedge(a, w).unwrap()),
        (angle(), 1i32..4).prop_map(|(a, k)| Cone2::wedge(a, k as f64 * PI / 4.0).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eigen_decomposition_is_orthonormal_and_exact(m in (1usize..=8).prop_flat_map(sym)) {
        let e = eigen_sym(&m, DEFAULT_TOL_EIG).unwrap();
        let n = m.dim();
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        for i in 0..n {
            for j in 0..n {
                let d: f64 = e.vector(i).iter().zip(e.vector(j)).map(|(a, b)| a * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((d - want).abs() < 1e-12);
            }
        }
        let err = e.reconstruct().lin_comb(1.0, &m, -1.0).unwrap().frobenius_norm();
        prop_assert!(err <= 1e-11 * (1.0 + m.frobenius_norm()));
    }

    #[test]
    fn lifting_reproduces_values(g in (1usize..=5).prop_flat_map(quadratic), seed in any::<u64>()) {
        let n = g.dim();
        let x: Vec<f64> = (0..n).map(|i| ((seed >> (i * 8)) & 0xff) as f64 / 32.0 - 4.0).collect();
        let via_lift = trace_inner(g.lift().as_sym(), &rank1(&x)).unwrap();
        let direct = g.eval(&x).unwrap();
        prop_assert!((via_lift - direct).abs() <= 1e-12 * (1.0 + direct.abs()) * 100.0);
        prop_assert_eq!(g.lift().unlift(), g);
    }

    #[test]
    fn line_restriction_agrees_with_evaluation(
        (g, x0, d) in (1usize..=4).prop_flat_map(|n| (
            quadratic(n),
            prop::collection::vec(coeff(), n),
            prop::collection::vec(coeff(), n),
        )),
        t in -4.0..4.0f64,
    ) {
        prop_assume!(d.iter().any(|v| v.abs() > 1e-3));
        let q = restrict_line(&g, &x0, &d).unwrap();
        let x: Vec<f64> = x0.iter().zip(&d).map(|(a, b)| a + t * b).collect();
        let want = g.eval(&x).unwrap();
        prop_assert!((q.eval(t) - want).abs() <= 1e-10 * (1.0 + want.abs()));
    }

    #[test]
    fn nonneg_region_matches_sign(a in coeff(), b in coeff(), c in coeff(), t in -10.0..10.0f64) {
        let q = UnivariateQuadratic::new(a, b, c);
        let s = nonneg_region(&q, 1e-14);
        let v = q.eval(t);
        if v.abs() > 1e-9 {
            prop_assert_eq!(s.contains(t), v > 0.0);
        }
    }

    #[test]
    fn margin_is_concave((g, h) in pair(), x1 in 0.0..10.0f64, x2 in 0.0..10.0f64, lam in 0.0..=1.0f64) {
        let m = |xi: f64| margin(&g, &h, xi).unwrap().0;
        let scale = 1.0 + g.lift().as_sym().frobenius_norm() + h.lift().as_sym().frobenius_norm();
        let chord = lam * m(x1) + (1.0 - lam) * m(x2);
        prop_assert!(m(lam * x1 + (1.0 - lam) * x2) >= chord - 1e-9 * scale * (1.0 + x1.max(x2)));
    }

    #[test]
    fn best_xi_dominates_samples((g, h) in pair(), xi in 0.0..50.0f64) {
        if let Ok(b) = best_xi(&g, &h, 1e-12, 2000) {
            prop_assert!(b.xi >= 0.0);
            let other = margin(&g, &h, xi).unwrap().0;
            let scale = 1.0 + g.lift().as_sym().frobenius_norm() + h.lift().as_sym().frobenius_norm();
            prop_assert!(b.margin >= other - 1e-8 * scale);
        }
    }

    #[test]
    fn verdicts_carry_valid_evidence((g, h) in pair()) {
        let opts = CertifyOptions { oracle_budget: 300, ..CertifyOptions::default() };
        if let Ok(r) = certify(&g, &h, &opts) {
            match r.verdict {
                CopositivityVerdict::Certified(c) => {
                    prop_assert!(c.xi >= 0.0);
                    let slack = g.lift().as_sym().sub_scaled(c.xi, h.lift().as_sym()).unwrap();
                    prop_assert!(is_psd(&slack, opts.tol_cert * r.diagnostics.scale).unwrap());
                }
                CopositivityVerdict::Refuted(w) => {
                    prop_assert!(h.eval(&w.x).unwrap() >= -opts.tol_feas);
                    prop_assert!(g.eval(&w.x).unwrap() <= -opts.tol_strict);
                }
                CopositivityVerdict::Indeterminate { margin, .. } => prop_assert!(margin < 0.0),
            }
        }
    }

    #[test]
    fn gram_schmidt_is_orthonormal(ms in prop::collection::vec(sym(3), 1..5)) {
        let basis = gram_schmidt(&ms, 1e-10).unwrap();
        prop_assert!(basis.len() <= ms.len());
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let d = trace_inner(a, b).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((d - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn dual_is_an_involution(k in cone()) {
        prop_assert!(k.dual().dual().approx_eq(&k, TOL_ANG));
    }

    #[test]
    fn dual_of_intersection_is_sum_of_duals(a in cone(), b in cone()) {
        let lhs = a.intersect(&b).dual();
        let rhs = a.dual().sum(&b.dual());
        prop_assert!(lhs.approx_eq(&rhs, TOL_ANG), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn intersect_and_sum_are_symmetric_and_idempotent(a in cone(), b in cone()) {
        prop_assert!(a.intersect(&b).approx_eq(&b.intersect(&a), TOL_ANG));
        prop_assert!(a.sum(&b).approx_eq(&b.sum(&a), TOL_ANG));
        prop_assert!(a.intersect(&a).approx_eq(&a, TOL_ANG));
        prop_assert!(a.sum(&a).approx_eq(&a, TOL_ANG));
    }

    #[test]
    fn duality_reverses_inclusion(a in cone(), b in cone(), th in 0.0..TAU) {
        // a ∩ b ⊆ a, so a* ⊆ (a ∩ b)*
        let u = [th.cos(), th.sin()];
        if a.dual().contains(u, 0.0) {
            prop_assert!(a.intersect(&b).dual().contains(u, 1e-9));
        }
    }

    #[test]
    fn dual_of_hull_is_the_pairing_cone(
        pts in prop::collection::vec((0.0..TAU, 0.1..5.0f64), 1..8),
        th in 0.0..TAU,
    ) {
        let c: Vec<Point2> = pts.iter().map(|(a, r)| [r * a.cos(), r * a.sin()]).collect();
        let u = [th.cos(), th.sin()];
        let pairing = c
            .iter()
            .map(|x| (x[0] * u[0] + x[1] * u[1]) / x[0].hypot(x[1]))
            .fold(f64::INFINITY, f64::min);
        prop_assume!(pairing.abs() > 1e-6);
        let d = conic_hull(&spherical_project(&c, 1e-9, 0.0), TOL_ANG).dual();
        prop_assert_eq!(d.contains(u, 1e-9), pairing >= 0.0);
    }

    #[test]
    fn homconvex_check_agrees_with_spherical_convexity(
        arcs in prop::collection::vec((0.0..TAU, 0.0..2.0f64), 1..4),
    ) {
        // dense samples of a union of arcs; the arc endpoints are included
        let set = AngularSet::from_arcs(arcs.iter().map(|(s, l)| Arc::new(*s, *l)).collect(), 0.0);
        let mut pts: Vec<Point2> = Vec::new();
        for a in set.arcs() {
            let k = (a.len / 1e-3).ceil() as usize + 1;
            for i in 0..=k {
                let t = a.start + a.len * i as f64 / k as f64;
                pts.push([t.cos(), t.sin()]);
            }
        }
        let convex = set.is_spherically_convex(1e-12);
        // skip configurations within the sampling resolution of the boundary
        let arcs = set.arcs();
        let gaps_ok = arcs.len() < 2
            || (0..arcs.len()).all(|i| {
                let next = &arcs[(i + 1) % arcs.len()];
                (next.start - arcs[i].end()).rem_euclid(TAU) > 0.05
            });
        let len_ok = set.arcs().len() != 1 || (set.arcs()[0].len - PI).abs() > 0.05;
        prop_assume!(gaps_ok && len_ok && !set.is_full());
        let r = hom_convex_check_against(&pts, &set, &HomConvexOptions {
            eps: 1e-3,
            segment_samples: 64,
            max_pairs: 2000,
            ..HomConvexOptions::default()
        });
        prop_assert_eq!(r.passed, convex, "{:?}", set);
        if !r.passed {
            let w = r.worst.unwrap();
            prop_assert!((angle_of(w.point) - w.angle).abs() < 1e-12);
        }
    }

    #[test]
    fn sprocedure_multiplier_is_feasible(
        start in 0.0..TAU, len in 0.0..PI,
        p0 in coeff(), p1 in coeff(), f0 in coeff(), f1 in coeff(),
    ) {
        let c = AngularSet::from_arcs(vec![Arc::new(start, len)], 0.0);
        let (psi, phi) = (LinearForm2([p0, p1]), LinearForm2([f0, f1]));
        match sprocedure_2d(&c, psi, phi, 1e-12) {
            Ok(SProcedure2d::Multiplier(xi)) => {
                prop_assert!(xi >= 0.0);
                for i in 0..=50 {
                    let t = start + len * i as f64 / 50.0;
                    let u = [t.cos(), t.sin()];
                    prop_assert!(psi.eval(u) - xi * phi.eval(u) >= -1e-9 * (1.0 + xi));
                }
            }
            Ok(SProcedure2d::Infeasible { witness }) => {
                prop_assert!(phi.eval(witness) >= -1e-9);
                prop_assert!(psi.eval(witness) < 0.0);
                prop_assert!(c.contains(angle_of(witness), 1e-9));
            }
            Err(_) => {}
        }
    }

    #[test]
    fn cone_spec_round_trip(k in cone()) {
        for unit in [AngleUnit::Degrees, AngleUnit::Radians] {
            let text = format_cone(&k, unit);
            let back = parse_cone_spec(&text, unit).unwrap();
            prop_assert!(back.approx_eq(&k, 1e-9), "{} -> {:?}", text, back);
        }
    }

    #[test]
    fn problem_file_round_trip_is_lossless(
        (g, h) in (1usize..=4).prop_flat_map(|n| {
            let big = prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO;
            (
                (prop::collection::vec(big, n * (n + 1) / 2), prop::collection::vec(big, n), big),
                (prop::collection::vec(big, n * (n + 1) / 2), prop::collection::vec(big, n), big),
            )
        }),
    ) {
        let mk = |(q, l, c): (Vec<f64>, Vec<f64>, f64)| {
            let mut it = q.into_iter();
            let n = l.len();
            QuadraticFunction::new(SymMatrix::from_upper_fn(n, |_, _| it.next().unwrap()).unwrap(), l, c).unwrap()
        };
        let (g, h) = (mk(g), mk(h));
        let p = ProblemFile::from_functions(&g, &h, Some(vec![0.5; g.dim()]));
        let back = ProblemFile::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.functions().unwrap(), (g, h));
    }

    #[test]
    fn verdict_report_round_trip((g, h) in pair()) {
        let opts = CertifyOptions { oracle_budget: 200, force: true, ..CertifyOptions::default() };
        if let Ok(r) = certify(&g, &h, &opts) {
            let rep = VerdictReport::new(&r, &opts, Some(1.25));
            prop_assert_eq!(VerdictReport::from_json(&rep.to_json()).unwrap(), rep);
        }
    }
}
