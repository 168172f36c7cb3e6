//! Reference computations that avoid the library's own algorithms: closed
//! form eigenvalues, dual-cone membership by brute-force sampling and
//! point-in-polygon edge tests.

#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use copositive::cone2d::{Cone2, Point2};

/// Eigenvalues of `[[a, b], [b, c]]` in ascending order.
pub fn eig2(a: f64, b: f64, c: f64) -> [f64; 2] {
    let mean = 0.5 * (a + c);
    let r = (0.5 * (a - c)).hypot(b);
    [mean - r, mean + r]
}

/// Eigenvalues of a symmetric 3x3 matrix (trigonometric solution of the
/// characteristic polynomial), ascending.
pub fn eig3(m: [[f64; 3]; 3]) -> [f64; 3] {
    let p1 = m[0][1].powi(2) + m[0][2].powi(2) + m[1][2].powi(2);
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return [q, q, q];
    }
    let b: Vec<Vec<f64>> = (0..3)
        .map(|i| (0..3).map(|j| (m[i][j] - if i == j { q } else { 0.0 }) / p).collect())
        .collect();
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (det / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut e = [e1, e2, e3];
    e.sort_by(|a, b| a.total_cmp(b));
    e
}

/// Unit directions sampling a cone straight from its variant description.
pub fn cone_directions(k: &Cone2, per_arc: usize) -> Vec<Point2> {
    let at = |t: f64| [t.cos(), t.sin()];
    match *k {
        Cone2::Zero => vec![],
        Cone2::Ray(a) => vec![at(a.rad())],
        Cone2::Line(a) => vec![at(a.rad()), at(a.rad() + PI)],
        Cone2::Wedge { start, width } => (0..=per_arc)
            .map(|i| at(start.rad() + width * i as f64 / per_arc as f64))
            .collect(),
        Cone2::Plane => (0..per_arc).map(|i| at(TAU * i as f64 / per_arc as f64)).collect(),
    }
}

/// `min ⟨x, u⟩` over the sampled directions of `k` (`+∞` for `{0}`).
pub fn min_pairing(k: &Cone2, u: Point2, per_arc: usize) -> f64 {
    cone_directions(k, per_arc)
        .iter()
        .map(|x| x[0] * u[0] + x[1] * u[1])
        .fold(f64::INFINITY, f64::min)
}

/// Distance from `p` to the closed polygon boundary.
pub fn boundary_distance(vertices: &[Point2], p: Point2) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            let d = [b[0] - a[0], b[1] - a[1]];
            let t = (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / (d[0] * d[0] + d[1] * d[1]))
                .clamp(0.0, 1.0);
            (p[0] - a[0] - t * d[0]).hypot(p[1] - a[1] - t * d[1])
        })
        .fold(f64::INFINITY, f64::min)
}
