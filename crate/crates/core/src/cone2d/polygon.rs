//! Convex polygons, gauge values along rays and boundary sampling.

use super::{ConeError, Point2};

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

#[inline]
fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

impl ConvexPolygon {
    /// Vertices in counterclockwise order, strictly convex.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, ConeError> {
        let n = vertices.len();
        if n < 3 {
            return Err(ConeError::DegeneratePolygon);
        }
        if vertices.iter().flatten().any(|v| !v.is_finite()) {
            return Err(ConeError::NonFinite);
        }
        for i in 0..n {
            if cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) <= 0.0 {
                return Err(ConeError::NotConvex);
            }
        }
        let poly = ConvexPolygon { vertices };
        // a star polygon turns left at every vertex too
        if poly.signed_area() <= 0.0 || poly.winding_turns() != 1 {
            return Err(ConeError::NotConvex);
        }
        Ok(poly)
    }

    /// Convex hull of a point set (monotone chain), collinear points dropped.
    pub fn hull(points: &[Point2]) -> Result<Self, ConeError> {
        if points.iter().flatten().any(|v| !v.is_finite()) {
            return Err(ConeError::NonFinite);
        }
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        pts.dedup();
        if pts.len() < 3 {
            return Err(ConeError::DegeneratePolygon);
        }
        let mut lower: Vec<Point2> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point2> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self::new(lower)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        0.5 * (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a[0] * b[1] - a[1] * b[0]
            })
            .sum::<f64>()
    }

    fn winding_turns(&self) -> i64 {
        let n = self.vertices.len();
        let total: f64 = (0..n)
            .map(|i| {
                let (a, b, c) = (
                    self.vertices[i],
                    self.vertices[(i + 1) % n],
                    self.vertices[(i + 2) % n],
                );
                let u = [b[0] - a[0], b[1] - a[1]];
                let v = [c[0] - b[0], c[1] - b[1]];
                (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1])
            })
            .sum();
        (total / std::f64::consts::TAU).round() as i64
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                (b[0] - a[0]).hypot(b[1] - a[1])
            })
            .sum()
    }

    /// Membership with an absolute slack on each edge inequality.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let len = (b[0] - a[0]).hypot(b[1] - a[1]);
            cross(a, b, p) >= -tol * len
        })
    }

    /// Parameters `τ` with `τ·v ∈ P`, `τ ≥ 0`, as a closed interval.
    pub fn ray_interval(&self, v: Point2) -> Result<Option<(f64, f64)>, ConeError> {
        if !(v[0].is_finite() && v[1].is_finite()) {
            return Err(ConeError::NonFinite);
        }
        if v == [0.0, 0.0] {
            return Err(ConeError::ZeroDirection);
        }
        let (mut lo, mut hi) = (0.0_f64, f64::INFINITY);
        let n = self.vertices.len();
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let e = [q[0] - p[0], q[1] - p[1]];
            // inside: cross(e, τv − p) ≥ 0, i.e. τ·a ≥ b
            let a = e[0] * v[1] - e[1] * v[0];
            let b = e[0] * p[1] - e[1] * p[0];
            if a > 0.0 {
                lo = lo.max(b / a);
            } else if a < 0.0 {
                hi = hi.min(b / a);
            } else if b > 0.0 {
                return Ok(None);
            }
        }
        Ok(if lo <= hi { Some((lo, hi)) } else { None })
    }
}

/// `inf{τ ≥ 0 : τv ∈ P}`, `+∞` when the ray misses `P`.
pub fn gauge_inf(p: &ConvexPolygon, v: Point2) -> Result<f64, ConeError> {
    Ok(p.ray_interval(v)?.map_or(f64::INFINITY, |(lo, _)| lo))
}

/// `sup{τ ≥ 0 : τv ∈ P}`; a ray missing `P` is an error.
pub fn gauge_sup(p: &ConvexPolygon, v: Point2) -> Result<f64, ConeError> {
    p.ray_interval(v)?
        .map(|(_, hi)| hi)
        .ok_or(ConeError::RayMissesPolygon)
}

/// `m` boundary points spread by arc length, always including the vertices
/// (so `m` is raised to the vertex count if smaller).
pub fn polygon_boundary_sample(p: &ConvexPolygon, m: usize) -> Vec<Point2> {
    let v = p.vertices();
    let n = v.len();
    let m = m.max(n);
    let lens: Vec<f64> = (0..n)
        .map(|i| (v[(i + 1) % n][0] - v[i][0]).hypot(v[(i + 1) % n][1] - v[i][1]))
        .collect();
    let total: f64 = lens.iter().sum();
    let extra = m - n;
    // largest-remainder allocation of the non-vertex samples
    let shares: Vec<f64> = lens.iter().map(|l| extra as f64 * l / total).collect();
    let mut counts: Vec<usize> = shares.iter().map(|s| s.floor() as usize).collect();
    let mut left = extra - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        (shares[b] - shares[b].floor())
            .total_cmp(&(shares[a] - shares[a].floor()))
            .then(a.cmp(&b))
    });
    for &i in order.iter().cycle() {
        if left == 0 {
            break;
        }
        counts[i] += 1;
        left -= 1;
    }
    let mut out = Vec::with_capacity(m);
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        let k = counts[i] + 1;
        for j in 0..k {
            let t = j as f64 / k as f64;
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x0: f64, x1: f64, y0: f64, y1: f64) -> ConvexPolygon {
        ConvexPolygon::new(vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]]).unwrap()
    }

    #[test]
    fn gauges_of_offset_square() {
        let s = square(1.0, 2.0, -1.0, 1.0);
        assert_eq!(gauge_inf(&s, [1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(gauge_sup(&s, [1.0, 0.0]).unwrap(), 2.0);
        assert_eq!(gauge_inf(&s, [0.0, 1.0]).unwrap(), f64::INFINITY);
        assert_eq!(gauge_sup(&s, [0.0, 1.0]), Err(ConeError::RayMissesPolygon));
        assert_eq!(gauge_inf(&s, [0.0, 0.0]), Err(ConeError::ZeroDirection));
    }

    #[test]
    fn gauges_with_origin_inside() {
        let s = square(-1.0, 1.0, -1.0, 1.0);
        assert_eq!(gauge_inf(&s, [0.0, 2.0]).unwrap(), 0.0);
        assert_eq!(gauge_sup(&s, [0.0, 2.0]).unwrap(), 0.5);
        assert!((gauge_sup(&s, [1.0, 1.0]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unit_square_sampling() {
        let s = square(0.0, 1.0, 0.0, 1.0);
        let pts = polygon_boundary_sample(&s, 8);
        assert_eq!(
            pts,
            vec![
                [0.0, 0.0], [0.5, 0.0], [1.0, 0.0], [1.0, 0.5],
                [1.0, 1.0], [0.5, 1.0], [0.0, 1.0], [0.0, 0.5]
            ]
        );
        let tri = ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(polygon_boundary_sample(&tri, 3), tri.vertices().to_vec());
    }

    #[test]
    fn rejects_bad_polygons() {
        assert_eq!(
            ConvexPolygon::new(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]),
            Err(ConeError::NotConvex)
        );
        assert_eq!(
            ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0]]),
            Err(ConeError::DegeneratePolygon)
        );
        let hull = ConvexPolygon::hull(&[[0.0, 0.0], [1.0, 0.0], [0.5, 0.5], [1.0, 1.0], [0.0, 1.0], [0.5, 0.0]]).unwrap();
        assert_eq!(hull.vertices().len(), 4);
    }
}
