//! Finite unions of closed arcs on the unit circle.

use std::f64::consts::{PI, TAU};

use super::cone::{angle_of, wrap_angle, Cone2, TOL_ANG};
use super::Point2;

/// Merge gap used when building direction sets from dense samples.
pub const DEFAULT_MERGE_GAP: f64 = TAU / 4096.0;

/// Relative radius below which a sample is treated as the origin.
pub const DEFAULT_TOL_ORIGIN: f64 = 1e-9;

/// Closed arc `[start, start + len]`, counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub start: f64,
    pub len: f64,
}

impl Arc {
    pub fn new(start: f64, len: f64) -> Self {
        Arc {
            start: wrap_angle(start),
            len: len.clamp(0.0, TAU),
        }
    }

    pub fn point(theta: f64) -> Self {
        Self::new(theta, 0.0)
    }

    pub fn full() -> Self {
        Arc { start: 0.0, len: TAU }
    }

    pub fn end(&self) -> f64 {
        self.start + self.len
    }

    pub fn is_full(&self) -> bool {
        self.len >= TAU
    }

    /// Angular distance from `theta` to the arc.
    pub fn distance(&self, theta: f64) -> f64 {
        if self.is_full() {
            return 0.0;
        }
        let off = wrap_angle(theta - self.start);
        if off <= self.len {
            0.0
        } else {
            (off - self.len).min(TAU - off)
        }
    }
}

/// Sorted, pairwise disjoint arcs; the full circle is the single arc
/// `[0, 2π]`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct AngularSet {
    arcs: Vec<Arc>,
}

impl AngularSet {
    pub fn empty() -> Self {
        AngularSet { arcs: vec![] }
    }

    pub fn full() -> Self {
        AngularSet {
            arcs: vec![Arc::full()],
        }
    }

    /// Normalizes arbitrary arcs; arcs separated by at most `merge_gap`
    /// (including across the 0/2π seam) are joined.
    pub fn from_arcs(raw: Vec<Arc>, merge_gap: f64) -> Self {
        if raw.is_empty() {
            return Self::empty();
        }
        if raw.iter().any(|a| a.len >= TAU - merge_gap) {
            return Self::full();
        }
        let mut iv: Vec<(f64, f64)> = raw
            .iter()
            .map(|a| {
                let s = wrap_angle(a.start);
                (s, s + a.len)
            })
            .collect();
        iv.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(iv.len());
        for (s, e) in iv {
            match merged.last_mut() {
                Some(last) if s <= last.1 + merge_gap => last.1 = last.1.max(e),
                _ => merged.push((s, e)),
            }
        }
        // the last arc may run past 2π into the first ones
        while merged.len() > 1 {
            let last_end = merged[merged.len() - 1].1;
            let (fs, fe) = merged[0];
            if fs + TAU <= last_end + merge_gap {
                let last = merged.last_mut().unwrap();
                last.1 = last.1.max(fe + TAU);
                merged.remove(0);
            } else {
                break;
            }
        }
        if merged.len() == 1 && merged[0].1 - merged[0].0 >= TAU - merge_gap {
            return Self::full();
        }
        AngularSet {
            arcs: merged
                .into_iter()
                .map(|(s, e)| Arc { start: s, len: e - s })
                .collect(),
        }
    }

    pub fn from_angles(angles: impl IntoIterator<Item = f64>, merge_gap: f64) -> Self {
        Self::from_arcs(angles.into_iter().map(Arc::point).collect(), merge_gap)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].is_full()
    }

    /// Total angular measure.
    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(|a| a.len).sum()
    }

    /// Angular distance from `theta` to the set (`+∞` when empty).
    pub fn distance(&self, theta: f64) -> f64 {
        let n = self.arcs.len();
        if n == 0 {
            return f64::INFINITY;
        }
        let t = wrap_angle(theta);
        let idx = self.arcs.partition_point(|a| a.start <= t);
        let prev = if idx == 0 { n - 1 } else { idx - 1 };
        let next = if idx == n { 0 } else { idx };
        [prev, next, 0, n - 1]
            .iter()
            .map(|&k| self.arcs[k].distance(t))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, theta: f64, tol: f64) -> bool {
        self.distance(theta) <= tol
    }

    pub fn union(&self, other: &AngularSet, merge_gap: f64) -> AngularSet {
        let mut arcs = self.arcs.clone();
        arcs.extend_from_slice(&other.arcs);
        Self::from_arcs(arcs, merge_gap)
    }

    /// Intersection; arcs that touch within `tol` meet in a point.
    pub fn intersect(&self, other: &AngularSet, tol: f64) -> AngularSet {
        let mut pieces = Vec::new();
        for a in &self.arcs {
            for b in &other.arcs {
                for k in -1..=1 {
                    let shift = k as f64 * TAU;
                    let lo = a.start.max(b.start + shift);
                    let hi = a.end().min(b.end() + shift);
                    if hi >= lo - tol {
                        pieces.push(Arc::new(lo, (hi - lo).max(0.0)));
                    }
                }
            }
        }
        Self::from_arcs(pieces, tol)
    }

    pub fn intersect_cone(&self, k: &Cone2, tol: f64) -> AngularSet {
        self.intersect(&k.directions(), tol)
    }

    /// Whether the set of directions is spherically convex: empty, a single
    /// point or arc of length at most π, an antipodal pair, or everything.
    pub fn is_spherically_convex(&self, tol: f64) -> bool {
        match self.arcs.as_slice() {
            [] => true,
            [a] => a.is_full() || a.len <= PI + tol,
            [a, b] => {
                a.len <= tol && b.len <= tol && ((b.start - a.start) - PI).abs() <= tol
            }
            _ => false,
        }
    }
}

/// Directions of the nonzero points, `{x/‖x‖ : x ∈ C, ‖x‖ > tol_origin·r}`
/// with `r` the largest norm in `C`.
pub fn spherical_project(points: &[Point2], tol_origin: f64, merge_gap: f64) -> AngularSet {
    let r = max_norm(points);
    AngularSet::from_angles(
        points
            .iter()
            .filter(|p| norm(**p) > tol_origin * r && norm(**p) > 0.0)
            .map(|p| angle_of(*p)),
        merge_gap,
    )
}

/// Direction set of a polyline: every edge contributes the arc it sweeps
/// as seen from the origin. Edges passing through the origin only
/// contribute their endpoints. Arcs meeting within [`TOL_ANG`] are joined.
pub fn polyline_angular_set(points: &[Point2], closed: bool, tol_origin: f64) -> AngularSet {
    let r = max_norm(points);
    let small = tol_origin * r;
    let mut arcs = Vec::new();
    let n = points.len();
    let edges = if closed { n } else { n.saturating_sub(1) };
    for &p in points {
        if norm(p) > small && norm(p) > 0.0 {
            arcs.push(Arc::point(angle_of(p)));
        }
    }
    for i in 0..edges {
        let p = points[i];
        let q = points[(i + 1) % n];
        if norm(p) <= small || norm(q) <= small || segment_origin_distance(p, q) <= small {
            continue;
        }
        let cross = p[0] * q[1] - p[1] * q[0];
        let dot = p[0] * q[0] + p[1] * q[1];
        let sweep = cross.atan2(dot);
        let a = angle_of(p);
        if sweep >= 0.0 {
            arcs.push(Arc::new(a, sweep));
        } else {
            arcs.push(Arc::new(a + sweep, -sweep));
        }
    }
    AngularSet::from_arcs(arcs, TOL_ANG)
}

/// `closure(cone(S))` for a direction set `S`, classified by its largest gap.
pub fn conic_hull(set: &AngularSet, tol: f64) -> Cone2 {
    let arcs = set.arcs();
    if arcs.is_empty() {
        return Cone2::Zero;
    }
    if set.is_full() {
        return Cone2::Plane;
    }
    let n = arcs.len();
    let (mut best_gap, mut best_next) = (-1.0, 0);
    for i in 0..n {
        let next = (i + 1) % n;
        let gap = if n == 1 {
            TAU - arcs[0].len
        } else if next == 0 {
            arcs[0].start + TAU - arcs[i].end()
        } else {
            arcs[next].start - arcs[i].end()
        };
        if gap > best_gap {
            best_gap = gap;
            best_next = next;
        }
    }
    let start = arcs[best_next].start;
    if best_gap > PI + tol {
        let width = TAU - best_gap;
        return Cone2::wedge(start, width).expect("hull width lies in [0, π)");
    }
    if best_gap >= PI - tol {
        let on_boundary = arcs.iter().all(|a| {
            a.len <= tol
                && (super::cone::angle_dist(a.start, start) <= tol
                    || super::cone::angle_dist(a.start, start + PI) <= tol)
        });
        return if on_boundary {
            Cone2::line(start)
        } else {
            Cone2::Wedge {
                start: super::cone::Angle::new(start),
                width: PI,
            }
        };
    }
    Cone2::Plane
}

#[inline]
pub(crate) fn norm(p: Point2) -> f64 {
    p[0].hypot(p[1])
}

fn max_norm(points: &[Point2]) -> f64 {
    points.iter().map(|p| norm(*p)).fold(0.0, f64::max)
}

fn segment_origin_distance(p: Point2, q: Point2) -> f64 {
    let d = [q[0] - p[0], q[1] - p[1]];
    let dd = d[0] * d[0] + d[1] * d[1];
    if dd == 0.0 {
        return norm(p);
    }
    let t = (-(p[0] * d[0] + p[1] * d[1]) / dd).clamp(0.0, 1.0);
    norm([p[0] + t * d[0], p[1] + t * d[1]])
}
