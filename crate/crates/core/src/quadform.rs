//! Quadratic functions `g(x) = xᵀQx + 2ℓᵀx + c`, their symmetric lifting
//! `[Q ℓ; ℓᵀ c]`, closed-form restrictions to lines, and the line-based
//! counterexample oracle for copositivity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::symcore::{self, dot, norm2, LinalgError, SymMatrix};

pub const DEFAULT_TOL_FEAS: f64 = 1e-9;
pub const DEFAULT_TOL_STRICT: f64 = 1e-7;
pub const DEFAULT_ORACLE_BUDGET: usize = 2000;
/// Depth reported for lines along which `g` is unbounded below on `{h ≥ 0}`.
pub const DEFAULT_UNBOUNDED_CAP: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("line direction is zero")]
    ZeroDirection,
    #[error("coefficients must be finite")]
    NonFinite,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, QuadError>;

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(QuadError::DimensionMismatch { expected, found })
    }
}

/// `x ↦ xᵀQx + 2ℓᵀx + c` on `Rⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticFunction {
    q: SymMatrix,
    l: Vec<f64>,
    c: f64,
}

impl QuadraticFunction {
    pub fn new(q: SymMatrix, l: Vec<f64>, c: f64) -> Result<Self> {
        check_len(q.dim(), l.len())?;
        if !c.is_finite() || l.iter().any(|v| !v.is_finite()) {
            return Err(QuadError::NonFinite);
        }
        Ok(QuadraticFunction { q, l, c })
    }

    /// The constant function `c` on `Rⁿ`.
    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::new(SymMatrix::zeros(n), vec![0.0; n], c)
    }

    /// One-dimensional `q·x² + 2ℓ·x + c`.
    pub fn univariate(q: f64, l: f64, c: f64) -> Result<Self> {
        Self::new(SymMatrix::from_diag(&[q])?, vec![l], c)
    }

    pub fn dim(&self) -> usize {
        self.l.len()
    }

    pub fn q(&self) -> &SymMatrix {
        &self.q
    }

    pub fn l(&self) -> &[f64] {
        &self.l
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        check_len(self.dim(), x.len())?;
        Ok(self.q.quad_form(x)? + 2.0 * dot(&self.l, x) + self.c)
    }

    /// `∇g(x) = 2(Qx + ℓ)`.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let qx = self.q.mul_vec(x)?;
        Ok(qx.iter().zip(&self.l).map(|(a, b)| 2.0 * (a + b)).collect())
    }

    pub fn lift(&self) -> LiftedMatrix {
        let n = self.dim();
        let m = SymMatrix::from_upper_fn(n + 1, |i, j| match (i < n, j < n) {
            (true, true) => self.q.get(i, j),
            (true, false) => self.l[i],
            (false, true) => self.l[j],
            (false, false) => self.c,
        })
        .expect("finite by construction");
        LiftedMatrix(m)
    }

    /// `λ·self + μ·other`.
    pub fn lin_comb(&self, lambda: f64, other: &QuadraticFunction, mu: f64) -> Result<Self> {
        check_len(self.dim(), other.dim())?;
        Self::new(
            self.q.lin_comb(lambda, &other.q, mu)?,
            self.l
                .iter()
                .zip(&other.l)
                .map(|(a, b)| lambda * a + mu * b)
                .collect(),
            lambda * self.c + mu * other.c,
        )
    }
}

/// `[Q ℓ; ℓᵀ c]`, a symmetric matrix of dimension `n + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedMatrix(SymMatrix);

impl LiftedMatrix {
    /// Wraps any symmetric matrix of dimension at least 1; the last row and
    /// column are read as `(ℓ, c)`.
    pub fn from_sym(m: SymMatrix) -> Result<Self> {
        if m.dim() == 0 {
            return Err(LinalgError::EmptyMatrix.into());
        }
        Ok(LiftedMatrix(m))
    }

    pub fn as_sym(&self) -> &SymMatrix {
        &self.0
    }

    pub fn into_sym(self) -> SymMatrix {
        self.0
    }

    pub fn unlift(&self) -> QuadraticFunction {
        let n = self.0.dim() - 1;
        let q = SymMatrix::from_upper_fn(n, |i, j| self.0.get(i, j)).expect("finite");
        let l = (0..n).map(|i| self.0.get(i, n)).collect();
        QuadraticFunction {
            q,
            l,
            c: self.0.get(n, n),
        }
    }
}

/// `[x;1][x;1]ᵀ`.
pub fn rank1(x: &[f64]) -> SymMatrix {
    let mut z = x.to_vec();
    z.push(1.0);
    SymMatrix::rank_one(&z).expect("finite input")
}

/// `g ≥ 0` on all of `Rⁿ`, decided through PSD-ness of the lifting.
pub fn is_globally_nonneg(g: &QuadraticFunction, tol: f64) -> Result<bool> {
    Ok(symcore::is_psd(g.lift().as_sym(), tol)?)
}

/// `q(t) = αt² + βt + γ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnivariateQuadratic {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl UnivariateQuadratic {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        UnivariateQuadratic { alpha, beta, gamma }
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        (self.alpha * t + self.beta) * t + self.gamma
    }

    fn coeff_scale(&self) -> f64 {
        self.alpha.abs().max(self.beta.abs()).max(self.gamma.abs())
    }
}

/// Restriction of `g` to the line `t ↦ x0 + t·dir`.
pub fn restrict_line(
    g: &QuadraticFunction,
    x0: &[f64],
    dir: &[f64],
) -> Result<UnivariateQuadratic> {
    check_len(g.dim(), x0.len())?;
    check_len(g.dim(), dir.len())?;
    if dir.iter().all(|&d| d == 0.0) {
        return Err(QuadError::ZeroDirection);
    }
    let qd = g.q.mul_vec(dir)?;
    let alpha = dot(dir, &qd);
    let beta = 2.0 * (dot(x0, &qd) + dot(&g.l, dir));
    let gamma = g.eval(x0)?;
    Ok(UnivariateQuadratic { alpha, beta, gamma })
}

/// Closed interval over the extended reals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// Sorted, pairwise disjoint closed intervals.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn real_line() -> Self {
        Self::from_intervals(vec![Interval::new(f64::NEG_INFINITY, f64::INFINITY)])
    }

    /// Sorts and merges overlapping or touching intervals.
    pub fn from_intervals(mut v: Vec<Interval>) -> Self {
        v.retain(|i| i.lo <= i.hi);
        v.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for i in v {
            match out.last_mut() {
                Some(last) if i.lo <= last.hi => last.hi = last.hi.max(i.hi),
                _ => out.push(i),
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(t))
    }
}

/// Both real roots of `αt² + βt + γ` (α ≠ 0, discriminant `disc > 0`), ascending.
fn stable_roots(q: &UnivariateQuadratic, disc: f64) -> (f64, f64) {
    let sq = disc.sqrt();
    let w = -0.5 * (q.beta + q.beta.signum() * sq);
    let (r1, r2) = if w == 0.0 {
        // β = 0 and disc = 0 is excluded by the caller, so w = 0 only if β = 0
        let r = (-q.gamma / q.alpha).sqrt();
        (-r, r)
    } else {
        (w / q.alpha, q.gamma / w)
    };
    if r1 <= r2 {
        (r1, r2)
    } else {
        (r2, r1)
    }
}

/// `{t : q(t) ≥ 0}` in closed form. Coefficients with magnitude at most
/// `tol` are treated as zero.
pub fn nonneg_region(q: &UnivariateQuadratic, tol: f64) -> IntervalSet {
    let ninf = f64::NEG_INFINITY;
    let inf = f64::INFINITY;
    if q.alpha.abs() <= tol {
        if q.beta.abs() <= tol {
            return if q.gamma >= 0.0 {
                IntervalSet::real_line()
            } else {
                IntervalSet::empty()
            };
        }
        let r = -q.gamma / q.beta;
        let iv = if q.beta > 0.0 {
            Interval::new(r, inf)
        } else {
            Interval::new(ninf, r)
        };
        return IntervalSet::from_intervals(vec![iv]);
    }
    let disc = q.beta * q.beta - 4.0 * q.alpha * q.gamma;
    if q.alpha > 0.0 {
        if disc <= 0.0 {
            IntervalSet::real_line()
        } else {
            let (r1, r2) = stable_roots(q, disc);
            IntervalSet::from_intervals(vec![Interval::new(ninf, r1), Interval::new(r2, inf)])
        }
    } else if disc < 0.0 {
        IntervalSet::empty()
    } else if disc == 0.0 {
        let v = -q.beta / (2.0 * q.alpha);
        IntervalSet::from_intervals(vec![Interval::new(v, v)])
    } else {
        let (r1, r2) = stable_roots(q, disc);
        IntervalSet::from_intervals(vec![Interval::new(r1, r2)])
    }
}

/// Minimum of a univariate quadratic over an interval set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineMinimum {
    pub t: f64,
    pub value: f64,
    /// The infimum is −∞; `t` is a witness with `value ≤ −cap`.
    pub unbounded: bool,
}

/// Point `t` in `[lo, ∞)` (`dir = 1`) or `(−∞, hi]` (`dir = −1`) with
/// `q(t) ≤ −cap`, given that `q → −∞` in that direction.
fn unbounded_witness(q: &UnivariateQuadratic, edge: f64, dir: f64, cap: f64, tol: f64) -> f64 {
    let shifted = UnivariateQuadratic::new(q.alpha, q.beta, q.gamma + cap);
    let mut t = if q.alpha.abs() > tol {
        let disc = shifted.beta * shifted.beta - 4.0 * shifted.alpha * shifted.gamma;
        if disc > 0.0 {
            let (r1, r2) = stable_roots(&shifted, disc);
            if dir > 0.0 {
                r2
            } else {
                r1
            }
        } else {
            edge
        }
    } else {
        -(q.gamma + cap) / q.beta
    };
    if !t.is_finite() {
        t = edge;
    }
    if edge.is_finite() {
        t = if dir > 0.0 { t.max(edge) } else { t.min(edge) };
    }
    // guard against rounding at the root itself
    let mut step = t.abs().max(1.0);
    let mut guard = 0;
    while q.eval(t) > -cap && guard < 64 {
        t += dir * step;
        step *= 2.0;
        guard += 1;
    }
    t
}

/// Closed-form minimizer of `q` on `s`. Returns `None` when `s` is empty.
pub fn min_on_intervals(
    q: &UnivariateQuadratic,
    s: &IntervalSet,
    cap: f64,
    tol: f64,
) -> Option<LineMinimum> {
    let linear = q.alpha.abs() <= tol;
    let constant = linear && q.beta.abs() <= tol;
    let mut best: Option<LineMinimum> = None;
    let mut consider = |cand: LineMinimum| {
        let better = match &best {
            None => true,
            Some(b) => (cand.unbounded && !b.unbounded) || (cand.unbounded == b.unbounded && cand.value < b.value),
        };
        if better {
            best = Some(cand);
        }
    };
    for iv in s.intervals() {
        let left_open = iv.lo == f64::NEG_INFINITY;
        let right_open = iv.hi == f64::INFINITY;
        let down_right = if constant {
            false
        } else if linear {
            q.beta < 0.0
        } else {
            q.alpha < 0.0
        };
        let down_left = if constant {
            false
        } else if linear {
            q.beta > 0.0
        } else {
            q.alpha < 0.0
        };
        if right_open && down_right {
            let t = unbounded_witness(q, iv.lo, 1.0, cap, tol);
            consider(LineMinimum { t, value: q.eval(t), unbounded: true });
            continue;
        }
        if left_open && down_left {
            let t = unbounded_witness(q, iv.hi, -1.0, cap, tol);
            consider(LineMinimum { t, value: q.eval(t), unbounded: true });
            continue;
        }
        let mut cands = Vec::with_capacity(3);
        if iv.lo.is_finite() {
            cands.push(iv.lo);
        }
        if iv.hi.is_finite() {
            cands.push(iv.hi);
        }
        if !linear && q.alpha > 0.0 {
            let v = -q.beta / (2.0 * q.alpha);
            if iv.contains(v) {
                cands.push(v);
            }
        }
        if cands.is_empty() {
            // constant (or bounded-below linear direction) on an unbounded interval
            let t = if iv.contains(0.0) { 0.0 } else if iv.lo.is_finite() { iv.lo } else { iv.hi };
            cands.push(t);
        }
        for t in cands {
            consider(LineMinimum { t, value: q.eval(t), unbounded: false });
        }
    }
    best
}

/// A point where `h ≥ 0` but `g < 0`, re-verified at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub x: Vec<f64>,
    pub h_val: f64,
    pub g_val: f64,
}

impl Counterexample {
    /// Evaluates both functions at `x`; returns `None` unless
    /// `h(x) ≥ −tol_feas` and `g(x) ≤ −tol_strict`.
    pub fn verify(
        g: &QuadraticFunction,
        h: &QuadraticFunction,
        x: Vec<f64>,
        tol_feas: f64,
        tol_strict: f64,
    ) -> Result<Option<Self>> {
        let g_val = g.eval(&x)?;
        let h_val = h.eval(&x)?;
        if x.iter().all(|v| v.is_finite()) && h_val >= -tol_feas && g_val <= -tol_strict {
            Ok(Some(Counterexample { x, h_val, g_val }))
        } else {
            Ok(None)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleOptions {
    pub budget: usize,
    pub seed: u64,
    pub tol_feas: f64,
    pub tol_strict: f64,
    pub unbounded_cap: f64,
    /// Multiplier whose pencil `lift(g) − ξ·lift(h)` seeds the first lines.
    pub hint_xi: Option<f64>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            budget: DEFAULT_ORACLE_BUDGET,
            seed: 0,
            tol_feas: DEFAULT_TOL_FEAS,
            tol_strict: DEFAULT_TOL_STRICT,
            unbounded_cap: DEFAULT_UNBOUNDED_CAP,
            hint_xi: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub witness: Option<Counterexample>,
    /// Lines examined, including the one that produced the witness.
    pub trials: usize,
}

/// Line-based search for `x` with `h(x) ≥ 0 > g(x)`.
///
/// Each trial restricts both functions to a line, computes `{t : h ≥ 0}` in
/// closed form and minimizes the restricted `g` over it exactly. Lines come
/// from (a) the eigenvectors of the pencil at `hint_xi`, (b) coordinate axes
/// through random anchors, (c) Gaussian random lines.
pub fn oracle_search(
    g: &QuadraticFunction,
    h: &QuadraticFunction,
    opts: &OracleOptions,
) -> Result<OracleReport> {
    check_len(g.dim(), h.dim())?;
    let mut search = LineSearch::new(g, h, opts);
    if let Some(xi) = opts.hint_xi {
        for (anchor, dirs) in pencil_seed_lines(g, h, xi, &mut search.rng)? {
            for d in dirs {
                if let Some(done) = search.trial(&anchor, &d)? {
                    return Ok(done);
                }
            }
        }
    }
    let n = g.dim();
    while search.trials < opts.budget {
        let k = search.trials;
        let scale = [1.0, 3.0, 0.3, 10.0][k % 4];
        let anchor: Vec<f64> = (0..n).map(|_| scale * search.normal()).collect();
        let dir: Vec<f64> = if k % 3 == 0 {
            let mut e = vec![0.0; n];
            e[(k / 3) % n] = 1.0;
            e
        } else {
            (0..n).map(|_| search.normal()).collect()
        };
        if let Some(done) = search.trial(&anchor, &dir)? {
            return Ok(done);
        }
    }
    Ok(OracleReport {
        witness: None,
        trials: search.trials,
    })
}

struct LineSearch<'a> {
    g: &'a QuadraticFunction,
    h: &'a QuadraticFunction,
    opts: &'a OracleOptions,
    rng: ChaCha8Rng,
    trials: usize,
}

impl<'a> LineSearch<'a> {
    fn new(g: &'a QuadraticFunction, h: &'a QuadraticFunction, opts: &'a OracleOptions) -> Self {
        LineSearch {
            g,
            h,
            opts,
            rng: ChaCha8Rng::seed_from_u64(opts.seed),
            trials: 0,
        }
    }

    fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Runs one line; `Some` ends the search (witness found or budget spent).
    fn trial(&mut self, anchor: &[f64], dir: &[f64]) -> Result<Option<OracleReport>> {
        if self.trials >= self.opts.budget {
            return Ok(Some(OracleReport {
                witness: None,
                trials: self.trials,
            }));
        }
        let dn = norm2(dir);
        if dn <= 0.0 || !dn.is_finite() || anchor.iter().any(|v| !v.is_finite()) {
            return Ok(None);
        }
        self.trials += 1;
        let dir: Vec<f64> = dir.iter().map(|v| v / dn).collect();
        let qh = restrict_line(self.h, anchor, &dir)?;
        let qg = restrict_line(self.g, anchor, &dir)?;
        let s = nonneg_region(&qh, 1e-14 * qh.coeff_scale().max(1.0));
        let tol_g = 1e-14 * qg.coeff_scale().max(1.0);
        let Some(best) = min_on_intervals(&qg, &s, self.opts.unbounded_cap, tol_g) else {
            return Ok(None);
        };
        if best.value > -self.opts.tol_strict {
            return Ok(None);
        }
        // candidate parameters: the minimizer, then points pulled back toward
        // the anchor in case rounding at large |t| spoils h ≥ 0
        let mut t = best.t;
        for _ in 0..48 {
            let x: Vec<f64> = anchor.iter().zip(&dir).map(|(a, d)| a + t * d).collect();
            if let Some(w) =
                Counterexample::verify(self.g, self.h, x, self.opts.tol_feas, self.opts.tol_strict)?
            {
                return Ok(Some(OracleReport {
                    witness: Some(w),
                    trials: self.trials,
                }));
            }
            let next = 0.5 * t;
            if !s.contains(next) || qg.eval(next) > -self.opts.tol_strict {
                break;
            }
            t = next;
        }
        Ok(None)
    }
}

/// Splits `z = (y, s) ∈ Rⁿ⁺¹` into a finite anchor `y/s` or, when `s` is
/// negligible, an asymptotic direction `y`.
pub(crate) enum Dehomogenized {
    Point(Vec<f64>),
    Direction(Vec<f64>),
}

pub(crate) fn dehomogenize(z: &[f64]) -> Dehomogenized {
    let n = z.len() - 1;
    let s = z[n];
    if s.abs() > 1e-8 * norm2(z) {
        Dehomogenized::Point(z[..n].iter().map(|v| v / s).collect())
    } else {
        Dehomogenized::Direction(z[..n].to_vec())
    }
}

/// Unit vectors `u = cos θ·z1 + sin θ·z2` with `uᵀBu = 0`.
fn isotropic_combinations(b: &SymMatrix, z1: &[f64], z2: &[f64]) -> Vec<Vec<f64>> {
    let b11 = b.quad_form(z1).unwrap_or(0.0);
    let b22 = b.quad_form(z2).unwrap_or(0.0);
    let bz2 = b.mul_vec(z2).unwrap_or_default();
    let b12 = dot(z1, &bz2);
    // b11 c² + 2 b12 c s + b22 s² = 0; parametrize by r = s/c, plus c = 0
    let mut out = Vec::new();
    let mut push = |c: f64, s: f64| {
        let u: Vec<f64> = z1.iter().zip(z2).map(|(a, b)| c * a + s * b).collect();
        let un = norm2(&u);
        if un > 0.0 {
            out.push(u.into_iter().map(|v| v / un).collect());
        }
    };
    if b22.abs() > 0.0 {
        let disc = b12 * b12 - b11 * b22;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            push(b22, -b12 + sq);
            push(b22, -b12 - sq);
        }
    } else if b12.abs() > 0.0 {
        push(0.0, 1.0);
        push(2.0 * b12, -b11);
    }
    out
}

type SeedLines = Vec<(Vec<f64>, Vec<Vec<f64>>)>;

/// Lines built from the eigenvectors of `lift(g) − ξ·lift(h)`.
fn pencil_seed_lines(
    g: &QuadraticFunction,
    h: &QuadraticFunction,
    xi: f64,
    rng: &mut ChaCha8Rng,
) -> Result<SeedLines> {
    let n = g.dim();
    let a = g.lift();
    let b = h.lift();
    let m = a.as_sym().sub_scaled(xi, b.as_sym())?;
    let e = symcore::eigen_sym(&m, symcore::DEFAULT_TOL_EIG)?;
    // lowest eigenvector, B-isotropic mixes of the lowest few, then the rest
    let mut seeds: Vec<Vec<f64>> = vec![e.vector(0).to_vec()];
    let low = (n + 1).min(3);
    for i in 0..low {
        for j in (i + 1)..low {
            seeds.extend(isotropic_combinations(b.as_sym(), e.vector(i), e.vector(j)));
        }
    }
    seeds.extend(e.vectors().skip(1).map(|v| v.to_vec()));

    let mut axes: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            v
        })
        .collect();
    for _ in 0..2 {
        axes.push((0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect());
    }

    let mut lines = Vec::new();
    let mut anchors: Vec<Vec<f64>> = vec![vec![0.0; n]];
    let mut directions: Vec<Vec<f64>> = Vec::new();
    for z in &seeds {
        match dehomogenize(z) {
            Dehomogenized::Point(x) => {
                let mut dirs = Vec::with_capacity(axes.len() + 2);
                if let Ok(gh) = h.gradient(&x) {
                    dirs.push(gh);
                }
                if let Ok(gg) = g.gradient(&x) {
                    dirs.push(gg.iter().map(|v| -v).collect());
                }
                dirs.extend(axes.iter().cloned());
                anchors.push(x.clone());
                lines.push((x, dirs));
            }
            Dehomogenized::Direction(y) => directions.push(y),
        }
    }
    anchors.push((0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect());
    for y in directions {
        for a in &anchors {
            lines.push((a.clone(), vec![y.clone()]));
        }
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sq(q: &[f64], l: &[f64], c: f64) -> QuadraticFunction {
        let n = l.len();
        QuadraticFunction::new(SymMatrix::from_row_major(n, q, 0.0).unwrap(), l.to_vec(), c).unwrap()
    }

    #[test]
    fn eval_examples() {
        let g = QuadraticFunction::univariate(1.0, 0.0, -1.0).unwrap();
        assert_eq!(g.eval(&[2.0]).unwrap(), 3.0);
        let g = sq(&[1.0, 0.0, 0.0, 1.0], &[1.0, 0.0], 0.0);
        assert_eq!(g.eval(&[1.0, 1.0]).unwrap(), 4.0);
        assert_eq!(g.eval(&[0.0, 0.0]).unwrap(), g.c());
        assert!(matches!(g.eval(&[1.0]), Err(QuadError::DimensionMismatch { .. })));
    }

    #[test]
    fn lift_examples() {
        let g = QuadraticFunction::univariate(1.0, 0.0, -1.0).unwrap();
        assert_eq!(g.lift().as_sym(), &SymMatrix::from_diag(&[1.0, -1.0]).unwrap());
        let z = QuadraticFunction::constant(2, 0.0).unwrap();
        assert_eq!(z.lift().as_sym(), &SymMatrix::zeros(3));
        let lin = QuadraticFunction::univariate(0.0, 1.0, 0.0).unwrap();
        assert_eq!(lin.lift().as_sym().to_rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(lin.lift().unlift(), lin);
    }

    #[test]
    fn global_nonneg_examples() {
        let tol = 1e-9;
        assert!(is_globally_nonneg(&QuadraticFunction::univariate(1.0, 0.0, 0.0).unwrap(), tol).unwrap());
        assert!(!is_globally_nonneg(&QuadraticFunction::univariate(1.0, 0.0, -1.0).unwrap(), tol).unwrap());
        // (x − 1)² = x² − 2x + 1, so ℓ = −1
        assert!(is_globally_nonneg(&QuadraticFunction::univariate(1.0, -1.0, 1.0).unwrap(), tol).unwrap());
    }

    #[test]
    fn restrict_line_examples() {
        let g = sq(&[1.0, 0.0, 0.0, 1.0], &[0.0, 0.0], -1.0);
        let q = restrict_line(&g, &[0.0, 0.0], &[1.0, 0.0]).unwrap();
        assert_eq!(q, UnivariateQuadratic::new(1.0, 0.0, -1.0));

        let g = sq(&[0.0, 0.5, 0.5, 0.0], &[0.0, 0.0], 0.0);
        let q = restrict_line(&g, &[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(q, UnivariateQuadratic::new(0.0, 1.0, 0.0));

        let g = sq(&[2.0, -1.0, -1.0, 0.5], &[0.3, -0.7], 1.5);
        let x0 = [0.2, -1.0];
        let base = restrict_line(&g, &x0, &[1.0, 2.0]).unwrap();
        let scaled = restrict_line(&g, &x0, &[3.0, 6.0]).unwrap();
        assert_abs_diff_eq!(scaled.alpha, 9.0 * base.alpha, epsilon = 1e-12);
        assert_abs_diff_eq!(scaled.beta, 3.0 * base.beta, epsilon = 1e-12);
        assert_eq!(scaled.gamma, base.gamma);

        assert_eq!(restrict_line(&g, &x0, &[0.0, 0.0]), Err(QuadError::ZeroDirection));
    }

    #[test]
    fn nonneg_region_examples() {
        let r = nonneg_region(&UnivariateQuadratic::new(-1.0, 0.0, 1.0), 0.0);
        assert_eq!(r.intervals(), &[Interval::new(-1.0, 1.0)]);
        let r = nonneg_region(&UnivariateQuadratic::new(1.0, 0.0, 1.0), 0.0);
        assert_eq!(r, IntervalSet::real_line());
        let r = nonneg_region(&UnivariateQuadratic::new(1.0, -3.0, 2.0), 0.0);
        assert_eq!(
            r.intervals(),
            &[Interval::new(f64::NEG_INFINITY, 1.0), Interval::new(2.0, f64::INFINITY)]
        );
    }

    #[test]
    fn nonneg_region_degenerate_cases() {
        // single point
        let r = nonneg_region(&UnivariateQuadratic::new(-1.0, 2.0, -1.0), 0.0);
        assert_eq!(r.intervals(), &[Interval::new(1.0, 1.0)]);
        // empty
        assert!(nonneg_region(&UnivariateQuadratic::new(-1.0, 0.0, -1.0), 0.0).is_empty());
        // half-lines
        let r = nonneg_region(&UnivariateQuadratic::new(0.0, 2.0, -4.0), 0.0);
        assert_eq!(r.intervals(), &[Interval::new(2.0, f64::INFINITY)]);
        let r = nonneg_region(&UnivariateQuadratic::new(1e-20, -2.0, -4.0), 1e-15);
        assert_eq!(r.intervals(), &[Interval::new(f64::NEG_INFINITY, -2.0)]);
        // constants
        assert!(nonneg_region(&UnivariateQuadratic::new(0.0, 0.0, -1.0), 0.0).is_empty());
        assert_eq!(nonneg_region(&UnivariateQuadratic::new(0.0, 0.0, 0.0), 0.0), IntervalSet::real_line());
    }

    #[test]
    fn min_on_intervals_examples() {
        let unit = IntervalSet::from_intervals(vec![Interval::new(-1.0, 1.0)]);
        let m = min_on_intervals(&UnivariateQuadratic::new(0.0, 1.0, -1.0), &unit, 1e6, 0.0).unwrap();
        assert_eq!((m.t, m.value, m.unbounded), (-1.0, -2.0, false));
        let m = min_on_intervals(&UnivariateQuadratic::new(1.0, 0.0, 0.0), &unit, 1e6, 0.0).unwrap();
        assert_eq!((m.t, m.value), (0.0, 0.0));
        let s = IntervalSet::from_intervals(vec![Interval::new(0.0, 3.0)]);
        let m = min_on_intervals(&UnivariateQuadratic::new(-1.0, 0.0, 4.0), &s, 1e6, 0.0).unwrap();
        assert_eq!((m.t, m.value), (3.0, -5.0));
        assert!(min_on_intervals(&UnivariateQuadratic::new(1.0, 0.0, 0.0), &IntervalSet::empty(), 1e6, 0.0).is_none());
    }

    #[test]
    fn min_on_intervals_unbounded() {
        let cap = 1e6;
        let half = IntervalSet::from_intervals(vec![Interval::new(2.0, f64::INFINITY)]);
        let m = min_on_intervals(&UnivariateQuadratic::new(-1.0, 0.0, 0.0), &half, cap, 0.0).unwrap();
        assert!(m.unbounded && m.value <= -cap && m.t >= 2.0);
        let left = IntervalSet::from_intervals(vec![Interval::new(f64::NEG_INFINITY, 5.0)]);
        let m = min_on_intervals(&UnivariateQuadratic::new(0.0, 3.0, 1.0), &left, cap, 0.0).unwrap();
        assert!(m.unbounded && m.value <= -cap && m.t <= 5.0);
        // linear but bounded below on the interval
        let m = min_on_intervals(&UnivariateQuadratic::new(0.0, 3.0, 1.0), &half, cap, 0.0).unwrap();
        assert_eq!((m.t, m.value, m.unbounded), (2.0, 7.0, false));
    }

    #[test]
    fn oracle_finds_linear_violation() {
        let g = QuadraticFunction::univariate(0.0, 0.5, -1.0).unwrap(); // x − 1
        let h = QuadraticFunction::univariate(-1.0, 0.0, 1.0).unwrap(); // 1 − x²
        let r = oracle_search(&g, &h, &OracleOptions::default()).unwrap();
        let w = r.witness.expect("counterexample");
        assert!(w.h_val >= -DEFAULT_TOL_FEAS && w.g_val <= -DEFAULT_TOL_STRICT);
        assert!(w.x[0] >= -1.0 - 1e-9 && w.x[0] < 1.0);
    }

    #[test]
    fn oracle_none_when_copositive() {
        let h = QuadraticFunction::univariate(-1.0, 0.0, 1.0).unwrap();
        let r = oracle_search(&h, &h, &OracleOptions::default()).unwrap();
        assert!(r.witness.is_none());
        assert_eq!(r.trials, DEFAULT_ORACLE_BUDGET);
        let g = QuadraticFunction::univariate(-1.0, 0.0, 4.0).unwrap();
        let opts = OracleOptions { hint_xi: Some(2.5), ..Default::default() };
        assert!(oracle_search(&g, &h, &opts).unwrap().witness.is_none());
    }

    #[test]
    fn oracle_is_deterministic() {
        let g = sq(&[1.0, 2.0, 2.0, -3.0], &[0.5, 0.1], -0.2);
        let h = sq(&[-1.0, 0.0, 0.0, 0.5], &[0.0, 0.3], 1.0);
        let opts = OracleOptions { seed: 17, budget: 300, ..Default::default() };
        assert_eq!(oracle_search(&g, &h, &opts).unwrap(), oracle_search(&g, &h, &opts).unwrap());
    }

    #[test]
    fn isotropic_combination_is_isotropic() {
        let b = SymMatrix::from_diag(&[1.0, -2.0]).unwrap();
        let us = isotropic_combinations(&b, &[1.0, 0.0], &[0.0, 1.0]);
        assert_eq!(us.len(), 2);
        for u in us {
            assert_abs_diff_eq!(b.quad_form(&u).unwrap(), 0.0, epsilon = 1e-14);
        }
    }
}
