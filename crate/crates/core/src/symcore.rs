//! Dense symmetric matrices: storage, the trace inner product, a cyclic Jacobi
//! eigensolver, PSD testing and Gram-Schmidt under the trace inner product.
//!
//! Matrices are stored as a packed upper triangle, so `get(i, j) == get(j, i)`
//! holds bit-for-bit by construction.

use thiserror::Error;

/// Relative off-diagonal threshold for the Jacobi sweeps.
pub const DEFAULT_TOL_EIG: f64 = 1e-12;
/// Relative PSD tolerance (multiplied by `max(1, ‖M‖_F)`).
pub const DEFAULT_PSD_TOL: f64 = 1e-9;
/// Sweep limit for cyclic Jacobi.
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },
    #[error("matrix dimension must be positive")]
    EmptyMatrix,
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// Dense symmetric `n × n` matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    upper: Vec<f64>,
}

// Row i of the packed upper triangle starts at i*n - i*(i-1)/2.
#[inline]
fn packed_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            upper: vec![0.0; dim * (dim + 1) / 2],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.upper[packed_index(dim, i, i)] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m.check_finite()?;
        Ok(m)
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle `i <= j`.
    pub fn from_upper_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut upper = Vec::with_capacity(dim * (dim + 1) / 2);
        for i in 0..dim {
            for j in i..dim {
                upper.push(f(i, j));
            }
        }
        let m = SymMatrix { dim, upper };
        m.check_finite()?;
        Ok(m)
    }

    /// Builds a matrix from row-major dense data. Entries must agree with their
    /// transposes to within `sym_tol · max(1, max|a_ij|)`; the stored value is
    /// the average of the pair.
    pub fn from_row_major(dim: usize, data: &[f64], sym_tol: f64) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        let amax = data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let allowed = sym_tol * amax.max(1.0);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let gap = (data[i * dim + j] - data[j * dim + i]).abs();
                if gap > allowed {
                    return Err(LinalgError::NotSymmetric { i, j, gap });
                }
            }
        }
        Self::from_upper_fn(dim, |i, j| {
            if i == j {
                data[i * dim + i]
            } else {
                // halfway without overflow near f64::MAX
                let (a, b) = (data[i * dim + j], data[j * dim + i]);
                a + 0.5 * (b - a)
            }
        })
    }

    /// `z zᵀ`.
    pub fn rank_one(z: &[f64]) -> Result<Self> {
        Self::from_upper_fn(z.len(), |i, j| z[i] * z[j])
    }

    /// `u vᵀ + v uᵀ`.
    pub fn sym_outer(u: &[f64], v: &[f64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(LinalgError::DimensionMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        Self::from_upper_fn(u.len(), |i, j| u[i] * v[j] + v[i] * u[j])
    }

    fn check_finite(&self) -> Result<()> {
        if self.upper.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(LinalgError::NonFinite)
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[packed_index(self.dim, i, j)]
    }

    /// Sets entries `(i, j)` and `(j, i)` together.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let k = packed_index(self.dim, i, j);
        self.upper[k] = value;
    }

    /// Full row-major copy.
    pub fn to_row_major(&self) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = self.get(i, j);
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        trace_inner_unchecked(self, self).max(0.0).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.upper.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, s: f64) -> Self {
        SymMatrix {
            dim: self.dim,
            upper: self.upper.iter().map(|v| v * s).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn lin_comb(&self, a: f64, other: &SymMatrix, b: f64) -> Result<Self> {
        self.same_dim(other)?;
        let m = SymMatrix {
            dim: self.dim,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        };
        m.check_finite()?;
        Ok(m)
    }

    /// `self − ξ·other`.
    pub fn sub_scaled(&self, xi: f64, other: &SymMatrix) -> Result<Self> {
        self.lin_comb(1.0, other, -xi)
    }

    pub fn same_dim(&self, other: &SymMatrix) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * x[j]).sum())
            .collect())
    }

    /// `xᵀ M x`.
    pub fn quad_form(&self, x: &[f64]) -> Result<f64> {
        let mx = self.mul_vec(x)?;
        Ok(dot(&mx, x))
    }

    /// Packed upper triangle, row by row.
    pub fn packed_upper(&self) -> &[f64] {
        &self.upper
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn trace_inner_unchecked(m: &SymMatrix, n: &SymMatrix) -> f64 {
    let d = m.dim;
    let mut diag = 0.0;
    let mut off = 0.0;
    let mut k = 0;
    for i in 0..d {
        for j in i..d {
            let p = m.upper[k] * n.upper[k];
            if i == j {
                diag += p;
            } else {
                off += p;
            }
            k += 1;
        }
    }
    diag + 2.0 * off
}

/// `⟨M, N⟩ = tr(MᵀN) = Σᵢⱼ MᵢⱼNᵢⱼ`.
pub fn trace_inner(m: &SymMatrix, n: &SymMatrix) -> Result<f64> {
    m.same_dim(n)?;
    Ok(trace_inner_unchecked(m, n))
}

/// Eigenvalues in nondecreasing order, eigenvectors stored column by column.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    eigenvectors: Vec<f64>,
    dim: usize,
    pub sweeps: usize,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Unit eigenvector paired with `eigenvalues[k]`.
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.eigenvectors[k * self.dim..(k + 1) * self.dim]
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[f64]> {
        self.eigenvectors.chunks(self.dim.max(1)).take(self.dim)
    }

    /// `V Λ Vᵀ`.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.dim;
        SymMatrix::from_upper_fn(n, |i, j| {
            (0..n)
                .map(|k| self.eigenvalues[k] * self.vector(k)[i] * self.vector(k)[j])
                .sum()
        })
        .unwrap_or_else(|_| SymMatrix::zeros(n))
    }
}

/// Cyclic Jacobi eigendecomposition. Converges when the off-diagonal Frobenius
/// norm drops to `tol_eig · ‖M‖_F`.
pub fn eigen_sym(m: &SymMatrix, tol_eig: f64) -> Result<EigenDecomposition> {
    m.check_finite()?;
    let n = m.dim;
    let mut a = m.to_row_major();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let target = tol_eig * m.frobenius_norm();

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]).then(i.cmp(&j)));
    let eigenvalues = order.iter().map(|&k| a[k * n + k]).collect();
    let mut eigenvectors = Vec::with_capacity(n * n);
    for &k in &order {
        let mut col: Vec<f64> = (0..n).map(|i| v[i * n + k]).collect();
        // sign convention: first non-negligible component positive
        if let Some(&lead) = col.iter().find(|x| x.abs() > 1e-10) {
            if lead < 0.0 {
                col.iter_mut().for_each(|x| *x = -*x);
            }
        }
        eigenvectors.extend(col);
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
        dim: n,
        sweeps,
    })
}

/// Smallest eigenvalue and a unit eigenvector for it.
pub fn min_eig(m: &SymMatrix) -> Result<(f64, Vec<f64>)> {
    if m.dim() == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    let e = eigen_sym(m, DEFAULT_TOL_EIG)?;
    Ok((e.eigenvalues[0], e.vector(0).to_vec()))
}

/// `λ_min(M) ≥ −tol`.
pub fn is_psd(m: &SymMatrix, tol: f64) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(true);
    }
    let (lambda, _) = min_eig(m)?;
    Ok(lambda >= -tol)
}

/// Orthonormal basis (under the trace inner product) of `span(ms)`. Members
/// whose residual after projection is at most `tol_rank` times their own norm
/// are dropped.
pub fn gram_schmidt(ms: &[SymMatrix], tol_rank: f64) -> Result<Vec<SymMatrix>> {
    let mut basis: Vec<SymMatrix> = Vec::new();
    let Some(first) = ms.first() else {
        return Ok(basis);
    };
    for m in ms {
        first.same_dim(m)?;
        let input_norm = m.frobenius_norm();
        if input_norm == 0.0 {
            continue;
        }
        let mut r = m.clone();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for e in &basis {
                let c = trace_inner_unchecked(&r, e);
                r = r.lin_comb(1.0, e, -c)?;
            }
        }
        let rn = r.frobenius_norm();
        if rn > tol_rank * input_norm {
            basis.push(r.scaled(1.0 / rn));
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn packed_layout_is_symmetric() {
        let m = SymMatrix::from_upper_fn(4, |i, j| (10 * i + j) as f64).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        assert_eq!(m.get(2, 3), 23.0);
        assert_eq!(m.get(3, 3), 33.0);
        assert_eq!(m.get(0, 0), 0.0);
    }

    #[test]
    fn identity_eigen() {
        let e = eigen_sym(&SymMatrix::identity(3), DEFAULT_TOL_EIG).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0, 1.0]);
        for k in 0..3 {
            assert_abs_diff_eq!(norm2(e.vector(k)), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn diagonal_eigen_sorted() {
        let e = eigen_sym(&SymMatrix::from_diag(&[4.0, -1.0]).unwrap(), DEFAULT_TOL_EIG).unwrap();
        assert_eq!(e.eigenvalues, vec![-1.0, 4.0]);
        assert_eq!(e.vector(0), &[0.0, 1.0]);
    }

    #[test]
    fn two_by_two_eigen() {
        // λ² − 4λ + 3 = 0
        let m = SymMatrix::from_row_major(2, &[2.0, 1.0, 1.0, 2.0], 0.0).unwrap();
        let e = eigen_sym(&m, DEFAULT_TOL_EIG).unwrap();
        assert_abs_diff_eq!(e.eigenvalues[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.eigenvalues[1], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn min_eig_cases() {
        let (l, v) = min_eig(&SymMatrix::from_diag(&[-1.0, 4.0]).unwrap()).unwrap();
        assert_eq!(l, -1.0);
        assert_abs_diff_eq!(v[0].abs(), 1.0, epsilon = 1e-15);

        let (l, v) = min_eig(&SymMatrix::identity(2)).unwrap();
        assert_eq!(l, 1.0);
        assert_abs_diff_eq!(norm2(&v), 1.0, epsilon = 1e-15);

        let swap = SymMatrix::from_row_major(2, &[0.0, 1.0, 1.0, 0.0], 0.0).unwrap();
        let (l, v) = min_eig(&swap).unwrap();
        assert_abs_diff_eq!(l, -1.0, epsilon = 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(v[0], s, epsilon = 1e-12);
        assert_abs_diff_eq!(v[1], -s, epsilon = 1e-12);
    }

    #[test]
    fn psd_cases() {
        assert!(is_psd(&SymMatrix::identity(2), 0.0).unwrap());
        assert!(!is_psd(&SymMatrix::from_diag(&[1.0, -1.0]).unwrap(), 1e-9).unwrap());
        let ones = SymMatrix::from_row_major(2, &[1.0, 1.0, 1.0, 1.0], 0.0).unwrap();
        assert!(is_psd(&ones, 1e-9).unwrap());
    }

    #[test]
    fn trace_inner_cases() {
        let m = SymMatrix::from_row_major(2, &[1.0, 2.0, 2.0, 0.0], 0.0).unwrap();
        let n = SymMatrix::from_row_major(2, &[0.0, 1.0, 1.0, 3.0], 0.0).unwrap();
        assert_eq!(trace_inner(&m, &n).unwrap(), 4.0);
        let abd = SymMatrix::from_row_major(2, &[5.0, -7.0, -7.0, 2.5], 0.0).unwrap();
        assert_eq!(trace_inner(&SymMatrix::identity(2), &abd).unwrap(), 7.5);
        assert_abs_diff_eq!(
            trace_inner(&abd, &abd).unwrap(),
            abd.frobenius_norm().powi(2),
            epsilon = 1e-12
        );
        assert!(matches!(
            trace_inner(&m, &SymMatrix::identity(3)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gram_schmidt_cases() {
        let g = gram_schmidt(&[SymMatrix::identity(2)], 1e-10).unwrap();
        assert_eq!(g.len(), 1);
        assert_abs_diff_eq!(g[0].get(0, 0), 1.0 / 2f64.sqrt(), epsilon = 1e-15);

        let m = SymMatrix::from_row_major(2, &[1.0, 3.0, 3.0, -2.0], 0.0).unwrap();
        assert_eq!(gram_schmidt(&[m.clone(), m.scaled(2.0)], 1e-10).unwrap().len(), 1);

        let d = gram_schmidt(
            &[
                SymMatrix::from_diag(&[1.0, 0.0]).unwrap(),
                SymMatrix::from_diag(&[1.0, 1.0]).unwrap(),
            ],
            1e-10,
        )
        .unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], SymMatrix::from_diag(&[1.0, 0.0]).unwrap());
        assert_abs_diff_eq!(d[1].get(1, 1), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d[1].get(0, 0), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn asymmetric_input_rejected() {
        let err = SymMatrix::from_row_major(2, &[1.0, 2.0, 2.1, 1.0], 1e-8).unwrap_err();
        assert!(matches!(err, LinalgError::NotSymmetric { i: 0, j: 1, .. }));
    }

    #[test]
    fn non_finite_rejected() {
        assert_eq!(
            SymMatrix::from_diag(&[1.0, f64::NAN]).unwrap_err(),
            LinalgError::NonFinite
        );
    }
}
