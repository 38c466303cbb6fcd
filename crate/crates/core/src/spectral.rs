//! Symmetric eigendecomposition and the graph Fourier transform.
//!
//! The eigensolver is a cyclic Jacobi sweep. It is slow compared to
//! tridiagonal QR for large matrices but is accurate to working precision
//! for the few-hundred-vertex operators used here, and needs no LAPACK.

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};

/// Relative asymmetry accepted by [`SymMatrix::new`] before symmetrizing.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// fraction of the input Frobenius norm.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// A finite, exactly symmetric square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix(Matrix);

impl SymMatrix {
    /// Symmetrizes `m` as `(m + mᵀ)/2` after checking that it is symmetric
    /// up to [`SYMMETRY_TOLERANCE`] relative to its largest entry.
    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        if !m.is_finite() {
            return Err(Error::NonFiniteEntry);
        }
        let n = m.rows();
        let scale = m.max_abs();
        let mut asym: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                asym = asym.max((m[(i, j)] - m[(j, i)]).abs());
            }
        }
        if asym > SYMMETRY_TOLERANCE * scale {
            return Err(Error::NotSymmetric { asymmetry: asym });
        }
        let mut m = m;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (m[(i, j)] + m[(j, i)]);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        Ok(SymMatrix(m))
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix(Matrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix(Matrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// `self²`, symmetric by construction.
    pub fn square(&self) -> SymMatrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = dot(self.0.row(i), self.0.row(j));
                out[(i, j)] = v;
                out[(j, i)] = v;
            }
        }
        SymMatrix(out)
    }
}

impl std::ops::Index<(usize, usize)> for SymMatrix {
    type Output = f64;

    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvector
/// columns: `S = U diag(λ) Uᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBasis {
    eigenvalues: Vec<f64>,
    eigenvectors: Matrix,
}

impl SpectralBasis {
    /// Assembles a basis from precomputed parts. Eigenvalues must be
    /// ascending and the columns orthonormal to within 1e-8.
    pub fn new(eigenvalues: Vec<f64>, eigenvectors: Matrix) -> Result<Self> {
        let d = eigenvalues.len();
        if eigenvectors.rows() != d || eigenvectors.cols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: eigenvectors.rows() });
        }
        if eigenvalues.iter().any(|v| !v.is_finite()) || !eigenvectors.is_finite() {
            return Err(Error::NonFiniteEntry);
        }
        if eigenvalues.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidConfig("eigenvalues must be ascending".into()));
        }
        let basis = Self { eigenvalues, eigenvectors };
        let err = basis.orthonormality_error();
        if err > 1e-8 {
            return Err(Error::InvalidConfig(format!("eigenvectors not orthonormal (error {err:e})")));
        }
        Ok(basis)
    }

    /// The standard basis with all eigenvalues equal to `lambda`.
    pub fn identity(d: usize, lambda: f64) -> Self {
        Self { eigenvalues: vec![lambda; d], eigenvectors: Matrix::identity(d) }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Column `i` pairs with `eigenvalues()[i]`.
    pub fn eigenvectors(&self) -> &Matrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, i: usize) -> Vec<f64> {
        self.eigenvectors.column(i)
    }

    /// `‖UᵀU − I‖_max`
    pub fn orthonormality_error(&self) -> f64 {
        let u = &self.eigenvectors;
        let utu = u.transpose().matmul(u).expect("square");
        utu.sub(&Matrix::identity(self.dim())).expect("same shape").max_abs()
    }

    /// `U diag(λ) Uᵀ`
    pub fn reconstruct(&self) -> Matrix {
        let d = self.dim();
        let u = &self.eigenvectors;
        let mut out = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v: f64 = (0..d).map(|k| u[(i, k)] * self.eigenvalues[k] * u[(j, k)]).sum();
                out[(i, j)] = v;
                out[(j, i)] = v;
            }
        }
        out
    }

    /// Transforms every row of `x` (samples × d) into the spectral domain.
    pub fn gft_rows(&self, x: &Matrix) -> Result<Matrix> {
        if x.cols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.cols() });
        }
        // row-wise Uᵀx is the row vector xᵀU
        x.matmul(&self.eigenvectors)
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Eigenvalues come back ascending. Each eigenvector is sign-normalized so
/// that its first nonzero component is positive, which makes the output
/// deterministic for a given input.
pub fn eigh_symmetric(m: &SymMatrix) -> Result<SpectralBasis> {
    let n = m.dim();
    let mut a = m.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let threshold = JACOBI_TOLERANCE * a.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, dst)] = v[(r, src)];
        }
    }
    normalize_signs(&mut vectors);
    Ok(SpectralBasis { eigenvalues, eigenvectors: vectors })
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with one plane rotation and accumulates it into `v`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = a.rows();
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    // theta² overflows for tiny apq; the rotation is then the identity to working precision
    let t = if t.is_finite() { t } else { 0.0 };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        let new_rp = c * arp - s * arq;
        let new_rq = s * arp + c * arq;
        a[(r, p)] = new_rp;
        a[(p, r)] = new_rp;
        a[(r, q)] = new_rq;
        a[(q, r)] = new_rq;
    }
    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = c * vrp - s * vrq;
        v[(r, q)] = s * vrp + c * vrq;
    }
}

fn normalize_signs(u: &mut Matrix) {
    let n = u.rows();
    for j in 0..u.cols() {
        let lead = (0..n).map(|i| u[(i, j)]).find(|x| x.abs() > 1e-14);
        if matches!(lead, Some(x) if x < 0.0) {
            for i in 0..n {
                u[(i, j)] = -u[(i, j)];
            }
        }
    }
}

/// Graph Fourier transform `x̂ = Uᵀx`.
pub fn gft(basis: &SpectralBasis, x: &[f64]) -> Result<Vec<f64>> {
    basis.eigenvectors.tr_matvec(x)
}

/// Inverse graph Fourier transform `x = U x̂`.
pub fn igft(basis: &SpectralBasis, xhat: &[f64]) -> Result<Vec<f64>> {
    basis.eigenvectors.matvec(xhat)
}
