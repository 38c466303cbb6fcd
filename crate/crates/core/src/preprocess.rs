//! Feature transforms applied before classification.
//!
//! [`WhiteningTransform`] is the graph-aware one: project onto the GSO
//! eigenbasis and divide coordinate `i` by `sqrt(λᵢ² + σ̃²)`. When the data
//! follow `α·S·n₁ + β·n₀` noise and `σ̃ = β/α`, the result has covariance
//! `α²·I`, a global scale that nearest-centroid decisions ignore.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectral::{eigh_symmetric, SpectralBasis, SymMatrix};

/// Standard deviations below this are clamped to it.
pub const STD_FLOOR: f64 = 1e-12;

/// Relative size below which an eigenvalue is treated as exactly zero when
/// `sigma_hat` is zero.
pub const ZERO_EIGENVALUE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct WhiteningTransform {
    basis: SpectralBasis,
    sigma_hat: f64,
    scale: Vec<f64>,
}

impl WhiteningTransform {
    pub fn basis(&self) -> &SpectralBasis {
        &self.basis
    }

    pub fn sigma_hat(&self) -> f64 {
        self.sigma_hat
    }

    /// `(λᵢ² + σ̃²)^(-1/2)` per spectral coordinate.
    pub fn scale(&self) -> &[f64] {
        &self.scale
    }

    pub fn dim(&self) -> usize {
        self.scale.len()
    }

    /// The whitening matrix `D^(-1/2) Uᵀ` as a dense d×d matrix.
    pub fn matrix(&self) -> Matrix {
        let mut p = self.basis.eigenvectors().transpose();
        for (i, s) in self.scale.iter().enumerate() {
            p.row_mut(i).iter_mut().for_each(|v| *v *= s);
        }
        p
    }
}

pub fn make_whitening(basis: &SpectralBasis, sigma_hat: f64) -> Result<WhiteningTransform> {
    if !(sigma_hat >= 0.0 && sigma_hat.is_finite()) {
        return Err(Error::InvalidConfig(format!("sigma_hat = {sigma_hat} must be finite and nonnegative")));
    }
    // eigenvalues within round-off of zero count as zero
    let spread = basis.eigenvalues().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let floor = (ZERO_EIGENVALUE_TOLERANCE * spread).powi(2);
    let mut scale = Vec::with_capacity(basis.dim());
    for (index, &lambda) in basis.eigenvalues().iter().enumerate() {
        let d = lambda * lambda + sigma_hat * sigma_hat;
        if d.is_nan() || d <= floor {
            return Err(Error::SingularWhitening { index });
        }
        scale.push(1.0 / d.sqrt());
    }
    Ok(WhiteningTransform { basis: basis.clone(), sigma_hat, scale })
}

/// Row-wise `x̆ = D^(-1/2) Uᵀ x`.
pub fn apply_whitening(w: &WhiteningTransform, x: &Matrix) -> Result<Matrix> {
    let mut out = w.basis.gft_rows(x)?;
    for i in 0..out.rows() {
        for (v, s) in out.row_mut(i).iter_mut().zip(&w.scale) {
            *v *= s;
        }
    }
    Ok(out)
}

/// Divides every row by its Euclidean norm. All-zero rows pass through.
pub fn norm_scale(x: &Matrix) -> Matrix {
    let mut out = x.clone();
    for i in 0..out.rows() {
        let row = out.row_mut(i);
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            row.iter_mut().for_each(|v| *v /= norm);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct StdScaler {
    stds: Vec<f64>,
}

impl StdScaler {
    pub fn stds(&self) -> &[f64] {
        &self.stds
    }
}

/// Per-column sample standard deviation (`n − 1` denominator), floored at
/// [`STD_FLOOR`].
pub fn std_fit(x_train: &Matrix) -> Result<StdScaler> {
    let n = x_train.rows();
    if n < 2 {
        return Err(Error::InsufficientData(format!("std scaling needs at least 2 rows, got {n}")));
    }
    let mean = x_train.mean_rows();
    let mut var = vec![0.0; x_train.cols()];
    for r in x_train.row_iter() {
        for ((acc, v), m) in var.iter_mut().zip(r).zip(&mean) {
            *acc += (v - m) * (v - m);
        }
    }
    let stds = var.iter().map(|v| (v / (n as f64 - 1.0)).sqrt().max(STD_FLOOR)).collect();
    Ok(StdScaler { stds })
}

pub fn std_apply(s: &StdScaler, x: &Matrix) -> Result<Matrix> {
    if x.cols() != s.stds.len() {
        return Err(Error::DimensionMismatch { expected: s.stds.len(), got: x.cols() });
    }
    let mut out = x.clone();
    for i in 0..out.rows() {
        for (v, sd) in out.row_mut(i).iter_mut().zip(&s.stds) {
            *v /= sd;
        }
    }
    Ok(out)
}

/// GFT followed by per-coefficient standardization fitted on training data.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralStdScaler {
    basis: SpectralBasis,
    scaler: StdScaler,
}

impl SpectralStdScaler {
    pub fn scaler(&self) -> &StdScaler {
        &self.scaler
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        std_apply(&self.scaler, &self.basis.gft_rows(x)?)
    }
}

pub fn spectral_std_fit(basis: &SpectralBasis, x_train: &Matrix) -> Result<SpectralStdScaler> {
    let scaler = std_fit(&basis.gft_rows(x_train)?)?;
    Ok(SpectralStdScaler { basis: basis.clone(), scaler })
}

/// Treats the square roots of a covariance's eigenvalues as the spectrum
/// of a GSO. Negative eigenvalues from round-off are clamped to zero.
pub fn estimate_gso_from_covariance(sigma_emp: &SymMatrix) -> Result<SpectralBasis> {
    let eig = eigh_symmetric(sigma_emp)?;
    let d = eig.dim();
    let roots: Vec<f64> = eig.eigenvalues().iter().map(|v| v.max(0.0).sqrt()).collect();
    // sqrt of clamped ascending values stays ascending, the sort only guards ties
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| roots[i].total_cmp(&roots[j]));
    let u = eig.eigenvectors();
    let mut vectors = Matrix::zeros(d, d);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..d {
            vectors[(r, dst)] = u[(r, src)];
        }
    }
    SpectralBasis::new(order.iter().map(|&i| roots[i]).collect(), vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_of(rows: &[[f64; 3]]) -> SpectralBasis {
        eigh_symmetric(&SymMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn p3_basis() -> SpectralBasis {
        basis_of(&[[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
    }

    #[test]
    fn whitening_scale_p3() {
        let w = make_whitening(&p3_basis(), 1.0).unwrap();
        let want = [1.0 / 3f64.sqrt(), 1.0, 1.0 / 3f64.sqrt()];
        for (got, want) in w.scale().iter().zip(want) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn whitening_scale_k2() {
        let b = eigh_symmetric(&SymMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap()).unwrap();
        let w = make_whitening(&b, 1.0).unwrap();
        for s in w.scale() {
            assert!((s - 0.5f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn whitening_singular_without_sigma() {
        assert_eq!(make_whitening(&p3_basis(), 0.0).unwrap_err(), Error::SingularWhitening { index: 1 });
        assert!(make_whitening(&p3_basis(), -1.0).is_err());
    }

    #[test]
    fn whitening_zero_and_mismatch() {
        let w = make_whitening(&p3_basis(), 1.0).unwrap();
        let z = apply_whitening(&w, &Matrix::zeros(2, 3)).unwrap();
        assert_eq!(z.max_abs(), 0.0);
        assert!(matches!(apply_whitening(&w, &Matrix::zeros(1, 2)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn norm_scale_rows() {
        let x = Matrix::from_rows(&[[3.0, 4.0], [0.0, 0.0]]).unwrap();
        let y = norm_scale(&x);
        assert!((y[(0, 0)] - 0.6).abs() < 1e-15 && (y[(0, 1)] - 0.8).abs() < 1e-15);
        assert_eq!(y.row(1), &[0.0, 0.0]);
    }

    #[test]
    fn std_fit_cases() {
        let x = Matrix::from_rows(&[[0.0, 5.0], [2.0, 5.0]]).unwrap();
        let s = std_fit(&x).unwrap();
        assert!((s.stds()[0] - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.stds()[1], STD_FLOOR);
        let one = Matrix::from_rows(&[[1.0, 2.0]]).unwrap();
        assert!(matches!(std_fit(&one), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn std_apply_cases() {
        let s = StdScaler { stds: vec![1.0, 1.0] };
        let x = Matrix::from_rows(&[[1.5, -2.0]]).unwrap();
        assert_eq!(std_apply(&s, &x).unwrap(), x);
        let s = StdScaler { stds: vec![2.0, 0.5] };
        let x = Matrix::from_rows(&[[2.0, 0.5]]).unwrap();
        assert_eq!(std_apply(&s, &x).unwrap().row(0), &[1.0, 1.0]);
        assert!(std_apply(&s, &Matrix::zeros(1, 3)).is_err());
    }

    #[test]
    fn std_apply_unit_variance() {
        let x = Matrix::from_rows(&[[1.0, 10.0], [2.0, -4.0], [4.0, 3.0], [-3.0, 0.5]]).unwrap();
        let y = std_apply(&std_fit(&x).unwrap(), &x).unwrap();
        for s in std_fit(&y).unwrap().stds() {
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn spectral_std_identity_basis_matches_std() {
        let x = Matrix::from_rows(&[[1.0, 10.0, 0.0], [2.0, -4.0, 1.0], [4.0, 3.0, 7.0]]).unwrap();
        let sp = spectral_std_fit(&SpectralBasis::identity(3, 0.0), &x).unwrap();
        let plain = std_fit(&x).unwrap();
        assert_eq!(sp.scaler(), &plain);
        assert_eq!(sp.apply(&x).unwrap(), std_apply(&plain, &x).unwrap());
        let one = Matrix::from_rows(&[[1.0, 2.0, 3.0]]).unwrap();
        assert!(matches!(spectral_std_fit(&p3_basis(), &one), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn gso_estimate_square_roots() {
        let b = estimate_gso_from_covariance(&SymMatrix::new(Matrix::identity(3).scale(4.0)).unwrap()).unwrap();
        assert!(b.eigenvalues().iter().all(|v| (v - 2.0).abs() < 1e-12));

        let b = estimate_gso_from_covariance(&SymMatrix::from_rows(&[[9.0, 0.0], [0.0, 4.0]]).unwrap()).unwrap();
        assert!((b.eigenvalues()[0] - 2.0).abs() < 1e-12 && (b.eigenvalues()[1] - 3.0).abs() < 1e-12);
        assert!((b.eigenvector(0)[1].abs() - 1.0).abs() < 1e-12);
        assert!((b.eigenvector(1)[0].abs() - 1.0).abs() < 1e-12);

        let b = estimate_gso_from_covariance(&SymMatrix::from_rows(&[[-0.1, 0.0], [0.0, 1.0]]).unwrap()).unwrap();
        assert_eq!(b.eigenvalues()[0], 0.0);
    }
}
