//! Linear discriminant analysis with discriminants
//! `g_c(x) = w_cᵀx + w_c0`, `w_c = Σ⁻¹μ_c`, `w_c0 = −½ μ_cᵀΣ⁻¹μ_c`.
//!
//! [`lda_fit`] estimates `Σ` from the training data with OAS shrinkage;
//! [`lda_oracle`] takes the true covariance.

use crate::error::{Error, Result};
use crate::matrix::{dot, Cholesky, Matrix};
use crate::spectral::SymMatrix;
use crate::synth::ClassMeans;

use super::{argmax, class_count, class_means};

#[derive(Debug, Clone, PartialEq)]
pub struct LdaModel {
    weights: Matrix,
    intercepts: Vec<f64>,
}

impl LdaModel {
    pub fn new(weights: Matrix, intercepts: Vec<f64>) -> Result<Self> {
        if weights.rows() != intercepts.len() {
            return Err(Error::DimensionMismatch { expected: weights.rows(), got: intercepts.len() });
        }
        if weights.rows() < 2 {
            return Err(Error::InvalidConfig("LDA needs at least two classes".into()));
        }
        if !weights.is_finite() || intercepts.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self { weights, intercepts })
    }

    /// Row `c` is `w_c`.
    pub fn weights(&self) -> &Matrix {
        &self.weights
    }

    pub fn intercepts(&self) -> &[f64] {
        &self.intercepts
    }

    pub fn dim(&self) -> usize {
        self.weights.cols()
    }

    pub fn scores(&self, x: &[f64]) -> Vec<f64> {
        self.weights.row_iter().zip(&self.intercepts).map(|(w, b)| dot(w, x) + b).collect()
    }
}

/// OAS shrinkage coefficient for an MLE covariance estimated from `n` samples,
/// clipped to `[0, 1]`.
pub fn oas_shrinkage(emp_cov: &SymMatrix, n: usize) -> f64 {
    let p = emp_cov.dim() as f64;
    let n = n as f64;
    let m = emp_cov.as_matrix();
    let tr = m.trace();
    let tr_sq: f64 = m.as_slice().iter().map(|v| v * v).sum();
    let num = (1.0 - 2.0 / p) * tr_sq + tr * tr;
    let den = (n + 1.0 - 2.0 / p) * (tr_sq - tr * tr / p);
    if den <= 0.0 {
        return 1.0;
    }
    (num / den).clamp(0.0, 1.0)
}

/// Shrinks `XᵀX / n` toward `(tr/d)·I` with the OAS coefficient. Rows of
/// `centered_pooled` must already be centered.
pub fn oas_covariance(centered_pooled: &Matrix, n: usize) -> Result<SymMatrix> {
    if n < 2 {
        return Err(Error::InsufficientData(format!("OAS needs at least 2 samples, got {n}")));
    }
    let d = centered_pooled.cols();
    let mut s = Matrix::zeros(d, d);
    for r in centered_pooled.row_iter() {
        for i in 0..d {
            crate::matrix::axpy(r[i], r, s.row_mut(i));
        }
    }
    let emp = SymMatrix::new(s.scale(1.0 / n as f64))?;
    let delta = oas_shrinkage(&emp, n);
    let mu = emp.as_matrix().trace() / d as f64;
    let mut out = emp.into_matrix().scale(1.0 - delta);
    for i in 0..d {
        out[(i, i)] += delta * mu;
    }
    SymMatrix::new(out)
}

fn discriminants(means: &Matrix, chol: &Cholesky) -> Result<LdaModel> {
    let mut weights = Matrix::zeros(means.rows(), means.cols());
    let mut intercepts = Vec::with_capacity(means.rows());
    for (c, mu) in means.row_iter().enumerate() {
        let w = chol.solve(mu)?;
        intercepts.push(-0.5 * dot(mu, &w));
        weights.row_mut(c).copy_from_slice(&w);
    }
    LdaModel::new(weights, intercepts)
}

/// Pooled within-class covariance with OAS shrinkage, then closed-form
/// discriminants. Needs two samples per class.
pub fn lda_fit(train_x: &Matrix, train_y: &[usize]) -> Result<LdaModel> {
    let c = class_count(train_x, train_y, 2)?;
    if c < 2 {
        return Err(Error::InvalidConfig("LDA needs at least two classes".into()));
    }
    let means = class_means(train_x, train_y, c);
    let mut centered = train_x.clone();
    for (i, &label) in train_y.iter().enumerate() {
        for (v, m) in centered.row_mut(i).iter_mut().zip(means.row(label)) {
            *v -= m;
        }
    }
    let cov = oas_covariance(&centered, train_x.rows())?;
    let chol = Cholesky::new(cov.as_matrix())?;
    discriminants(&means, &chol)
}

pub fn lda_predict(m: &LdaModel, x: &Matrix) -> Result<Vec<usize>> {
    if x.cols() != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), got: x.cols() });
    }
    Ok(x.row_iter().map(|r| argmax(&m.scores(r))).collect())
}

/// Discriminants from known means and covariance.
pub fn lda_oracle(means: &ClassMeans, sigma: &SymMatrix) -> Result<LdaModel> {
    if means.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: sigma.dim(), got: means.dim() });
    }
    let chol = Cholesky::new(sigma.as_matrix())?;
    discriminants(&Matrix::from_rows(means.as_slice())?, &chol)
}
