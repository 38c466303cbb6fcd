//! Classifiers. All of them consume already-preprocessed matrices (rows are
//! samples, labels are `0..C`) and break ties toward the lowest class id.

mod graph_lda;
mod lda;
mod logreg;
mod ncm;

pub use graph_lda::{graph_lda_fit, graph_lda_predict, GraphLdaModel};
pub use lda::{lda_fit, lda_oracle, lda_predict, oas_covariance, oas_shrinkage, LdaModel};
pub use logreg::{logreg_fit, logreg_objective, logreg_predict, LogRegHyper, LogRegModel, LogRegReport};
pub use ncm::{ncm_fit, ncm_predict, NcmModel};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Number of classes implied by `y` (max label + 1). Every class must have
/// at least `min_per_class` samples.
pub(crate) fn class_count(x: &Matrix, y: &[usize], min_per_class: usize) -> Result<usize> {
    if x.rows() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.rows(), got: y.len() });
    }
    let c = y.iter().max().map_or(0, |m| m + 1);
    if c == 0 {
        return Err(Error::EmptyInput);
    }
    let mut counts = vec![0usize; c];
    for &label in y {
        counts[label] += 1;
    }
    if let Some(class) = counts.iter().position(|&n| n == 0) {
        return Err(Error::EmptyClass { class });
    }
    if let Some(class) = counts.iter().position(|&n| n < min_per_class) {
        return Err(Error::InsufficientData(format!(
            "class {class} has {} samples, need at least {min_per_class}",
            counts[class]
        )));
    }
    Ok(c)
}

/// Per-class means of the rows of `x`.
pub(crate) fn class_means(x: &Matrix, y: &[usize], c: usize) -> Matrix {
    let mut sums = Matrix::zeros(c, x.cols());
    let mut counts = vec![0usize; c];
    for (row, &label) in x.row_iter().zip(y) {
        crate::matrix::axpy(1.0, row, sums.row_mut(label));
        counts[label] += 1;
    }
    for (k, &n) in counts.iter().enumerate() {
        sums.row_mut(k).iter_mut().for_each(|v| *v /= n as f64);
    }
    sums
}

/// Index of the largest score; the first one wins on ties.
pub(crate) fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

/// Fraction of predictions equal to the truth.
pub fn accuracy(predicted: &[usize], truth: &[usize]) -> f64 {
    if truth.is_empty() {
        return 0.0;
    }
    let hits = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    hits as f64 / truth.len() as f64
}
