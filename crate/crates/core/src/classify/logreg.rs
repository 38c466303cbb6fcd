//! Multinomial logistic regression fitted by full-batch gradient descent.
//!
//! Objective: summed cross-entropy plus `(l2/2)·‖W‖²`; biases are not
//! penalized. Each iteration starts from a Barzilai–Borwein step and
//! backtracks until the Armijo condition holds, so accepted steps never
//! increase the loss.

use crate::error::{Error, Result};
use crate::matrix::{axpy, dot, Matrix};

use super::{argmax, class_count};

const ARMIJO_C: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRegHyper {
    pub l2_strength: f64,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for LogRegHyper {
    fn default() -> Self {
        Self { l2_strength: 1.0, max_iter: 1000, tol: 1e-4 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogRegReport {
    pub iterations: usize,
    /// Objective after initialization and after every accepted step.
    pub losses: Vec<f64>,
    /// Max-norm of the gradient at the returned parameters.
    pub grad_norm: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogRegModel {
    weights: Matrix,
    biases: Vec<f64>,
    hyper: LogRegHyper,
    report: Option<LogRegReport>,
}

impl LogRegModel {
    pub fn new(weights: Matrix, biases: Vec<f64>, hyper: LogRegHyper) -> Result<Self> {
        if weights.rows() != biases.len() {
            return Err(Error::DimensionMismatch { expected: weights.rows(), got: biases.len() });
        }
        Ok(Self { weights, biases, hyper, report: None })
    }

    pub fn weights(&self) -> &Matrix {
        &self.weights
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    pub fn hyper(&self) -> &LogRegHyper {
        &self.hyper
    }

    /// Optimizer trace, present on fitted models.
    pub fn report(&self) -> Option<&LogRegReport> {
        self.report.as_ref()
    }

    pub fn scores(&self, x: &[f64]) -> Vec<f64> {
        self.weights.row_iter().zip(&self.biases).map(|(w, b)| dot(w, x) + b).collect()
    }
}

/// Objective value and its gradient with respect to `(weights, biases)`.
pub fn logreg_objective(
    x: &Matrix,
    y: &[usize],
    weights: &Matrix,
    biases: &[f64],
    l2_strength: f64,
) -> (f64, Matrix, Vec<f64>) {
    let c = weights.rows();
    let mut loss = 0.0;
    let mut g_w = weights.scale(l2_strength);
    let mut g_b = vec![0.0; c];
    let mut z = vec![0.0; c];
    for (row, &label) in x.row_iter().zip(y) {
        for (k, zk) in z.iter_mut().enumerate() {
            *zk = dot(weights.row(k), row) + biases[k];
        }
        let zmax = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = z.iter().map(|v| (v - zmax).exp()).sum();
        let lse = zmax + sum.ln();
        loss += lse - z[label];
        for k in 0..c {
            let p = (z[k] - lse).exp();
            let resid = p - if k == label { 1.0 } else { 0.0 };
            axpy(resid, row, g_w.row_mut(k));
            g_b[k] += resid;
        }
    }
    let penalty: f64 = weights.as_slice().iter().map(|w| w * w).sum();
    loss += 0.5 * l2_strength * penalty;
    (loss, g_w, g_b)
}

fn max_norm(g_w: &Matrix, g_b: &[f64]) -> f64 {
    g_b.iter().fold(g_w.max_abs(), |m, v| m.max(v.abs()))
}

pub fn logreg_fit(train_x: &Matrix, train_y: &[usize], hyper: LogRegHyper) -> Result<LogRegModel> {
    let c = class_count(train_x, train_y, 1)?;
    let d = train_x.cols();
    let l2 = hyper.l2_strength;

    let mut w = Matrix::zeros(c, d);
    let mut b = vec![0.0; c];
    let (mut loss, mut g_w, mut g_b) = logreg_objective(train_x, train_y, &w, &b, l2);
    if !loss.is_finite() {
        return Err(Error::NonFinite("initial logistic loss".into()));
    }
    let mut losses = vec![loss];
    let mut grad_norm = max_norm(&g_w, &g_b);
    // first trial step: inverse of a crude curvature bound
    let row_sq = train_x.row_iter().map(|r| dot(r, r)).fold(0.0, f64::max);
    let mut step = 1.0 / (l2 + 0.5 * train_x.rows() as f64 * (row_sq + 1.0)).max(1e-12);
    let mut iterations = 0;

    while grad_norm > hyper.tol && iterations < hyper.max_iter {
        iterations += 1;
        let g_sq: f64 = g_w.as_slice().iter().chain(&g_b).map(|v| v * v).sum();
        let mut t = step;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let w_new = w.sub(&g_w.scale(t))?;
            let b_new: Vec<f64> = b.iter().zip(&g_b).map(|(bi, gi)| bi - t * gi).collect();
            let (l_new, gw_new, gb_new) = logreg_objective(train_x, train_y, &w_new, &b_new, l2);
            if l_new.is_finite() && l_new <= loss - ARMIJO_C * t * g_sq {
                accepted = Some((w_new, b_new, l_new, gw_new, gb_new));
                break;
            }
            t *= 0.5;
        }
        let Some((w_new, b_new, l_new, gw_new, gb_new)) = accepted else {
            // no decrease possible at machine precision
            break;
        };

        // Barzilai–Borwein step for the next iteration
        let s_dot_s: f64 =
            w_new.as_slice().iter().zip(w.as_slice()).chain(b_new.iter().zip(&b)).map(|(a, o)| (a - o) * (a - o)).sum();
        let s_dot_y: f64 = w_new
            .as_slice()
            .iter()
            .zip(w.as_slice())
            .zip(gw_new.as_slice().iter().zip(g_w.as_slice()))
            .chain(b_new.iter().zip(&b).zip(gb_new.iter().zip(&g_b)))
            .map(|((a, o), (ga, go))| (a - o) * (ga - go))
            .sum();
        step = if s_dot_y > 0.0 { (s_dot_s / s_dot_y).clamp(1e-12, 1e12) } else { t * 2.0 };

        w = w_new;
        b = b_new;
        loss = l_new;
        g_w = gw_new;
        g_b = gb_new;
        grad_norm = max_norm(&g_w, &g_b);
        losses.push(loss);
    }

    if !w.is_finite() || b.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("logistic regression parameters".into()));
    }
    let report = LogRegReport { iterations, losses, grad_norm, converged: grad_norm <= hyper.tol };
    Ok(LogRegModel { weights: w, biases: b, hyper, report: Some(report) })
}

pub fn logreg_predict(m: &LogRegModel, x: &Matrix) -> Result<Vec<usize>> {
    if x.cols() != m.weights.cols() {
        return Err(Error::DimensionMismatch { expected: m.weights.cols(), got: x.cols() });
    }
    Ok(x.row_iter().map(|r| argmax(&m.scores(r))).collect())
}
