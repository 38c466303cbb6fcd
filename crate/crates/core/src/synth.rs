//! Synthetic signals `x = μ_c + α·S·n₁ + β·n₀` and few-shot episodes.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matrix::{axpy, Matrix};
use crate::spectral::SymMatrix;

/// Noise model: `alpha` scales the graph-colored term, `beta` the isotropic one.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub alpha: f64,
    pub beta: f64,
    pub gso: SymMatrix,
}

impl ModelParams {
    pub fn new(alpha: f64, beta: f64, gso: SymMatrix) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} = {v} must be finite and nonnegative")));
            }
        }
        Ok(Self { alpha, beta, gso })
    }

    pub fn dim(&self) -> usize {
        self.gso.dim()
    }

    /// `β/α`, infinite when `alpha` is zero.
    pub fn noise_ratio(&self) -> f64 {
        self.beta / self.alpha
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassMeans {
    means: Vec<Vec<f64>>,
}

impl ClassMeans {
    pub fn new(means: Vec<Vec<f64>>) -> Result<Self> {
        if means.len() < 2 {
            return Err(Error::InvalidConfig("at least two classes are required".into()));
        }
        let d = means[0].len();
        if let Some(bad) = means.iter().find(|m| m.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: bad.len() });
        }
        if means.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self { means })
    }

    pub fn n_classes(&self) -> usize {
        self.means.len()
    }

    pub fn dim(&self) -> usize {
        self.means[0].len()
    }

    pub fn mean(&self, c: usize) -> &[f64] {
        &self.means[c]
    }

    pub fn as_slice(&self) -> &[Vec<f64>] {
        &self.means
    }

    /// Every mean multiplied by `t`.
    pub fn scaled(&self, t: f64) -> ClassMeans {
        ClassMeans { means: self.means.iter().map(|m| m.iter().map(|v| v * t).collect()).collect() }
    }
}

/// Rows of `x` labeled by `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSamples {
    pub x: Matrix,
    pub y: Vec<usize>,
}

/// One balanced few-shot problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Episode {
    pub train_x: Matrix,
    pub train_y: Vec<usize>,
    pub query_x: Matrix,
    pub query_y: Vec<usize>,
    pub n_classes: usize,
}

/// Draws class means with i.i.d. `U[-1, 1]` coordinates. In antipodal mode
/// (two classes only) the second mean is the negation of the first.
pub fn sample_class_means<R: Rng + ?Sized>(d: usize, c: usize, antipodal: bool, rng: &mut R) -> Result<ClassMeans> {
    if antipodal && c != 2 {
        return Err(Error::InvalidConfig(format!("antipodal means need exactly 2 classes, got {c}")));
    }
    if d == 0 {
        return Err(Error::InvalidConfig("dimension must be positive".into()));
    }
    let mut uniform = || -> Vec<f64> { (0..d).map(|_| rng.random_range(-1.0..=1.0)).collect() };
    let means = if antipodal {
        let first = uniform();
        let second = first.iter().map(|v| -v).collect();
        vec![first, second]
    } else {
        (0..c).map(|_| uniform()).collect()
    };
    ClassMeans::new(means)
}

/// Draws `n_per_class` samples for every class, grouped by class.
pub fn sample_signals<R: Rng + ?Sized>(
    means: &ClassMeans,
    params: &ModelParams,
    n_per_class: usize,
    rng: &mut R,
) -> Result<LabeledSamples> {
    let d = params.dim();
    if means.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: means.dim() });
    }
    let c = means.n_classes();
    let s = params.gso.as_matrix();
    let mut x = Matrix::zeros(c * n_per_class, d);
    let mut y = Vec::with_capacity(c * n_per_class);
    let mut n1 = vec![0.0; d];
    let mut n0 = vec![0.0; d];
    for class in 0..c {
        for k in 0..n_per_class {
            n1.iter_mut().for_each(|v| *v = rng.sample(StandardNormal));
            n0.iter_mut().for_each(|v| *v = rng.sample(StandardNormal));
            let row = x.row_mut(class * n_per_class + k);
            row.copy_from_slice(means.mean(class));
            if params.alpha != 0.0 {
                for (r, s_row) in row.iter_mut().zip(s.row_iter()) {
                    *r += params.alpha * s_row.iter().zip(&n1).map(|(a, b)| a * b).sum::<f64>();
                }
            }
            if params.beta != 0.0 {
                axpy(params.beta, &n0, row);
            }
            y.push(class);
        }
    }
    Ok(LabeledSamples { x, y })
}

/// `α²S² + β²I`
pub fn true_covariance(params: &ModelParams) -> SymMatrix {
    let d = params.dim();
    let mut m = params.gso.square().into_matrix().scale(params.alpha * params.alpha);
    for i in 0..d {
        m[(i, i)] += params.beta * params.beta;
    }
    SymMatrix::new(m).expect("α²S² + β²I is symmetric")
}

/// Draws `k_shot` training and `q_query` query samples per class.
pub fn make_episode<R: Rng + ?Sized>(
    means: &ClassMeans,
    params: &ModelParams,
    k_shot: usize,
    q_query: usize,
    rng: &mut R,
) -> Result<Episode> {
    if k_shot == 0 || q_query == 0 {
        return Err(Error::InvalidConfig("shots and queries per class must be positive".into()));
    }
    let train = sample_signals(means, params, k_shot, rng)?;
    let query = sample_signals(means, params, q_query, rng)?;
    Ok(Episode { train_x: train.x, train_y: train.y, query_x: query.x, query_y: query.y, n_classes: means.n_classes() })
}

/// Sample covariance (`n − 1` denominator) of the rows of `x`.
pub fn empirical_covariance(x: &Matrix) -> Result<SymMatrix> {
    if x.rows() < 2 {
        return Err(Error::InsufficientData("covariance needs at least 2 rows".into()));
    }
    let mean = x.mean_rows();
    let d = x.cols();
    let mut cov = Matrix::zeros(d, d);
    let mut centered = vec![0.0; d];
    for r in x.row_iter() {
        for ((c, v), m) in centered.iter_mut().zip(r).zip(&mean) {
            *c = v - m;
        }
        for i in 0..d {
            let ci = centered[i];
            axpy(ci, &centered, cov.row_mut(i));
        }
    }
    SymMatrix::new(cov.scale(1.0 / (x.rows() as f64 - 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k2() -> SymMatrix {
        SymMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap()
    }

    #[test]
    fn antipodal_means_are_exact_negations() {
        let m = sample_class_means(50, 2, true, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        for (a, b) in m.mean(0).iter().zip(m.mean(1)) {
            assert_eq!(*a, -*b);
        }
    }

    #[test]
    fn means_in_unit_box_and_deterministic() {
        let a = sample_class_means(3, 4, false, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = sample_class_means(3, 4, false, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        assert!(a.as_slice().iter().flatten().all(|v| (-1.0..=1.0).contains(v)));
    }

    #[test]
    fn antipodal_needs_two_classes() {
        let err = sample_class_means(3, 3, true, &mut ChaCha8Rng::seed_from_u64(0)).unwrap_err();
        assert!(matches!(err, Error::InvalidConfig(_)));
    }

    #[test]
    fn noiseless_samples_equal_means() {
        let means = ClassMeans::new(vec![vec![0.3, -0.7], vec![1.0, 0.25]]).unwrap();
        let params = ModelParams::new(0.0, 0.0, k2()).unwrap();
        let s = sample_signals(&means, &params, 4, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        for (row, &label) in s.x.row_iter().zip(&s.y) {
            assert_eq!(row, means.mean(label));
        }
    }

    #[test]
    fn sample_dimension_mismatch() {
        let means = ClassMeans::new(vec![vec![0.0; 3], vec![1.0; 3]]).unwrap();
        let params = ModelParams::new(1.0, 1.0, k2()).unwrap();
        let err = sample_signals(&means, &params, 1, &mut ChaCha8Rng::seed_from_u64(1)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn true_covariance_cases() {
        let p = ModelParams::new(1.0, 1.0, k2()).unwrap();
        assert_eq!(true_covariance(&p).as_matrix(), &Matrix::identity(2).scale(2.0));
        let p = ModelParams::new(0.0, 3.0, k2()).unwrap();
        assert_eq!(true_covariance(&p).as_matrix(), &Matrix::identity(2).scale(9.0));
        let p = ModelParams::new(2.0, 3.0, SymMatrix::zeros(3)).unwrap();
        assert_eq!(true_covariance(&p).as_matrix(), &Matrix::identity(3).scale(9.0));
    }

    #[test]
    fn negative_noise_rejected() {
        assert!(ModelParams::new(-1.0, 1.0, k2()).is_err());
        assert!(ModelParams::new(1.0, f64::NAN, k2()).is_err());
    }

    #[test]
    fn episode_shapes_and_determinism() {
        let means = sample_class_means(2, 2, true, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let params = ModelParams::new(1.0, 1.0, k2()).unwrap();
        let e1 = make_episode(&means, &params, 5, 100, &mut ChaCha8Rng::seed_from_u64(6)).unwrap();
        let e2 = make_episode(&means, &params, 5, 100, &mut ChaCha8Rng::seed_from_u64(6)).unwrap();
        assert_eq!(e1, e2);
        assert_eq!(e1.train_x.rows(), 10);
        assert_eq!(e1.query_x.rows(), 200);
        assert_eq!(e1.train_y.iter().filter(|&&y| y == 1).count(), 5);
        assert_eq!(e1.query_y.iter().filter(|&&y| y == 0).count(), 100);
        assert!(make_episode(&means, &params, 0, 1, &mut ChaCha8Rng::seed_from_u64(6)).is_err());
    }
}
