use crate::error::{Error, Result};
use crate::matrix::{squared_distance, Matrix};

use super::{class_count, class_means};

/// Nearest class mean: one centroid per class.
#[derive(Debug, Clone, PartialEq)]
pub struct NcmModel {
    centroids: Matrix,
}

impl NcmModel {
    pub fn from_centroids(centroids: Matrix) -> Result<Self> {
        if centroids.rows() == 0 {
            return Err(Error::EmptyInput);
        }
        if !centroids.is_finite() {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self { centroids })
    }

    /// Row `c` is the centroid of class `c`.
    pub fn centroids(&self) -> &Matrix {
        &self.centroids
    }

    pub fn n_classes(&self) -> usize {
        self.centroids.rows()
    }

    pub fn dim(&self) -> usize {
        self.centroids.cols()
    }

    pub fn class_ids(&self) -> std::ops::Range<usize> {
        0..self.n_classes()
    }

    /// Squared Euclidean distance from `x` to every centroid.
    pub fn squared_distances(&self, x: &[f64]) -> Vec<f64> {
        self.centroids.row_iter().map(|c| squared_distance(c, x)).collect()
    }
}

pub fn ncm_fit(train_x: &Matrix, train_y: &[usize]) -> Result<NcmModel> {
    let c = class_count(train_x, train_y, 1)?;
    NcmModel::from_centroids(class_means(train_x, train_y, c))
}

pub fn ncm_predict(m: &NcmModel, x: &Matrix) -> Result<Vec<usize>> {
    if x.cols() != m.dim() {
        return Err(Error::DimensionMismatch { expected: m.dim(), got: x.cols() });
    }
    Ok(x.row_iter()
        .map(|row| {
            let d = m.squared_distances(row);
            let mut best = 0;
            for (i, &v) in d.iter().enumerate().skip(1) {
                if v < d[best] {
                    best = i;
                }
            }
            best
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_class() -> NcmModel {
        let x = Matrix::from_rows(&[[0.0, 0.0], [2.0, 0.0], [2.0, 0.0]]).unwrap();
        ncm_fit(&x, &[0, 0, 1]).unwrap()
    }

    #[test]
    fn centroid_is_class_mean() {
        let m = two_class();
        assert_eq!(m.centroids().row(0), &[1.0, 0.0]);
        assert_eq!(m.centroids().row(1), &[2.0, 0.0]);
    }

    #[test]
    fn single_shot_centroid_is_sample() {
        let x = Matrix::from_rows(&[[0.5, -1.0], [3.0, 4.0]]).unwrap();
        let m = ncm_fit(&x, &[0, 1]).unwrap();
        assert_eq!(m.centroids(), &x);
    }

    #[test]
    fn duplicated_training_set_same_centroids() {
        let x = Matrix::from_rows(&[[0.0, 1.0], [2.0, 3.0], [5.0, 5.0]]).unwrap();
        let y = [0, 0, 1];
        let xx = Matrix::from_rows(&[[0.0, 1.0], [2.0, 3.0], [5.0, 5.0], [0.0, 1.0], [2.0, 3.0], [5.0, 5.0]]).unwrap();
        assert_eq!(ncm_fit(&x, &y).unwrap(), ncm_fit(&xx, &[0, 0, 1, 0, 0, 1]).unwrap());
    }

    #[test]
    fn predict_nearest_and_ties() {
        let m = NcmModel::from_centroids(Matrix::from_rows(&[[0.0, 0.0], [2.0, 0.0]]).unwrap()).unwrap();
        let q = Matrix::from_rows(&[[0.9, 0.0], [1.0, 0.0], [2.0, 0.0], [0.0, 0.0]]).unwrap();
        assert_eq!(ncm_predict(&m, &q).unwrap(), vec![0, 0, 1, 0]);
        assert!(matches!(ncm_predict(&m, &Matrix::zeros(1, 3)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn missing_class_is_empty_class() {
        let x = Matrix::zeros(2, 1);
        assert_eq!(ncm_fit(&x, &[0, 2]).unwrap_err(), Error::EmptyClass { class: 1 });
    }
}
