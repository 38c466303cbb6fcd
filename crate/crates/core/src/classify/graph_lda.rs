//! Whitening in the GSO eigenbasis followed by nearest class mean.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::preprocess::{apply_whitening, WhiteningTransform};

use super::ncm::{ncm_fit, ncm_predict, NcmModel};

#[derive(Debug, Clone, PartialEq)]
pub struct GraphLdaModel {
    whitening: WhiteningTransform,
    ncm: NcmModel,
}

impl GraphLdaModel {
    pub fn whitening(&self) -> &WhiteningTransform {
        &self.whitening
    }

    /// Nearest-mean model over whitened coordinates.
    pub fn ncm(&self) -> &NcmModel {
        &self.ncm
    }

    /// Squared whitened distances from every row of `x` to every centroid.
    pub fn whitened_distances(&self, x: &Matrix) -> Result<Vec<Vec<f64>>> {
        let xw = apply_whitening(&self.whitening, x)?;
        Ok(xw.row_iter().map(|r| self.ncm.squared_distances(r)).collect())
    }
}

pub fn graph_lda_fit(w: &WhiteningTransform, train_x: &Matrix, train_y: &[usize]) -> Result<GraphLdaModel> {
    let ncm = ncm_fit(&apply_whitening(w, train_x)?, train_y)?;
    if ncm.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), got: ncm.dim() });
    }
    Ok(GraphLdaModel { whitening: w.clone(), ncm })
}

pub fn graph_lda_predict(m: &GraphLdaModel, x: &Matrix) -> Result<Vec<usize>> {
    ncm_predict(&m.ncm, &apply_whitening(&m.whitening, x)?)
}
