//! Few-shot classification of graph signals.
//!
//! Signals are modeled as `x = μ_c + α·S·n₁ + β·n₀`: a class mean, noise
//! diffused by a graph shift operator `S`, and isotropic noise. Under that
//! model the Bayes-optimal linear discriminant reduces to whitening in the
//! eigenbasis of `S` (a single parameter σ̃ ≈ β/α) followed by a nearest
//! class mean rule. This crate provides that classifier, the usual
//! baselines, and a reproducible synthetic benchmark.

pub mod classify;
pub mod error;
pub mod experiment;
pub mod graphs;
pub mod io;
pub mod matrix;
pub mod preprocess;
pub mod rng;
pub mod selftest;
pub mod spectral;
pub mod synth;

pub use classify::{
    accuracy, graph_lda_fit, graph_lda_predict, lda_fit, lda_oracle, lda_predict, logreg_fit, logreg_predict, ncm_fit,
    ncm_predict, oas_covariance, GraphLdaModel, LdaModel, LogRegHyper, LogRegModel, NcmModel,
};
pub use error::{Error, Result};
pub use experiment::{
    aggregate_accuracy, graph_lda_episode, log_grid, run_shot_curve, run_sigma_heatmap, run_table, Classifier,
    CovarianceSource, ExperimentConfig, GraphSource, GsoMode, Heatmap, HeatmapCell, Preprocessing, ResultRow,
    ResultTable, HEATMAP_HEADER, TABLE_HEADER,
};
pub use graphs::{gen_graph, is_connected, normalized_adjacency, Graph, GraphFamily, GraphSpec};
pub use matrix::Matrix;
pub use preprocess::{apply_whitening, make_whitening, WhiteningTransform};
pub use spectral::{eigh_symmetric, gft, igft, SpectralBasis, SymMatrix};
pub use synth::{make_episode, sample_class_means, sample_signals, true_covariance, ClassMeans, Episode, ModelParams};
