//! Shared fixtures for the criterion benchmarks.

use graph_lda::rng::{stream_rng, Stream};
use graph_lda::{gen_graph, make_episode, sample_class_means, Episode, GraphSpec, ModelParams};

/// A preset graph's adjacency as model parameters with `α = β = 1`.
pub fn preset_params(spec: &GraphSpec, seed: u64) -> ModelParams {
    let g = gen_graph(spec, &mut stream_rng(seed, Stream::Graph, 0)).expect("preset graph");
    ModelParams::new(1.0, 1.0, g.adjacency().clone()).expect("valid params")
}

/// A two-class episode with antipodal means.
pub fn episode(params: &ModelParams, k_shot: usize, q_query: usize, seed: u64) -> Episode {
    let mut rng = stream_rng(seed, Stream::Problem, 0);
    let means = sample_class_means(params.dim(), 2, true, &mut rng).expect("means");
    make_episode(&means, params, k_shot, q_query, &mut rng).expect("episode")
}
