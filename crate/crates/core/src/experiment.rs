//! Experiment harness: paired evaluation of every classifier ×
//! preprocessing cell on shared synthetic episodes, plus the shot curve and
//! the noise-ratio heatmap.
//!
//! Every problem owns a random stream derived from `(master_seed, index)`,
//! and results are folded in index order, so output does not depend on the
//! number of worker threads.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;

use crate::classify::{
    accuracy, graph_lda_fit, graph_lda_predict, lda_fit, lda_predict, logreg_fit, logreg_predict, ncm_fit, ncm_predict,
    LogRegHyper,
};
use crate::error::{Error, Result};
use crate::graphs::{gen_graph, normalized_adjacency, Graph, GraphSpec};
use crate::matrix::Matrix;
use crate::preprocess::{
    apply_whitening, estimate_gso_from_covariance, make_whitening, norm_scale, spectral_std_fit, std_apply, std_fit,
    WhiteningTransform,
};
use crate::rng::{stream_rng, Stream};
use crate::spectral::{eigh_symmetric, SpectralBasis, SymMatrix};
use crate::synth::{
    empirical_covariance, make_episode, sample_class_means, sample_signals, ClassMeans, Episode, ModelParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classifier {
    Ncm,
    Lr,
    Lda,
}

impl Classifier {
    pub const ALL: [Classifier; 3] = [Classifier::Ncm, Classifier::Lr, Classifier::Lda];

    pub fn name(self) -> &'static str {
        match self {
            Classifier::Ncm => "ncm",
            Classifier::Lr => "lr",
            Classifier::Lda => "lda",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preprocessing {
    None,
    /// Graph whitening `D^(-1/2) Uᵀ` with the configured σ̃.
    Ours,
    SpectralStd,
    Std,
    Norm,
}

impl Preprocessing {
    pub const ALL: [Preprocessing; 5] =
        [Preprocessing::None, Preprocessing::Ours, Preprocessing::SpectralStd, Preprocessing::Std, Preprocessing::Norm];

    pub fn name(self) -> &'static str {
        match self {
            Preprocessing::None => "none",
            Preprocessing::Ours => "ours",
            Preprocessing::SpectralStd => "spectral_std",
            Preprocessing::Std => "std",
            Preprocessing::Norm => "norm",
        }
    }
}

macro_rules! impl_named {
    ($ty:ty, $what:literal) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                Self::ALL
                    .into_iter()
                    .find(|v| v.name() == s)
                    .ok_or_else(|| Error::InvalidConfig(format!("unknown {} {s:?}", $what)))
            }
        }
    };
}

impl_named!(Classifier, "classifier");
impl_named!(Preprocessing, "preprocessing");

/// Which operator colors the noise and defines the whitening basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsoMode {
    /// `S = A`.
    Adjacency,
    /// `S = D^(-1/2) A D^(-1/2)`.
    Normalized,
    /// Data generated with `S = A`; the whitening basis comes from the
    /// square-rooted spectrum of an estimated covariance.
    CovEstimate,
}

impl FromStr for GsoMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacency" => Ok(GsoMode::Adjacency),
            "normalized" => Ok(GsoMode::Normalized),
            "cov_estimate" | "cov-estimate" => Ok(GsoMode::CovEstimate),
            other => Err(Error::InvalidConfig(format!("unknown GSO mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Random(GraphSpec),
    Fixed(Graph),
}

/// Covariance used by [`GsoMode::CovEstimate`].
#[derive(Debug, Clone, PartialEq)]
pub enum CovarianceSource {
    /// Sample covariance of this many zero-mean signals drawn from the model.
    HeldOut {
        samples: usize,
    },
    Fixed(SymMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    pub gso_mode: GsoMode,
    pub covariance: CovarianceSource,
    pub alpha: f64,
    pub beta: f64,
    pub sigma_hat: f64,
    pub classifiers: Vec<Classifier>,
    pub preprocessings: Vec<Preprocessing>,
    /// Two-class problems use antipodal means, more classes independent ones.
    pub n_classes: usize,
    pub k_shot: usize,
    pub q_query: usize,
    pub n_problems: usize,
    pub master_seed: u64,
    /// Ignored for [`GraphSource::Fixed`].
    pub redraw_graph_per_problem: bool,
    pub logreg: LogRegHyper,
}

pub const DEFAULT_Q_QUERY: usize = 100;

impl ExperimentConfig {
    /// Two classes, five shots, 100 problems, `α = β = σ̃ = 1`, all cells.
    pub fn new(graph: GraphSpec) -> Self {
        Self {
            graph: GraphSource::Random(graph),
            gso_mode: GsoMode::Adjacency,
            covariance: CovarianceSource::HeldOut { samples: 10_000 },
            alpha: 1.0,
            beta: 1.0,
            sigma_hat: 1.0,
            classifiers: Classifier::ALL.to_vec(),
            preprocessings: Preprocessing::ALL.to_vec(),
            n_classes: 2,
            k_shot: 5,
            q_query: DEFAULT_Q_QUERY,
            n_problems: 100,
            master_seed: 0,
            redraw_graph_per_problem: false,
            logreg: LogRegHyper::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.n_problems == 0 {
            return bad("n_problems must be at least 1");
        }
        if self.k_shot == 0 || self.q_query == 0 {
            return bad("shots and queries must be positive");
        }
        if self.n_classes < 2 {
            return bad("at least two classes are required");
        }
        if self.classifiers.is_empty() || self.preprocessings.is_empty() {
            return bad("at least one classifier and one preprocessing are required");
        }
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("sigma_hat", self.sigma_hat)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} = {v} must be finite and nonnegative")));
            }
        }
        if let GraphSource::Random(spec) = &self.graph {
            spec.validate()?;
        }
        if let CovarianceSource::HeldOut { samples } = self.covariance {
            if samples < 2 {
                return bad("held-out covariance needs at least 2 samples");
            }
        }
        Ok(())
    }
}

/// Mean accuracy and normal-approximation 95% half-width, both in percent.
/// With a single value the half-width is reported as 0.
pub fn aggregate_accuracy(per_problem: &[f64]) -> Result<(f64, f64)> {
    if per_problem.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = per_problem.len() as f64;
    let mean = per_problem.iter().sum::<f64>() / n;
    if per_problem.len() == 1 {
        return Ok((mean * 100.0, 0.0));
    }
    let var = per_problem.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / (n - 1.0);
    Ok((mean * 100.0, 1.96 * var.sqrt() / n.sqrt() * 100.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub classifier: Classifier,
    pub preprocessing: Preprocessing,
    pub k_shot: usize,
    /// `None` when the cell failed on every problem.
    pub mean_accuracy: Option<f64>,
    pub ci95: Option<f64>,
    pub n_problems: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
}

pub const TABLE_HEADER: &str = "classifier,preprocessing,shots,accuracy,ci95,n_problems";
pub const HEATMAP_HEADER: &str = "sigma,sigma_hat,accuracy,ci95";

fn opt4(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.4}")).unwrap_or_default()
}

impl ResultTable {
    pub fn get(&self, classifier: Classifier, preprocessing: Preprocessing, k_shot: usize) -> Option<&ResultRow> {
        self.rows.iter().find(|r| r.classifier == classifier && r.preprocessing == preprocessing && r.k_shot == k_shot)
    }

    /// Mean accuracy (percent) of a cell, `None` if absent or n/a.
    pub fn mean(&self, classifier: Classifier, preprocessing: Preprocessing, k_shot: usize) -> Option<f64> {
        self.get(classifier, preprocessing, k_shot).and_then(|r| r.mean_accuracy)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(TABLE_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.classifier,
                r.preprocessing,
                r.k_shot,
                opt4(r.mean_accuracy),
                opt4(r.ci95),
                r.n_problems
            )
            .expect("write to String");
        }
        out
    }

    /// Classifier × preprocessing grid per shot count, for terminal output.
    pub fn summary(&self) -> String {
        let mut shots: Vec<usize> = self.rows.iter().map(|r| r.k_shot).collect();
        shots.dedup();
        let mut preps: Vec<Preprocessing> = Vec::new();
        let mut clfs: Vec<Classifier> = Vec::new();
        for r in &self.rows {
            if !preps.contains(&r.preprocessing) {
                preps.push(r.preprocessing);
            }
            if !clfs.contains(&r.classifier) {
                clfs.push(r.classifier);
            }
        }
        let mut out = String::new();
        for k in shots {
            writeln!(out, "shots = {k}").unwrap();
            write!(out, "{:<6}", "").unwrap();
            for p in &preps {
                write!(out, "{:>18}", p.name()).unwrap();
            }
            out.push('\n');
            for c in &clfs {
                write!(out, "{:<6}", c.name()).unwrap();
                for p in &preps {
                    let cell = match self.get(*c, *p, k) {
                        Some(ResultRow { mean_accuracy: Some(m), ci95: Some(ci), .. }) => format!("{m:.2} ± {ci:.2}"),
                        _ => "n/a".to_string(),
                    };
                    write!(out, "{cell:>18}").unwrap();
                }
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapCell {
    pub sigma: f64,
    pub sigma_hat: f64,
    pub accuracy: f64,
    pub ci95: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Heatmap {
    pub cells: Vec<HeatmapCell>,
}

impl Heatmap {
    pub fn get(&self, sigma: f64, sigma_hat: f64) -> Option<&HeatmapCell> {
        self.cells.iter().find(|c| c.sigma == sigma && c.sigma_hat == sigma_hat)
    }

    pub fn row(&self, sigma: f64) -> impl Iterator<Item = &HeatmapCell> {
        self.cells.iter().filter(move |c| c.sigma == sigma)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(HEATMAP_HEADER);
        out.push('\n');
        for c in &self.cells {
            writeln!(out, "{:.4},{:.4},{:.4},{:.4}", c.sigma, c.sigma_hat, c.accuracy, c.ci95).unwrap();
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut hats: Vec<f64> = Vec::new();
        let mut sigmas: Vec<f64> = Vec::new();
        for c in &self.cells {
            if !hats.contains(&c.sigma_hat) {
                hats.push(c.sigma_hat);
            }
            if !sigmas.contains(&c.sigma) {
                sigmas.push(c.sigma);
            }
        }
        let mut out = String::from("sigma \\ sigma_hat");
        for h in &hats {
            write!(out, "{h:>9.3}").unwrap();
        }
        out.push('\n');
        for s in sigmas {
            write!(out, "{s:>17.3}").unwrap();
            for h in &hats {
                let acc = self.get(s, *h).map_or(f64::NAN, |c| c.accuracy);
                write!(out, "{acc:>9.2}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// `count` log-spaced values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            (0..count).map(|i| 10f64.powf(a + (b - a) * i as f64 / (count - 1) as f64)).collect()
        }
    }
}

/// Noise operator plus the basis the classifier whitens with.
struct Operators {
    gso: SymMatrix,
    basis: SpectralBasis,
}

fn draw_graph(cfg: &ExperimentConfig, graph_index: u64) -> Result<Graph> {
    match &cfg.graph {
        GraphSource::Fixed(g) => Ok(g.clone()),
        GraphSource::Random(spec) => gen_graph(spec, &mut stream_rng(cfg.master_seed, Stream::Graph, graph_index)),
    }
}

fn prepare(cfg: &ExperimentConfig, graph_index: u64) -> Result<Operators> {
    let graph = draw_graph(cfg, graph_index)?;
    match cfg.gso_mode {
        GsoMode::Adjacency => {
            let gso = graph.adjacency().clone();
            let basis = eigh_symmetric(&gso)?;
            Ok(Operators { gso, basis })
        }
        GsoMode::Normalized => {
            let gso = normalized_adjacency(&graph)?;
            let basis = eigh_symmetric(&gso)?;
            Ok(Operators { gso, basis })
        }
        GsoMode::CovEstimate => {
            let gso = graph.adjacency().clone();
            let sigma = match &cfg.covariance {
                CovarianceSource::Fixed(s) => s.clone(),
                CovarianceSource::HeldOut { samples } => {
                    let params = ModelParams::new(cfg.alpha, cfg.beta, gso.clone())?;
                    let zero = ClassMeans::new(vec![vec![0.0; gso.dim()]; 2])?;
                    let mut rng = stream_rng(cfg.master_seed, Stream::HeldOut, graph_index);
                    // two zero-mean "classes" of half the budget each
                    let held = sample_signals(&zero, &params, samples.div_ceil(2), &mut rng)?;
                    empirical_covariance(&held.x)?
                }
            };
            if sigma.dim() != gso.dim() {
                return Err(Error::DimensionMismatch { expected: gso.dim(), got: sigma.dim() });
            }
            let basis = estimate_gso_from_covariance(&sigma)?;
            Ok(Operators { gso, basis })
        }
    }
}

fn draw_episode(cfg: &ExperimentConfig, ops: &Operators, problem: usize, alpha: f64, beta: f64) -> Result<Episode> {
    let mut rng = stream_rng(cfg.master_seed, Stream::Problem, problem as u64);
    let means = sample_class_means(ops.gso.dim(), cfg.n_classes, cfg.n_classes == 2, &mut rng)?;
    let params = ModelParams::new(alpha, beta, ops.gso.clone())?;
    make_episode(&means, &params, cfg.k_shot, cfg.q_query, &mut rng)
}

fn preprocess(
    p: Preprocessing,
    whitening: &WhiteningTransform,
    basis: &SpectralBasis,
    ep: &Episode,
) -> Result<(Matrix, Matrix)> {
    match p {
        Preprocessing::None => Ok((ep.train_x.clone(), ep.query_x.clone())),
        Preprocessing::Ours => Ok((apply_whitening(whitening, &ep.train_x)?, apply_whitening(whitening, &ep.query_x)?)),
        Preprocessing::SpectralStd => {
            let s = spectral_std_fit(basis, &ep.train_x)?;
            Ok((s.apply(&ep.train_x)?, s.apply(&ep.query_x)?))
        }
        Preprocessing::Std => {
            let s = std_fit(&ep.train_x)?;
            Ok((std_apply(&s, &ep.train_x)?, std_apply(&s, &ep.query_x)?))
        }
        Preprocessing::Norm => Ok((norm_scale(&ep.train_x), norm_scale(&ep.query_x))),
    }
}

fn classify(
    c: Classifier,
    hyper: LogRegHyper,
    train_x: &Matrix,
    train_y: &[usize],
    query_x: &Matrix,
) -> Result<Vec<usize>> {
    match c {
        Classifier::Ncm => ncm_predict(&ncm_fit(train_x, train_y)?, query_x),
        Classifier::Lr => logreg_predict(&logreg_fit(train_x, train_y, hyper)?, query_x),
        Classifier::Lda => lda_predict(&lda_fit(train_x, train_y)?, query_x),
    }
}

/// Accuracy per cell (preprocessing-major) for one problem; `None` marks a
/// cell that failed on this problem.
fn evaluate_problem(cfg: &ExperimentConfig, shared: Option<&Operators>, problem: usize) -> Result<Vec<Option<f64>>> {
    let owned;
    let ops = match shared {
        Some(ops) => ops,
        None => {
            owned = prepare(cfg, problem as u64 + 1)?;
            &owned
        }
    };
    let whitening = make_whitening(&ops.basis, cfg.sigma_hat)?;
    let ep = draw_episode(cfg, ops, problem, cfg.alpha, cfg.beta)?;
    let mut out = Vec::with_capacity(cfg.preprocessings.len() * cfg.classifiers.len());
    for &p in &cfg.preprocessings {
        let data = preprocess(p, &whitening, &ops.basis, &ep);
        for &c in &cfg.classifiers {
            let acc = data
                .as_ref()
                .ok()
                .and_then(|(tr, q)| classify(c, cfg.logreg, tr, &ep.train_y, q).ok())
                .map(|pred| accuracy(&pred, &ep.query_y));
            out.push(acc);
        }
    }
    Ok(out)
}

fn shared_operators(cfg: &ExperimentConfig) -> Result<Option<Operators>> {
    let redraw = cfg.redraw_graph_per_problem && matches!(cfg.graph, GraphSource::Random(_));
    if redraw {
        Ok(None)
    } else {
        prepare(cfg, 0).map(Some)
    }
}

/// Evaluates every classifier × preprocessing cell on the same
/// `n_problems` episodes and aggregates per cell. Rows are ordered
/// classifier-major in configuration order.
pub fn run_table(cfg: &ExperimentConfig) -> Result<ResultTable> {
    cfg.validate()?;
    let ops = shared_operators(cfg)?;
    let per_problem: Vec<Vec<Option<f64>>> =
        (0..cfg.n_problems).into_par_iter().map(|i| evaluate_problem(cfg, ops.as_ref(), i)).collect::<Result<_>>()?;

    let n_clf = cfg.classifiers.len();
    let mut rows = Vec::new();
    for (ci, &classifier) in cfg.classifiers.iter().enumerate() {
        for (pi, &preprocessing) in cfg.preprocessings.iter().enumerate() {
            let accs: Vec<f64> = per_problem.iter().filter_map(|cells| cells[pi * n_clf + ci]).collect();
            let (mean, ci95) = match aggregate_accuracy(&accs) {
                Ok((m, c)) => (Some(m), Some(c)),
                Err(_) => (None, None),
            };
            rows.push(ResultRow {
                classifier,
                preprocessing,
                k_shot: cfg.k_shot,
                mean_accuracy: mean,
                ci95,
                n_problems: accs.len(),
            });
        }
    }
    Ok(ResultTable { rows })
}

/// One [`run_table`] per shot count, rows concatenated in `shots` order.
pub fn run_shot_curve(cfg: &ExperimentConfig, shots: &[usize]) -> Result<ResultTable> {
    if shots.is_empty() {
        return Err(Error::InvalidConfig("shot list is empty".into()));
    }
    let mut table = ResultTable::default();
    for &k in shots {
        let cfg_k = ExperimentConfig { k_shot: k, ..cfg.clone() };
        table.rows.extend(run_table(&cfg_k)?.rows);
    }
    Ok(table)
}

/// Graph-LDA accuracy when data are generated with `β = σ·α` and whitened
/// with σ̃, for every pair of the two grids. All cells share the per-problem
/// class means and noise draws.
pub fn run_sigma_heatmap(cfg: &ExperimentConfig, sigmas: &[f64], sigma_hats: &[f64]) -> Result<Heatmap> {
    cfg.validate()?;
    if sigmas.is_empty() || sigma_hats.is_empty() {
        return Err(Error::InvalidConfig("sigma grids must be nonempty".into()));
    }
    if sigmas.iter().chain(sigma_hats).any(|v| !(*v >= 0.0 && v.is_finite())) {
        return Err(Error::InvalidConfig("sigma grids must be finite and nonnegative".into()));
    }
    let ops = shared_operators(cfg)?;

    let per_problem: Vec<Vec<f64>> = (0..cfg.n_problems)
        .into_par_iter()
        .map(|problem| -> Result<Vec<f64>> {
            let owned;
            let ops = match ops.as_ref() {
                Some(o) => o,
                None => {
                    owned = prepare(cfg, problem as u64 + 1)?;
                    &owned
                }
            };
            let whitenings = sigma_hats.iter().map(|&h| make_whitening(&ops.basis, h)).collect::<Result<Vec<_>>>()?;
            let mut accs = Vec::with_capacity(sigmas.len() * sigma_hats.len());
            for &sigma in sigmas {
                let ep = draw_episode(cfg, ops, problem, cfg.alpha, sigma * cfg.alpha)?;
                // project once, rescale per σ̃
                let train_hat = ops.basis.gft_rows(&ep.train_x)?;
                let query_hat = ops.basis.gft_rows(&ep.query_x)?;
                for w in &whitenings {
                    let tr = scale_columns(&train_hat, w.scale());
                    let q = scale_columns(&query_hat, w.scale());
                    let pred = ncm_predict(&ncm_fit(&tr, &ep.train_y)?, &q)?;
                    accs.push(accuracy(&pred, &ep.query_y));
                }
            }
            Ok(accs)
        })
        .collect::<Result<_>>()?;

    let mut cells = Vec::new();
    for (si, &sigma) in sigmas.iter().enumerate() {
        for (hi, &sigma_hat) in sigma_hats.iter().enumerate() {
            let idx = si * sigma_hats.len() + hi;
            let accs: Vec<f64> = per_problem.iter().map(|a| a[idx]).collect();
            let (accuracy, ci95) = aggregate_accuracy(&accs)?;
            cells.push(HeatmapCell { sigma, sigma_hat, accuracy, ci95 });
        }
    }
    Ok(Heatmap { cells })
}

fn scale_columns(x: &Matrix, scale: &[f64]) -> Matrix {
    let mut out = x.clone();
    for i in 0..out.rows() {
        for (v, s) in out.row_mut(i).iter_mut().zip(scale) {
            *v *= s;
        }
    }
    out
}

/// Graph-LDA predictions for an episode, exposed for cross-checks.
pub fn graph_lda_episode(w: &WhiteningTransform, ep: &Episode) -> Result<Vec<usize>> {
    graph_lda_predict(&graph_lda_fit(w, &ep.train_x, &ep.train_y)?, &ep.query_x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::GraphFamily;

    #[test]
    fn aggregate_examples() {
        assert_eq!(aggregate_accuracy(&[1.0; 4]).unwrap(), (100.0, 0.0));
        let (m, ci) = aggregate_accuracy(&[1.0, 0.0, 1.0, 0.0]).unwrap();
        assert!((m - 50.0).abs() < 1e-12);
        assert!((ci - 56.5803).abs() < 1e-3, "{ci}");
        let (m, ci) = aggregate_accuracy(&[0.8]).unwrap();
        assert!((m - 80.0).abs() < 1e-12);
        assert_eq!(ci, 0.0);
        assert_eq!(aggregate_accuracy(&[]).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn names_round_trip() {
        for c in Classifier::ALL {
            assert_eq!(c.name().parse::<Classifier>().unwrap(), c);
        }
        for p in Preprocessing::ALL {
            assert_eq!(p.name().parse::<Preprocessing>().unwrap(), p);
        }
        assert!("svm".parse::<Classifier>().is_err());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(0.01, 100.0, 9);
        assert_eq!(g.len(), 9);
        assert!((g[0] - 0.01).abs() < 1e-15 && (g[4] - 1.0).abs() < 1e-12 && (g[8] - 100.0).abs() < 1e-10);
    }

    fn small_config() -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(GraphSpec::new(GraphFamily::ErdosRenyi { n: 12, p: 0.4 }));
        cfg.n_problems = 6;
        cfg.q_query = 10;
        cfg
    }

    #[test]
    fn noiseless_cells_are_perfect() {
        let mut cfg = small_config();
        cfg.alpha = 0.0;
        cfg.beta = 0.0;
        let t = run_table(&cfg).unwrap();
        assert_eq!(t.rows.len(), 15);
        for r in &t.rows {
            assert_eq!(r.mean_accuracy, Some(100.0), "{r:?}");
            assert_eq!(r.ci95, Some(0.0));
        }
    }

    #[test]
    fn lda_one_shot_is_na() {
        let mut cfg = small_config();
        cfg.k_shot = 1;
        let t = run_table(&cfg).unwrap();
        let row = t.get(Classifier::Lda, Preprocessing::None, 1).unwrap();
        assert_eq!(row.mean_accuracy, None);
        assert_eq!(row.n_problems, 0);
        assert!(t.to_csv().contains("lda,none,1,,,0\n"));
        assert!(t.mean(Classifier::Ncm, Preprocessing::Ours, 1).is_some());
    }

    #[test]
    fn csv_layout() {
        let t = run_table(&small_config()).unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), TABLE_HEADER);
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first[..3], ["ncm", "none", "5"]);
        assert_eq!(first[3].split('.').nth(1).unwrap().len(), 4);
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn invalid_config_rejected() {
        let mut cfg = small_config();
        cfg.n_problems = 0;
        assert!(run_table(&cfg).is_err());
        let mut cfg = small_config();
        cfg.classifiers.clear();
        assert!(run_table(&cfg).is_err());
        assert!(run_shot_curve(&small_config(), &[]).is_err());
        assert!(run_sigma_heatmap(&small_config(), &[], &[1.0]).is_err());
    }

    #[test]
    fn heatmap_noiseless_is_perfect() {
        let mut cfg = small_config();
        cfg.alpha = 0.0;
        let h = run_sigma_heatmap(&cfg, &[0.0], &[1.0]).unwrap();
        assert_eq!(h.cells[0].accuracy, 100.0);
    }

    #[test]
    fn redraw_per_problem_runs() {
        let mut cfg = small_config();
        cfg.redraw_graph_per_problem = true;
        let a = run_table(&cfg).unwrap();
        assert_eq!(a, run_table(&cfg).unwrap());
    }
}
