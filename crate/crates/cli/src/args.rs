use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_lda::experiment::{log_grid, CovarianceSource, GraphSource, DEFAULT_Q_QUERY};
use graph_lda::{io, Classifier, ExperimentConfig, GraphFamily, GraphSpec, GsoMode, LogRegHyper, Preprocessing};

#[derive(Debug, Parser)]
#[command(name = "graph-lda", version, about = "Few-shot graph signal classification benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Accuracy of every classifier x preprocessing cell at one shot count
    Table(TableArgs),
    /// Accuracy tables for a list of shot counts
    Curve(CurveArgs),
    /// Graph-LDA accuracy over a grid of true and assumed noise ratios
    Heatmap(HeatmapArgs),
    /// Run the built-in invariant checks
    Selftest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GraphKind {
    /// Erdős–Rényi
    Er,
    /// Stochastic block model
    Sbm,
    /// Random geometric graph in the unit square
    Rgg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GsoArg {
    Adjacency,
    Normalized,
    CovEstimate,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value = "er")]
    pub graph: GraphKind,
    /// Load the adjacency matrix from a CSV file instead of drawing a graph
    #[arg(long, value_name = "CSV")]
    pub adjacency: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub nodes: usize,
    /// Erdős–Rényi edge probability
    #[arg(long, default_value_t = 0.184)]
    pub p: f64,
    /// SBM block sizes
    #[arg(long, value_delimiter = ',', default_value = "50,50")]
    pub blocks: Vec<usize>,
    #[arg(long, default_value_t = 0.35)]
    pub p_in: f64,
    #[arg(long, default_value_t = 0.022)]
    pub p_out: f64,
    /// Random geometric connection radius
    #[arg(long, default_value_t = 0.274)]
    pub radius: f64,
    /// Accept disconnected graph draws
    #[arg(long)]
    pub allow_disconnected: bool,
    /// Draw a fresh graph for every problem
    #[arg(long)]
    pub redraw_graph: bool,

    #[arg(long, value_enum, default_value = "adjacency")]
    pub gso: GsoArg,
    /// Covariance CSV for --gso cov-estimate
    #[arg(long, value_name = "CSV")]
    pub covariance: Option<PathBuf>,
    /// Held-out samples for the covariance estimate when no file is given
    #[arg(long, default_value_t = 10_000)]
    pub cov_samples: usize,

    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 2)]
    pub classes: usize,
    #[arg(long, default_value_t = DEFAULT_Q_QUERY)]
    pub queries: usize,
    #[arg(long, default_value_t = 100)]
    pub problems: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = 1.0)]
    pub lr_l2: f64,
    #[arg(long, default_value_t = 1000)]
    pub lr_max_iter: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub lr_tol: f64,

    /// Output CSV path
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CellArgs {
    #[arg(long, value_delimiter = ',', default_value = "ncm,lr,lda")]
    pub classifiers: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "none,ours,spectral_std,std,norm")]
    pub preprocessings: Vec<String>,
    /// Whitening parameter (estimate of beta/alpha)
    #[arg(long, default_value_t = 1.0)]
    pub sigma_hat: f64,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub cells: CellArgs,
    #[arg(long, default_value_t = 5)]
    pub shots: usize,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub cells: CellArgs,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,10,15,20")]
    pub shots: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct HeatmapArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 5)]
    pub shots: usize,
    /// True noise ratios beta/alpha (default: 9 log-spaced values in [0.01, 100])
    #[arg(long, value_delimiter = ',')]
    pub sigmas: Option<Vec<f64>>,
    /// Whitening parameters (default: 9 log-spaced values in [0.01, 100])
    #[arg(long, value_delimiter = ',')]
    pub sigma_hats: Option<Vec<f64>>,
}

pub fn default_sigma_grid() -> Vec<f64> {
    log_grid(0.01, 100.0, 9)
}

impl CommonArgs {
    fn graph_spec(&self) -> GraphSpec {
        let family = match self.graph {
            GraphKind::Er => GraphFamily::ErdosRenyi { n: self.nodes, p: self.p },
            GraphKind::Sbm => GraphFamily::Sbm { block_sizes: self.blocks.clone(), p_in: self.p_in, p_out: self.p_out },
            GraphKind::Rgg => GraphFamily::RandomGeometric { n: self.nodes, radius: self.radius },
        };
        GraphSpec { family, require_connected: !self.allow_disconnected }
    }

    /// Builds the base configuration. Fails on unreadable or malformed input files.
    pub fn config(&self) -> graph_lda::Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::new(self.graph_spec());
        if let Some(path) = &self.adjacency {
            cfg.graph = GraphSource::Fixed(io::read_adjacency(path)?);
        }
        cfg.gso_mode = match self.gso {
            GsoArg::Adjacency => GsoMode::Adjacency,
            GsoArg::Normalized => GsoMode::Normalized,
            GsoArg::CovEstimate => GsoMode::CovEstimate,
        };
        cfg.covariance = match &self.covariance {
            Some(path) => CovarianceSource::Fixed(io::read_sym_matrix(path)?),
            None => CovarianceSource::HeldOut { samples: self.cov_samples },
        };
        cfg.alpha = self.alpha;
        cfg.beta = self.beta;
        cfg.n_classes = self.classes;
        cfg.q_query = self.queries;
        cfg.n_problems = self.problems;
        cfg.master_seed = self.seed;
        cfg.redraw_graph_per_problem = self.redraw_graph;
        cfg.logreg = LogRegHyper { l2_strength: self.lr_l2, max_iter: self.lr_max_iter, tol: self.lr_tol };
        Ok(cfg)
    }
}

impl CellArgs {
    pub fn apply(&self, cfg: &mut ExperimentConfig) -> graph_lda::Result<()> {
        cfg.classifiers = self.classifiers.iter().map(|s| s.parse::<Classifier>()).collect::<Result<_, _>>()?;
        cfg.preprocessings =
            self.preprocessings.iter().map(|s| s.parse::<Preprocessing>()).collect::<Result<_, _>>()?;
        cfg.sigma_hat = self.sigma_hat;
        Ok(())
    }
}
