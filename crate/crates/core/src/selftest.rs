//! Fast invariant checks runnable from a release binary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{lda_oracle, lda_predict};
use crate::error::Result;
use crate::experiment::{graph_lda_episode, run_table, ExperimentConfig};
use crate::graphs::{gen_graph, GraphFamily, GraphSpec};
use crate::matrix::Matrix;
use crate::preprocess::make_whitening;
use crate::spectral::{eigh_symmetric, gft, igft, SymMatrix};
use crate::synth::{make_episode, sample_class_means, true_covariance, ClassMeans, ModelParams};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    match f() {
        Ok((passed, detail)) => CheckResult { name, passed, detail },
        Err(e) => CheckResult { name, passed: false, detail: format!("error: {e}") },
    }
}

fn random_symmetric(d: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = rng.random_range(-1.0..1.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    SymMatrix::new(m).expect("symmetric by construction")
}

pub fn run_all() -> Vec<CheckResult> {
    vec![
        check("eigh: closed-form spectra of K2 and P3", || {
            let k2 = eigh_symmetric(&SymMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]])?)?;
            let p3 = eigh_symmetric(&SymMatrix::from_rows(&[[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]])?)?;
            let s2 = 2f64.sqrt();
            let err = k2
                .eigenvalues()
                .iter()
                .zip([-1.0, 1.0])
                .chain(p3.eigenvalues().iter().zip([-s2, 0.0, s2]))
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            Ok((err <= 1e-10, format!("max error {err:e}")))
        }),
        check("eigh: reconstruction and orthonormality", || {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let mut worst: f64 = 0.0;
            for d in [1, 2, 5, 17, 40] {
                let s = random_symmetric(d, &mut rng);
                let b = eigh_symmetric(&s)?;
                let rec = b.reconstruct().sub(s.as_matrix())?.max_abs() / s.as_matrix().max_abs().max(1.0);
                worst = worst.max(rec).max(b.orthonormality_error());
            }
            Ok((worst <= 1e-8, format!("worst residual {worst:e}")))
        }),
        check("gft: round trip", || {
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            let b = eigh_symmetric(&random_symmetric(20, &mut rng))?;
            let x: Vec<f64> = (0..20).map(|_| rng.random_range(-1.0..1.0)).collect();
            let back = igft(&b, &gft(&b, &x)?)?;
            let err = back.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            Ok((err <= 1e-10, format!("max error {err:e}")))
        }),
        check("whitening maps the model covariance to identity", || {
            let g = gen_graph(&GraphSpec::erdos_renyi_preset(), &mut ChaCha8Rng::seed_from_u64(3))?;
            let params = ModelParams::new(1.0, 1.0, g.adjacency().clone())?;
            let basis = eigh_symmetric(&params.gso)?;
            let p = make_whitening(&basis, 1.0)?.matrix();
            let sigma = true_covariance(&params);
            let white = p.matmul(sigma.as_matrix())?.matmul(&p.transpose())?;
            let err = white.sub(&Matrix::identity(basis.dim()))?.max_abs();
            Ok((err <= 1e-8, format!("max error {err:e}")))
        }),
        check("graph-LDA agrees with the LDA oracle", || {
            let spec = GraphSpec::new(GraphFamily::ErdosRenyi { n: 30, p: 0.2 });
            let mut rng = ChaCha8Rng::seed_from_u64(4);
            let g = gen_graph(&spec, &mut rng)?;
            let params = ModelParams::new(0.7, 1.4, g.adjacency().clone())?;
            let basis = eigh_symmetric(&params.gso)?;
            let w = make_whitening(&basis, 2.0)?;
            let sigma = true_covariance(&params);
            let mut mismatches = 0;
            for _ in 0..20 {
                let means = sample_class_means(30, 2, true, &mut rng)?;
                let ep = make_episode(&means, &params, 3, 20, &mut rng)?;
                let ours = graph_lda_episode(&w, &ep)?;
                let centroids = crate::classify::ncm_fit(&ep.train_x, &ep.train_y)?;
                let emp = ClassMeans::new(centroids.centroids().row_iter().map(<[f64]>::to_vec).collect())?;
                let oracle = lda_predict(&lda_oracle(&emp, &sigma)?, &ep.query_x)?;
                mismatches += ours.iter().zip(&oracle).filter(|(a, b)| a != b).count();
            }
            Ok((mismatches == 0, format!("{mismatches} mismatches")))
        }),
        check("run_table is deterministic", || {
            let mut cfg = ExperimentConfig::new(GraphSpec::new(GraphFamily::ErdosRenyi { n: 15, p: 0.3 }));
            cfg.n_problems = 4;
            cfg.q_query = 10;
            cfg.master_seed = 7;
            let a = run_table(&cfg)?.to_csv();
            let b = run_table(&cfg)?.to_csv();
            Ok((a == b, format!("{} bytes", a.len())))
        }),
    ]
}
