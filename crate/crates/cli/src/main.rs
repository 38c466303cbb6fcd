//! `graph-lda` command-line harness.
//!
//! Exit status: 0 on success, 2 for usage or configuration errors, 1 for
//! failures while running an experiment.

mod args;

use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use graph_lda::{run_shot_curve, run_sigma_heatmap, run_table, selftest, Error};

use args::{default_sigma_grid, Cli, Command};

/// Worker cap; unset or 0 means one per core.
const THREADS_ENV: &str = "GRAPHLDA_THREADS";

enum Failure {
    Config(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(_)
            | Error::Parse { .. }
            | Error::Io(_)
            | Error::NotSymmetric { .. }
            | Error::NotSquare { .. } => Failure::Config(e.into()),
            other => Failure::Runtime(other.into()),
        }
    }
}

fn thread_count() -> Result<usize, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Config(anyhow::anyhow!("{THREADS_ENV} must be a nonnegative integer, got {v:?}"))),
    }
}

fn write_csv(path: &Path, csv: &str) -> Result<(), Failure> {
    std::fs::write(path, csv).with_context(|| format!("writing {}", path.display())).map_err(Failure::Runtime)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Table(a) => {
            let mut cfg = a.common.config()?;
            a.cells.apply(&mut cfg)?;
            cfg.k_shot = a.shots;
            cfg.validate()?;
            let table = run_table(&cfg)?;
            write_csv(&a.common.out, &table.to_csv())?;
            print!("{}", table.summary());
        }
        Command::Curve(a) => {
            let mut cfg = a.common.config()?;
            a.cells.apply(&mut cfg)?;
            if a.shots.is_empty() {
                return Err(Error::InvalidConfig("shot list is empty".into()).into());
            }
            cfg.k_shot = a.shots[0];
            cfg.validate()?;
            let table = run_shot_curve(&cfg, &a.shots)?;
            write_csv(&a.common.out, &table.to_csv())?;
            print!("{}", table.summary());
        }
        Command::Heatmap(a) => {
            let mut cfg = a.common.config()?;
            cfg.k_shot = a.shots;
            cfg.validate()?;
            let sigmas = a.sigmas.unwrap_or_else(default_sigma_grid);
            let hats = a.sigma_hats.unwrap_or_else(default_sigma_grid);
            let map = run_sigma_heatmap(&cfg, &sigmas, &hats)?;
            write_csv(&a.common.out, &map.to_csv())?;
            print!("{}", map.summary());
        }
        Command::Selftest => {
            let results = selftest::run_all();
            let mut ok = true;
            for r in &results {
                println!("[{}] {} ({})", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
                ok &= r.passed;
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = thread_count().and_then(|threads| {
        let pool =
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| Failure::Runtime(e.into()))?;
        pool.install(|| run(cli))
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
