/*
  Copyright 2026 The manifold-rrt Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/
//! Benchmark problems, the multi-seed experiment runner and its reports.

#[cfg(feature = "cli")]
pub mod cli;
pub mod pathio;
pub mod problems;
pub mod report;

use std::path::PathBuf;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planner::{plan_bidirectional, PlanError, PlanResult, PlannerConfig, StrategyKind};
use problems::{GeometryOverrides, ProblemSpec};
pub use report::{Aggregate, ExperimentReport, TrialRecord, CSV_HEADER, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("unknown problem '{0}' (available: circle2d, torus-slot, sphere-wall, chain5)")]
    UnknownProblem(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("invalid experiment: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Parameter overrides applied on top of a problem's tuned defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamOverrides {
    pub delta: Option<f64>,
    pub big_r: Option<f64>,
    pub r: Option<f64>,
    pub rho: Option<f64>,
    pub rho_s: Option<f64>,
    pub alpha: Option<f64>,
    pub eps_dist: Option<f64>,
    pub cos_theta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub problem: String,
    pub strategies: Vec<StrategyKind>,
    pub trials: u64,
    pub seed_base: u64,
    pub params: ParamOverrides,
    pub geometry: GeometryOverrides,
    pub timeout: Duration,
    pub max_iterations: u64,
    /// Record wall-clock time per trial. Without it the `t` column is `NA`
    /// and reports are reproducible byte for byte.
    pub timing: bool,
    /// Worker threads; trials are independent.
    pub jobs: usize,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    /// Writes the path of the first successful trial of each strategy to
    /// `<path_out>.<strategy>.txt`.
    pub path_out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(problem: &str) -> Self {
        Self {
            problem: problem.to_string(),
            strategies: StrategyKind::ALL.to_vec(),
            trials: 50,
            seed_base: 0,
            params: ParamOverrides::default(),
            geometry: GeometryOverrides::default(),
            timeout: Duration::from_secs(600),
            max_iterations: 1_000_000,
            timing: true,
            jobs: 1,
            out: None,
            format: OutputFormat::Csv,
            path_out: None,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |m: &str| Err(BenchError::InvalidConfig(m.to_string()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.strategies.is_empty() {
            return bad("at least one strategy is required");
        }
        if self.jobs == 0 {
            return bad("jobs must be at least 1");
        }
        Ok(())
    }

    /// Planner configuration of one (strategy, trial) pair.
    pub fn planner_config(&self, spec: &ProblemSpec, kind: StrategyKind, trial: u64) -> PlannerConfig {
        let p = &self.params;
        let mut defaults = spec.defaults;
        defaults.big_r = p.big_r.unwrap_or(defaults.big_r);
        defaults.r = p.r.unwrap_or(defaults.r);
        let a = &mut defaults.atlas;
        a.rho = p.rho.unwrap_or(a.rho);
        a.rho_s = p.rho_s.unwrap_or(a.rho_s);
        a.alpha = p.alpha.unwrap_or(a.alpha);
        a.eps_dist = p.eps_dist.unwrap_or(0.1 * a.rho);
        a.cos_theta_min = p.cos_theta.unwrap_or(a.cos_theta_min);
        let mut cfg = PlannerConfig::new(defaults.strategy(kind), self.seed_base.wrapping_add(trial));
        if let Some(delta) = p.delta {
            cfg = cfg.with_delta(delta);
        }
        cfg.timeout = self.timeout;
        cfg.max_iterations = self.max_iterations;
        cfg
    }
}

/// Runs every strategy for `cfg.trials` seeds and aggregates the results.
/// When `cfg.out` is set the report is also written there.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, BenchError> {
    cfg.validate()?;
    let spec = problems::problem(&cfg.problem, &cfg.geometry)?;
    let jobs: Vec<(StrategyKind, u64)> = cfg
        .strategies
        .iter()
        .flat_map(|k| (0..cfg.trials).map(move |t| (*k, t)))
        .collect();
    for (kind, _) in &jobs {
        cfg.planner_config(&spec, *kind, 0).validate()?;
    }

    let run_one = |&(kind, trial): &(StrategyKind, u64)| -> Result<(TrialRecord, PlanResult), BenchError> {
        let pc = cfg.planner_config(&spec, kind, trial);
        let result = plan_bidirectional(&spec.problem, &pc)?;
        let record = TrialRecord::new(spec.name, kind, pc.seed, &result, cfg.timing);
        Ok((record, result))
    };
    let outcomes = run_trials(&jobs, cfg.jobs, run_one)?;

    if let Some(prefix) = &cfg.path_out {
        for kind in &cfg.strategies {
            let first = outcomes.iter().find(|(rec, res)| rec.strategy == kind.name() && res.success);
            if let Some((_, res)) = first {
                let mut path = prefix.clone().into_os_string();
                path.push(format!(".{}.txt", kind.name()));
                let path = PathBuf::from(path);
                let text = pathio::format_path(spec.system().n(), spec.system().k(), &res.path);
                std::fs::write(&path, text).map_err(|source| BenchError::Io { path, source })?;
            }
        }
    }

    let records: Vec<TrialRecord> = outcomes.into_iter().map(|(r, _)| r).collect();
    let report = ExperimentReport::new(spec.name, &cfg.strategies, records);
    if let Some(path) = &cfg.out {
        let text = match cfg.format {
            OutputFormat::Csv => report.to_csv(),
            OutputFormat::Json => report.to_json(),
        };
        std::fs::write(path, text).map_err(|source| BenchError::Io { path: path.clone(), source })?;
    }
    Ok(report)
}

#[cfg(feature = "parallel")]
fn run_trials<T, F>(jobs: &[(StrategyKind, u64)], threads: usize, f: F) -> Result<Vec<T>, BenchError>
where
    T: Send,
    F: Fn(&(StrategyKind, u64)) -> Result<T, BenchError> + Sync + Send,
{
    use rayon::prelude::*;
    if threads <= 1 {
        return jobs.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| BenchError::InvalidConfig(e.to_string()))?;
    // Indexed collect keeps rows in (strategy, trial) order.
    pool.install(|| jobs.par_iter().map(f).collect())
}

#[cfg(not(feature = "parallel"))]
fn run_trials<T, F>(jobs: &[(StrategyKind, u64)], _threads: usize, f: F) -> Result<Vec<T>, BenchError>
where
    F: Fn(&(StrategyKind, u64)) -> Result<T, BenchError>,
{
    jobs.iter().map(f).collect()
}
