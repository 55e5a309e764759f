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
//! Command line parsing for the experiment runner.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, ValueEnum};
use thiserror::Error;

use super::problems::GeometryOverrides;
use super::{ExperimentConfig, OutputFormat, ParamOverrides};
use crate::planner::StrategyKind;

/// Usage problems; the message already contains the usage text.
#[derive(Debug, Error)]
#[error("{message}")]
pub struct UsageError {
    pub message: String,
    /// Exit status to use: 0 for `--help`/`--version`, 2 otherwise.
    pub exit_code: i32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Timing {
    Wall,
    Off,
}

/// Benchmark sampling strategies for RRT planning on implicit manifolds.
#[derive(Debug, Parser)]
#[command(name = "manifold-rrt", version, allow_negative_numbers = true)]
struct Cli {
    /// Benchmark problem: circle2d, torus-slot, sphere-wall or chain5.
    #[arg(long)]
    problem: String,
    /// Sampling strategy; repeat for several. Defaults to all five.
    #[arg(long = "strategy", value_parser = parse_strategy)]
    strategies: Vec<StrategyKind>,
    /// Trials per strategy.
    #[arg(long, default_value_t = 50)]
    trials: u64,
    /// Seed of the first trial; trial i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Branch step size.
    #[arg(long)]
    delta: Option<f64>,
    /// Dynamic-domain radius R.
    #[arg(long = "big-r")]
    big_r: Option<f64>,
    /// kd-tree r-bounding margin.
    #[arg(long)]
    r: Option<f64>,
    /// Maximum chart span.
    #[arg(long)]
    rho: Option<f64>,
    /// Base chart sampling radius.
    #[arg(long = "rho-s")]
    rho_s: Option<f64>,
    /// Sampling-radius scaling step of atlas-dd.
    #[arg(long)]
    alpha: Option<f64>,
    /// Chart chord-error threshold.
    #[arg(long = "eps-dist")]
    eps_dist: Option<f64>,
    /// Chart angle threshold, as a cosine.
    #[arg(long = "cos-theta")]
    cos_theta: Option<f64>,
    /// Slot half-width of every slotted wall.
    #[arg(long = "slot-half-width")]
    slot_half_width: Option<f64>,
    /// Thickness of every slotted wall.
    #[arg(long = "wall-thickness")]
    wall_thickness: Option<f64>,
    /// Per-trial budget in seconds; longer runs count as failures.
    #[arg(long, default_value_t = 600.0)]
    timeout: f64,
    /// Per-trial iteration cap.
    #[arg(long = "max-iters", default_value_t = 1_000_000)]
    max_iters: u64,
    /// Report file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// `off` writes NA for t so reruns are byte-identical.
    #[arg(long, value_enum, default_value = "wall")]
    timing: Timing,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Prefix for path files of the first successful trial per strategy.
    #[arg(long = "path-out")]
    path_out: Option<PathBuf>,
}

fn parse_strategy(s: &str) -> Result<StrategyKind, String> {
    s.parse()
}

fn usage(message: impl Into<String>) -> UsageError {
    UsageError { message: message.into(), exit_code: 2 }
}

fn positive(name: &str, v: Option<f64>) -> Result<(), UsageError> {
    match v {
        Some(x) if !(x > 0.0 && x.is_finite()) => Err(usage(format!("--{name} must be positive, got {x}"))),
        _ => Ok(()),
    }
}

/// Parses `argv` (including the program name) into an experiment.
pub fn parse_cli<I, T>(argv: I) -> Result<ExperimentConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| UsageError {
        message: e.render().to_string(),
        exit_code: if e.use_stderr() { 2 } else { 0 },
    })?;
    for (name, v) in [
        ("delta", cli.delta),
        ("big-r", cli.big_r),
        ("r", cli.r),
        ("rho", cli.rho),
        ("rho-s", cli.rho_s),
        ("eps-dist", cli.eps_dist),
        ("slot-half-width", cli.slot_half_width),
        ("wall-thickness", cli.wall_thickness),
        ("timeout", Some(cli.timeout)),
    ] {
        positive(name, v)?;
    }
    if let Some(a) = cli.alpha {
        if !(0.0..1.0).contains(&a) {
            return Err(usage(format!("--alpha must lie in [0, 1), got {a}")));
        }
    }
    if let Some(c) = cli.cos_theta {
        if !(c > 0.0 && c < 1.0) {
            return Err(usage(format!("--cos-theta must lie in (0, 1), got {c}")));
        }
    }
    if cli.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    if cli.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }

    let mut cfg = ExperimentConfig::new(&cli.problem);
    if !cli.strategies.is_empty() {
        cfg.strategies = cli.strategies;
    }
    cfg.trials = cli.trials;
    cfg.seed_base = cli.seed;
    cfg.params = ParamOverrides {
        delta: cli.delta,
        big_r: cli.big_r,
        r: cli.r,
        rho: cli.rho,
        rho_s: cli.rho_s,
        alpha: cli.alpha,
        eps_dist: cli.eps_dist,
        cos_theta: cli.cos_theta,
    };
    cfg.geometry = GeometryOverrides { slot_half_width: cli.slot_half_width, wall_thickness: cli.wall_thickness };
    cfg.timeout = Duration::from_secs_f64(cli.timeout);
    cfg.max_iterations = cli.max_iters;
    cfg.timing = matches!(cli.timing, Timing::Wall);
    cfg.jobs = cli.jobs;
    cfg.out = cli.out;
    cfg.format = match cli.format {
        Format::Csv => OutputFormat::Csv,
        Format::Json => OutputFormat::Json,
    };
    cfg.path_out = cli.path_out;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        std::iter::once("manifold-rrt".to_string())
            .chain(s.split_whitespace().map(String::from))
            .collect()
    }

    #[test]
    fn basic_flags() {
        let cfg = parse_cli(args("--problem torus-slot --strategy atlas-dd --trials 50 --seed 7")).unwrap();
        assert_eq!(cfg.problem, "torus-slot");
        assert_eq!(cfg.strategies, vec![StrategyKind::AtlasDd]);
        assert_eq!(cfg.trials, 50);
        assert_eq!(cfg.seed_base, 7);
        assert_eq!(cfg.params, ParamOverrides::default());
        assert_eq!(cfg.timeout, Duration::from_secs(600));
        assert_eq!(cfg.format, OutputFormat::Csv);
    }

    #[test]
    fn repeated_strategies_and_overrides() {
        let cfg = parse_cli(args(
            "--problem circle2d --strategy dd --strategy kdtree --big-r 0.4 --r 0.2 --rho 0.3 --rho-s 2 --alpha 0.2 --format json --timing off",
        ))
        .unwrap();
        assert_eq!(cfg.strategies, vec![StrategyKind::DynamicDomain, StrategyKind::KdTree]);
        assert_eq!(cfg.params.big_r, Some(0.4));
        assert_eq!(cfg.params.rho_s, Some(2.0));
        assert_eq!(cfg.format, OutputFormat::Json);
        assert!(!cfg.timing);
    }

    #[test]
    fn negative_delta_is_usage_error() {
        let err = parse_cli(args("--problem circle2d --delta -1")).unwrap_err();
        assert_eq!(err.exit_code, 2);
        assert!(err.message.contains("delta"));
    }

    #[test]
    fn missing_problem_is_usage_error() {
        let err = parse_cli(args("")).unwrap_err();
        assert_eq!(err.exit_code, 2);
        assert!(err.message.contains("--problem"));
    }

    #[test]
    fn unknown_flags_and_strategies_rejected() {
        assert!(parse_cli(args("--problem circle2d --bogus 1")).is_err());
        assert!(parse_cli(args("--problem circle2d --strategy rrt-star")).is_err());
        assert!(parse_cli(args("--problem circle2d --alpha 1.5")).is_err());
    }
}
