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
use std::time::Duration;

use manifold_rrt::bench::pathio::parse_path;
use manifold_rrt::bench::problems::{problem, GeometryOverrides};
use manifold_rrt::bench::{run_experiment, ExperimentConfig, OutputFormat, CSV_HEADER};
use manifold_rrt::StrategyKind;

#[test]
fn tiny_budget_fails_every_trial() {
    let mut cfg = ExperimentConfig::new("torus-slot");
    cfg.trials = 3;
    cfg.timeout = Duration::from_micros(1000);
    cfg.timing = false;
    let report = run_experiment(&cfg).unwrap();
    assert_eq!(report.trials.len(), 15);
    assert!(report.trials.iter().all(|t| !t.succ && t.timed_out));
    for agg in &report.aggregates {
        assert_eq!(agg.succ, 0.0);
        assert_eq!((agg.cd_tests, agg.col_bran, agg.rej, agg.t), (None, None, None, None));
    }
    let csv = report.to_csv();
    assert!(csv.contains("torus-slot,kdtree,mean,,,,0,\n"));
}

#[test]
fn single_trial_is_reproducible() {
    let mut cfg = ExperimentConfig::new("circle2d");
    cfg.strategies = vec![StrategyKind::Ambient];
    cfg.trials = 1;
    cfg.seed_base = 9;
    cfg.timing = false;
    let a = run_experiment(&cfg).unwrap().to_csv();
    let b = run_experiment(&cfg).unwrap().to_csv();
    assert_eq!(a, b);
    let lines: Vec<_> = a.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert!(lines[1].starts_with("circle2d,ambient,9,NA,"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn parallel_rows_keep_their_order() {
    let mut cfg = ExperimentConfig::new("chain5");
    cfg.trials = 4;
    cfg.timing = false;
    let serial = run_experiment(&cfg).unwrap().to_csv();
    cfg.jobs = 3;
    assert_eq!(run_experiment(&cfg).unwrap().to_csv(), serial);
}

#[test]
fn full_sweep_has_one_aggregate_per_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ExperimentConfig::new("sphere-wall");
    cfg.trials = 2;
    cfg.format = OutputFormat::Json;
    cfg.out = Some(dir.path().join("r.json"));
    cfg.path_out = Some(dir.path().join("p"));
    let report = run_experiment(&cfg).unwrap();
    let names: Vec<_> = report.aggregates.iter().map(|a| a.strategy.as_str()).collect();
    assert_eq!(names, ["ambient", "dd", "kdtree", "atlas", "atlas-dd"]);
    assert!(report.trials.iter().all(|t| t.t.is_some()));
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(written["schema_version"], 1);

    let spec = problem("sphere-wall", &GeometryOverrides::default()).unwrap();
    for kind in StrategyKind::ALL {
        let text = std::fs::read_to_string(dir.path().join(format!("p.{kind}.txt"))).unwrap();
        let (n, k, path) = parse_path(&text).unwrap();
        assert_eq!((n, k), (3, 2));
        assert_eq!(path.first(), Some(&spec.problem.start));
        assert_eq!(path.last(), Some(&spec.problem.goal));
    }
}

#[test]
fn geometry_overrides_change_the_problem() {
    let mut cfg = ExperimentConfig::new("circle2d");
    cfg.strategies = vec![StrategyKind::Ambient];
    cfg.trials = 1;
    cfg.timing = false;
    cfg.max_iterations = 2000;
    assert!(run_experiment(&cfg).unwrap().trials[0].succ);
    // A slot narrower than the circle's sag over the wall closes the passage.
    cfg.geometry = GeometryOverrides { slot_half_width: Some(0.001), wall_thickness: None };
    assert!(!run_experiment(&cfg).unwrap().trials[0].succ);
}

#[test]
fn bad_configs_are_rejected() {
    let mut cfg = ExperimentConfig::new("circle2d");
    cfg.trials = 0;
    assert!(run_experiment(&cfg).is_err());
    let mut cfg = ExperimentConfig::new("circle2d");
    cfg.strategies.clear();
    assert!(run_experiment(&cfg).is_err());
    assert!(run_experiment(&ExperimentConfig::new("nope")).is_err());
}
