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
//! Per-trial rows, aggregates and their CSV / JSON encodings.
//!
//! CSV columns: `problem,strategy,seed,t,cd_tests,col_bran,succ,rej`. Each
//! strategy gets one row per trial followed by an aggregate row whose seed
//! field reads `mean`. Aggregates average over successful trials only; when
//! no trial succeeded the averaged fields are left empty.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::planner::{PlanResult, StrategyKind};

pub const SCHEMA_VERSION: u32 = 1;
pub const CSV_HEADER: &str = "problem,strategy,seed,t,cd_tests,col_bran,succ,rej";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub problem: String,
    pub strategy: String,
    pub seed: u64,
    /// Wall-clock seconds, absent when timing is disabled.
    pub t: Option<f64>,
    pub cd_tests: u64,
    pub col_bran: f64,
    pub succ: bool,
    pub rej: f64,
    pub timed_out: bool,
    pub nodes: usize,
    pub charts: usize,
    pub final_scale: f64,
    pub radius_floor_violations: u64,
}

impl TrialRecord {
    pub fn new(problem: &str, kind: StrategyKind, seed: u64, result: &PlanResult, timing: bool) -> Self {
        let s = &result.stats;
        Self {
            problem: problem.to_string(),
            strategy: kind.name().to_string(),
            seed,
            t: timing.then_some(result.elapsed.as_secs_f64()),
            cd_tests: s.cd_tests,
            col_bran: s.collision_branch_ratio,
            succ: result.success,
            rej: s.rejection_ratio,
            timed_out: result.timed_out,
            nodes: s.nodes[0] + s.nodes[1],
            charts: s.charts,
            final_scale: s.final_scale,
            radius_floor_violations: s.radius_floor_violations,
        }
    }
}

/// Means over the successful trials of one strategy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub problem: String,
    pub strategy: String,
    pub trials: usize,
    pub successes: usize,
    pub succ: f64,
    pub t: Option<f64>,
    pub cd_tests: Option<f64>,
    pub col_bran: Option<f64>,
    pub rej: Option<f64>,
}

impl Aggregate {
    fn from_records(problem: &str, strategy: &str, records: &[&TrialRecord]) -> Self {
        let ok: Vec<_> = records.iter().filter(|r| r.succ).collect();
        let mean = |f: &dyn Fn(&TrialRecord) -> f64| -> Option<f64> {
            (!ok.is_empty()).then(|| ok.iter().map(|r| f(r)).sum::<f64>() / ok.len() as f64)
        };
        let timed = ok.iter().all(|r| r.t.is_some());
        Self {
            problem: problem.to_string(),
            strategy: strategy.to_string(),
            trials: records.len(),
            successes: ok.len(),
            succ: if records.is_empty() { 0.0 } else { ok.len() as f64 / records.len() as f64 },
            t: if timed { mean(&|r| r.t.unwrap_or(0.0)) } else { None },
            cd_tests: mean(&|r| r.cd_tests as f64),
            col_bran: mean(&|r| r.col_bran),
            rej: mean(&|r| r.rej),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub problem: String,
    pub trials: Vec<TrialRecord>,
    pub aggregates: Vec<Aggregate>,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ExperimentReport {
    pub fn new(problem: &str, strategies: &[StrategyKind], trials: Vec<TrialRecord>) -> Self {
        let aggregates = strategies
            .iter()
            .map(|k| {
                let rows: Vec<_> = trials.iter().filter(|r| r.strategy == k.name()).collect();
                Aggregate::from_records(problem, k.name(), &rows)
            })
            .collect();
        Self { schema_version: SCHEMA_VERSION, problem: problem.to_string(), trials, aggregates }
    }

    pub fn aggregate(&self, kind: StrategyKind) -> Option<&Aggregate> {
        self.aggregates.iter().find(|a| a.strategy == kind.name())
    }

    pub fn records(&self, kind: StrategyKind) -> impl Iterator<Item = &TrialRecord> {
        self.trials.iter().filter(move |r| r.strategy == kind.name())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{CSV_HEADER}").unwrap();
        for agg in &self.aggregates {
            for r in self.trials.iter().filter(|r| r.strategy == agg.strategy) {
                let t = r.t.map(|t| format!("{t:.6}")).unwrap_or_else(|| "NA".into());
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.problem, r.strategy, r.seed, t, r.cd_tests, r.col_bran, u8::from(r.succ), r.rej
                )
                .unwrap();
            }
            writeln!(
                out,
                "{},{},mean,{},{},{},{},{}",
                agg.problem,
                agg.strategy,
                agg.t.map(|t| format!("{t:.6}")).unwrap_or_default(),
                opt(agg.cd_tests),
                opt(agg.col_bran),
                agg.succ,
                opt(agg.rej)
            )
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
