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
use serde::{Deserialize, Serialize};

/// Raw counters of one planning run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunCounters {
    pub iterations: u64,
    pub branches: u64,
    pub collision_branches: u64,
    pub draws: u64,
    pub rejected: u64,
}

/// Metrics reported per trial.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub cd_tests: u64,
    pub iterations: u64,
    pub branches: u64,
    pub collision_branches: u64,
    pub draws: u64,
    pub rejected: u64,
    /// Branches ended by a collision over all branches; 0 without branches.
    pub collision_branch_ratio: f64,
    /// Rejected draws over all draws; 0 without draws.
    pub rejection_ratio: f64,
    pub nodes: [usize; 2],
    pub charts: usize,
    pub final_scale: f64,
    pub radius_floor_violations: u64,
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

pub fn collect_stats(counters: &RunCounters, cd_tests: u64, nodes: [usize; 2]) -> RunStats {
    RunStats {
        cd_tests,
        iterations: counters.iterations,
        branches: counters.branches,
        collision_branches: counters.collision_branches,
        draws: counters.draws,
        rejected: counters.rejected,
        collision_branch_ratio: ratio(counters.collision_branches, counters.branches),
        rejection_ratio: ratio(counters.rejected, counters.draws),
        nodes,
        charts: 0,
        final_scale: 1.0,
        radius_floor_violations: 0,
    }
}
