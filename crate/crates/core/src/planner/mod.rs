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
//! Bidirectional RRT over an implicit manifold with pluggable sampling.
//!
//! Every iteration alternates the active tree, draws a target with the
//! configured strategy, grows a branch from the nearest node and then lets
//! the other tree grow greedily toward the new tip. The run is fully
//! determined by the seed apart from the wall-clock budget.

mod extend;
mod stats;
mod tree;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use web_time::Instant;

use crate::atlas::{Atlas, AtlasError, AtlasParams, BranchOutcome};
use crate::collision::{Obstacle, ObstacleSet};
use crate::manifold::ConstraintSystem;
use crate::sampling::AmbientSampler;
use crate::AmbientPoint;

pub use extend::{extend_branch, Branch, Projector, StepParams, Termination};
pub use stats::{collect_stats, RunCounters, RunStats};
pub use tree::{Rrt, RrtNode};

/// Redraws allowed per iteration when the dynamic domain rejects samples.
pub const MAX_DD_ATTEMPTS: usize = 100;

/// Strategy names without their parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StrategyKind {
    Ambient,
    DynamicDomain,
    KdTree,
    Atlas,
    AtlasDd,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 5] = [
        StrategyKind::Ambient,
        StrategyKind::DynamicDomain,
        StrategyKind::KdTree,
        StrategyKind::Atlas,
        StrategyKind::AtlasDd,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            StrategyKind::Ambient => "ambient",
            StrategyKind::DynamicDomain => "dd",
            StrategyKind::KdTree => "kdtree",
            StrategyKind::Atlas => "atlas",
            StrategyKind::AtlasDd => "atlas-dd",
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ambient" | "ambient-uniform" => Ok(StrategyKind::Ambient),
            "dd" | "dynamic-domain" => Ok(StrategyKind::DynamicDomain),
            "kdtree" | "kd-tree" => Ok(StrategyKind::KdTree),
            "atlas" => Ok(StrategyKind::Atlas),
            "atlas-dd" => Ok(StrategyKind::AtlasDd),
            other => Err(format!(
                "unknown strategy '{other}' (expected ambient, dd, kdtree, atlas or atlas-dd)"
            )),
        }
    }
}

/// A sampling strategy with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Strategy {
    /// Uniform in the ambient box.
    Ambient,
    /// Uniform in the ambient box, filtered by the dynamic domain of radius `R`.
    DynamicDomain { big_r: f64 },
    /// Uniform over the r-bounding rectangles of the active tree's kd-tree.
    KdTree { r: f64 },
    /// Atlas sampling with a fixed sampling radius; `alpha` is ignored.
    Atlas(AtlasParams),
    /// Atlas sampling with the adaptive global scale.
    AtlasDd(AtlasParams),
}

impl Strategy {
    pub fn kind(&self) -> StrategyKind {
        match self {
            Strategy::Ambient => StrategyKind::Ambient,
            Strategy::DynamicDomain { .. } => StrategyKind::DynamicDomain,
            Strategy::KdTree { .. } => StrategyKind::KdTree,
            Strategy::Atlas(_) => StrategyKind::Atlas,
            Strategy::AtlasDd(_) => StrategyKind::AtlasDd,
        }
    }

    pub fn atlas_params(&self) -> Option<AtlasParams> {
        match self {
            Strategy::Atlas(p) => Some(AtlasParams { alpha: 0.0, ..*p }),
            Strategy::AtlasDd(p) => Some(*p),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlannerConfig {
    pub strategy: Strategy,
    pub delta: f64,
    pub timeout: Duration,
    pub max_iterations: u64,
    pub stall_threshold: f64,
    pub goal_tolerance: f64,
    pub seed: u64,
}

impl PlannerConfig {
    pub fn new(strategy: Strategy, seed: u64) -> Self {
        let delta = 0.05;
        Self {
            strategy,
            delta,
            timeout: Duration::from_secs(600),
            max_iterations: 1_000_000,
            stall_threshold: 0.1 * delta,
            goal_tolerance: delta,
            seed,
        }
    }

    /// Sets `delta` and rescales the stall threshold and goal tolerance.
    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self.stall_threshold = 0.1 * delta;
        self.goal_tolerance = delta;
        self
    }

    pub fn validate(&self) -> Result<(), PlanError> {
        let bad = |m: &str| Err(PlanError::InvalidConfig(m.to_string()));
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return bad("delta must be positive");
        }
        if !(self.stall_threshold >= 0.0 && self.stall_threshold < self.delta) {
            return bad("stall threshold must lie in [0, delta)");
        }
        if !(self.goal_tolerance > 0.0 && self.goal_tolerance <= self.delta) {
            return bad("goal tolerance must lie in (0, delta]");
        }
        match self.strategy {
            Strategy::DynamicDomain { big_r } if !(big_r > 0.0) => bad("R must be positive"),
            Strategy::KdTree { r } if !(r > 0.0 && r.is_finite()) => bad("r must be positive"),
            _ => match self.strategy.atlas_params() {
                Some(p) => p.validate().map_err(PlanError::from),
                None => Ok(()),
            },
        }
    }

    fn step(&self) -> StepParams {
        StepParams {
            stall_threshold: self.stall_threshold,
            goal_tolerance: self.goal_tolerance,
            ..StepParams::new(self.delta)
        }
    }
}

/// Constraint system, obstacles and query of one planning problem.
#[derive(Clone, Debug)]
pub struct PlanningProblem {
    pub system: ConstraintSystem,
    pub obstacles: Vec<Obstacle>,
    pub start: AmbientPoint,
    pub goal: AmbientPoint,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlanError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("invalid planner configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Atlas(#[from] AtlasError),
}

#[derive(Clone, Debug)]
pub struct PlanResult {
    pub success: bool,
    pub timed_out: bool,
    /// Start to goal; empty on failure.
    pub path: Vec<AmbientPoint>,
    pub stats: RunStats,
    pub elapsed: Duration,
    /// Final trees rooted at start and goal.
    pub trees: [Vec<RrtNode>; 2],
    pub chart_centers: Vec<AmbientPoint>,
}

impl PlanResult {
    /// Everything except the wall-clock measurement, for determinism checks.
    pub fn same_outcome(&self, other: &PlanResult) -> bool {
        self.success == other.success
            && self.timed_out == other.timed_out
            && self.path == other.path
            && self.stats == other.stats
            && self.trees == other.trees
            && self.chart_centers == other.chart_centers
    }
}

struct Run<'a> {
    sys: &'a ConstraintSystem,
    obstacles: ObstacleSet,
    strategy: Strategy,
    step: StepParams,
    trees: [Rrt; 2],
    atlas: Option<Atlas>,
    ambient: AmbientSampler,
    rng: ChaCha8Rng,
    counters: RunCounters,
}

impl Run<'_> {
    /// Draws a target for tree `a` and picks the node to extend.
    fn draw(&mut self, a: usize) -> Option<(AmbientPoint, usize)> {
        match self.strategy {
            Strategy::Ambient => {
                self.counters.draws += 1;
                let x = self.ambient.sample(&mut self.rng);
                let (near, _) = self.trees[a].nearest(&x);
                Some((x, near))
            }
            Strategy::DynamicDomain { .. } => {
                for _ in 0..MAX_DD_ATTEMPTS {
                    self.counters.draws += 1;
                    let x = self.ambient.sample(&mut self.rng);
                    let (near, dist) = self.trees[a].nearest(&x);
                    if self.trees[a].dynamic_domain_mut().dd_accept(near, dist) {
                        return Some((x, near));
                    }
                    self.counters.rejected += 1;
                }
                None
            }
            Strategy::KdTree { .. } => {
                self.counters.draws += 1;
                let x = self.trees[a]
                    .index()
                    .sample(&mut self.rng)
                    .expect("kd-tree rectangles have positive volume for r > 0");
                let (near, _) = self.trees[a].nearest(&x);
                Some((x, near))
            }
            Strategy::Atlas(_) | Strategy::AtlasDd(_) => {
                let atlas = self.atlas.as_mut().expect("atlas strategies own an atlas");
                let (d0, r0) = (atlas.draws(), atlas.rejected());
                let drawn = atlas.sample(&mut self.rng);
                self.counters.draws += atlas.draws() - d0;
                self.counters.rejected += atlas.rejected() - r0;
                let (_, x) = drawn.ok()?;
                let (near, _) = self.trees[a].nearest(&x);
                Some((x, near))
            }
        }
    }

    fn grow(&mut self, t: usize, from: usize, target: &AmbientPoint) -> Branch {
        let mut projector = match self.atlas.as_mut() {
            Some(atlas) => Projector::Atlas(atlas),
            None => Projector::PseudoInverse,
        };
        let branch = extend_branch(
            self.sys,
            &self.obstacles,
            &mut self.trees[t],
            from,
            target,
            &self.step,
            &mut projector,
        );
        self.counters.branches += 1;
        let collided = branch.termination == Termination::Collision;
        if collided {
            self.counters.collision_branches += 1;
            if let Strategy::DynamicDomain { .. } = self.strategy {
                self.trees[t].dynamic_domain_mut().mark_boundary(from);
            }
        }
        if let Some(atlas) = self.atlas.as_mut() {
            if collided {
                atlas.update_scaling(BranchOutcome::Collided);
            } else if !branch.nodes.is_empty() {
                atlas.update_scaling(BranchOutcome::Succeeded);
            }
        }
        branch
    }

    fn join(&self, a: usize, tip_a: usize, tip_b: usize) -> Vec<AmbientPoint> {
        let mut path = self.trees[a].path_to_root(tip_a);
        path.reverse();
        path.extend(self.trees[1 - a].path_to_root(tip_b));
        if a == 1 {
            path.reverse();
        }
        path
    }

    fn finish(self, success: bool, timed_out: bool, path: Vec<AmbientPoint>, started: Instant) -> PlanResult {
        let elapsed = started.elapsed();
        let mut stats = collect_stats(
            &self.counters,
            self.obstacles.cd_count(),
            [self.trees[0].len(), self.trees[1].len()],
        );
        let mut chart_centers = Vec::new();
        if let Some(atlas) = &self.atlas {
            stats.charts = atlas.len();
            stats.final_scale = atlas.scale();
            stats.radius_floor_violations = atlas.floor_violations();
            chart_centers = atlas.charts().iter().map(|c| c.center().clone()).collect();
        }
        let [t0, t1] = self.trees;
        PlanResult {
            success,
            timed_out,
            path,
            stats,
            elapsed,
            trees: [t0.nodes().to_vec(), t1.nodes().to_vec()],
            chart_centers,
        }
    }
}

impl<'a> Run<'a> {
    fn new(problem: &'a PlanningProblem, config: &PlannerConfig) -> Result<Self, PlanError> {
        config.validate()?;
        let sys = &problem.system;
        for (name, q) in [("start", &problem.start), ("goal", &problem.goal)] {
            if q.len() != sys.n() {
                return Err(PlanError::InvalidQuery(format!("{name} has the wrong dimension")));
            }
            if !sys.is_on_manifold(q) {
                return Err(PlanError::InvalidQuery(format!("{name} is not on the manifold")));
            }
        }
        let obstacles = ObstacleSet::new(problem.obstacles.clone());
        if obstacles.in_collision(&problem.start) || obstacles.in_collision(&problem.goal) {
            return Err(PlanError::InvalidQuery("start or goal collides".into()));
        }

        let mut atlas = config.strategy.atlas_params().map(Atlas::new).transpose()?;
        let mut root_charts = [None, None];
        if let Some(atlas) = atlas.as_mut() {
            root_charts[0] = Some(atlas.add_chart(sys, &problem.start)?);
            root_charts[1] = Some(atlas.add_chart(sys, &problem.goal)?);
        }
        let r = match config.strategy {
            Strategy::KdTree { r } => r,
            _ => 0.0,
        };
        let big_r = match config.strategy {
            Strategy::DynamicDomain { big_r } => big_r,
            _ => f64::INFINITY,
        };
        let ambient_box = sys.ambient_box();
        let tree = |root: &AmbientPoint, chart| Rrt::new(root.clone(), chart, ambient_box, r, big_r, sys.tol_f);
        Ok(Run {
            sys,
            obstacles,
            strategy: config.strategy,
            step: config.step(),
            trees: [tree(&problem.start, root_charts[0]), tree(&problem.goal, root_charts[1])],
            atlas,
            ambient: AmbientSampler::new(ambient_box.clone()).expect("system boxes are proper"),
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            counters: RunCounters::default(),
        })
    }
}

/// Runs one bidirectional search from `problem.start` to `problem.goal`.
pub fn plan_bidirectional(problem: &PlanningProblem, config: &PlannerConfig) -> Result<PlanResult, PlanError> {
    let started = Instant::now();
    let mut run = Run::new(problem, config)?;

    let gap = (&problem.goal - &problem.start).norm();
    if gap == 0.0 {
        return Ok(run.finish(true, false, vec![problem.start.clone()], started));
    }
    if gap <= config.goal_tolerance {
        let path = vec![problem.start.clone(), problem.goal.clone()];
        return Ok(run.finish(true, false, path, started));
    }

    for iteration in 0..config.max_iterations {
        if started.elapsed() > config.timeout {
            return Ok(run.finish(false, true, Vec::new(), started));
        }
        run.counters.iterations += 1;
        let a = (iteration % 2) as usize;
        let b = 1 - a;
        let Some((target, near)) = run.draw(a) else {
            continue;
        };
        let branch = run.grow(a, near, &target);
        let Some(&tip_a) = branch.nodes.last() else {
            continue;
        };
        let tip_config = run.trees[a].node(tip_a).config.clone();
        let (near_b, _) = run.trees[b].nearest(&tip_config);
        let connect = run.grow(b, near_b, &tip_config);
        if connect.termination == Termination::Reached {
            let tip_b = connect.nodes.last().copied().unwrap_or(near_b);
            let path = run.join(a, tip_a, tip_b);
            return Ok(run.finish(true, false, path, started));
        }
    }
    Ok(run.finish(false, false, Vec::new(), started))
}
