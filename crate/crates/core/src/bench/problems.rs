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
//! Built-in benchmark problems.
//!
//! Each problem is a small analytic stand-in for a class of constrained
//! planning difficulty:
//!
//! * `circle2d`: unit circle in the plane, one wall with a slot. Smoke test.
//! * `torus-slot`: torus (R = 2, r = 0.5) split into quadrants by two slotted
//!   walls; start and goal sit in opposite quadrants on the inner equator, so
//!   the path threads two narrow slots on the outer equator. One quadrant is
//!   a dead end. Maze-like sequence of narrow passages.
//! * `sphere-wall`: unit sphere with two offset horizontal walls whose slots
//!   sit on opposite sides. Going straight down from the north pole runs into
//!   the first wall, a local-minimum trap.
//! * `chain5`: planar closed chain of five unit links (n = 5 joint angles,
//!   two closure equations, k = 3) with ball obstacles in joint space.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::BenchError;
use crate::atlas::AtlasParams;
use crate::bounds::AxisBox;
use crate::collision::Obstacle;
use crate::manifold::{ConstraintSystem, Hypersphere, PlanarClosedChain, Torus};
use crate::planner::{PlanningProblem, Strategy, StrategyKind};
use crate::AmbientPoint;

pub const PROBLEM_NAMES: [&str; 4] = ["circle2d", "torus-slot", "sphere-wall", "chain5"];

/// Tuned strategy parameters of a problem.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyDefaults {
    pub big_r: f64,
    pub r: f64,
    pub atlas: AtlasParams,
}

impl StrategyDefaults {
    pub fn strategy(&self, kind: StrategyKind) -> Strategy {
        match kind {
            StrategyKind::Ambient => Strategy::Ambient,
            StrategyKind::DynamicDomain => Strategy::DynamicDomain { big_r: self.big_r },
            StrategyKind::KdTree => Strategy::KdTree { r: self.r },
            StrategyKind::Atlas => Strategy::Atlas(self.atlas),
            StrategyKind::AtlasDd => Strategy::AtlasDd(self.atlas),
        }
    }
}

/// Geometry overrides for the slotted walls of a problem.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GeometryOverrides {
    pub slot_half_width: Option<f64>,
    pub wall_thickness: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub name: &'static str,
    pub problem: PlanningProblem,
    pub defaults: StrategyDefaults,
    /// Length scale below which the manifold looks flat (reach).
    pub feature_size: f64,
}

impl ProblemSpec {
    pub fn system(&self) -> &ConstraintSystem {
        &self.problem.system
    }

    fn apply(mut self, overrides: &GeometryOverrides) -> Result<Self, BenchError> {
        for o in &mut self.problem.obstacles {
            if let Obstacle::SlottedWall { thickness, half_width, .. } = o {
                if let Some(t) = overrides.wall_thickness {
                    *thickness = t;
                }
                if let Some(h) = overrides.slot_half_width {
                    *half_width = h;
                }
            }
        }
        let n = self.problem.system.n();
        for o in &self.problem.obstacles {
            o.validate(n).map_err(|e| BenchError::InvalidProblem(e.to_string()))?;
        }
        Ok(self)
    }
}

/// All built-in problems with default geometry.
pub fn registry() -> Vec<ProblemSpec> {
    PROBLEM_NAMES
        .iter()
        .map(|n| problem(n, &GeometryOverrides::default()).expect("built-in problems are valid"))
        .collect()
}

pub fn problem(name: &str, overrides: &GeometryOverrides) -> Result<ProblemSpec, BenchError> {
    let spec = match name {
        "circle2d" => circle2d(),
        "torus-slot" => torus_slot(),
        "sphere-wall" => sphere_wall(),
        "chain5" => chain5(),
        other => return Err(BenchError::UnknownProblem(other.to_string())),
    };
    spec.apply(overrides)
}

fn pt(v: &[f64]) -> AmbientPoint {
    AmbientPoint::from_column_slice(v)
}

fn atlas(rho: f64, rho_s: f64) -> AtlasParams {
    AtlasParams::new(rho, rho_s, 0.1)
}

fn circle2d() -> ProblemSpec {
    let system = ConstraintSystem::new(Hypersphere::new(2, 1.0), AxisBox::cube(2, -1.5, 1.5))
        .expect("valid system");
    ProblemSpec {
        name: "circle2d",
        problem: PlanningProblem {
            system,
            obstacles: vec![Obstacle::slotted_wall(0, 0.0, 0.2, vec![1.0], 0.1)],
            start: pt(&[1.0, 0.0]),
            goal: pt(&[-1.0, 0.0]),
        },
        defaults: StrategyDefaults { big_r: 0.3, r: 0.3, atlas: atlas(0.3, 1.0) },
        feature_size: 1.0,
    }
}

fn torus_slot() -> ProblemSpec {
    let torus = Torus::new(2.0, 0.5);
    let start = torus.point(-PI / 4.0, PI);
    let goal = torus.point(3.0 * PI / 4.0, PI);
    let system = ConstraintSystem::new(torus, AxisBox::new(vec![-3.0, -3.0, -1.0], vec![3.0, 3.0, 1.0]))
        .expect("valid system");
    ProblemSpec {
        name: "torus-slot",
        problem: PlanningProblem {
            system,
            obstacles: vec![
                // x = 0 wall, open only around (y, z) = (2.5, 0).
                Obstacle::slotted_wall(0, 0.0, 0.2, vec![2.5, 0.0], 0.15),
                // y = 0 wall, open only around (x, z) = (2.5, 0).
                Obstacle::slotted_wall(1, 0.0, 0.2, vec![2.5, 0.0], 0.15),
            ],
            start,
            goal,
        },
        defaults: StrategyDefaults { big_r: 0.7, r: 0.8, atlas: atlas(0.25, 2.5) },
        feature_size: 0.5,
    }
}

fn sphere_wall() -> ProblemSpec {
    let system = ConstraintSystem::new(Hypersphere::new(3, 1.0), AxisBox::cube(3, -1.5, 1.5))
        .expect("valid system");
    ProblemSpec {
        name: "sphere-wall",
        problem: PlanningProblem {
            system,
            obstacles: vec![
                Obstacle::slotted_wall(2, 0.35, 0.1, vec![0.935, 0.0], 0.15),
                Obstacle::slotted_wall(2, -0.35, 0.1, vec![-0.935, 0.0], 0.15),
            ],
            start: pt(&[0.0, 0.0, 1.0]),
            goal: pt(&[0.0, 0.0, -1.0]),
        },
        defaults: StrategyDefaults { big_r: 0.3, r: 0.2, atlas: atlas(0.3, 2.0) },
        feature_size: 1.0,
    }
}

/// Regular pentagon, counter-clockwise.
pub fn chain5_start() -> AmbientPoint {
    let turn = 2.0 * PI / 5.0;
    pt(&[0.0, turn, turn, turn, turn])
}

fn chain5() -> ProblemSpec {
    let system = ConstraintSystem::new(PlanarClosedChain::new(vec![1.0; 5], [0.0, 0.0]), AxisBox::cube(5, -4.0, 4.0))
        .expect("valid system");
    let tight = system.clone().with_tolerance(1e-13, 100);
    let start = chain5_start();
    let offset = pt(&[0.9, -0.5, 0.8, -0.4, 0.5]);
    let goal = tight.project_pseudoinverse(&(&start + &offset)).expect("goal projection converges");
    let middle = tight
        .project_pseudoinverse(&((&start + &goal) * 0.5 + pt(&[0.05, 0.0, -0.05, 0.0, 0.0])))
        .expect("midpoint projection converges");
    let obstacles = vec![
        Obstacle::ball(middle.iter().copied().collect(), 0.3),
        Obstacle::ball((&middle + pt(&[-0.4, 0.4, 0.0, 0.0, 0.0])).iter().copied().collect(), 0.2),
    ];
    ProblemSpec {
        name: "chain5",
        problem: PlanningProblem { system, obstacles, start, goal },
        defaults: StrategyDefaults { big_r: 0.6, r: 0.4, atlas: atlas(0.4, 4.0) },
        feature_size: 0.5,
    }
}
