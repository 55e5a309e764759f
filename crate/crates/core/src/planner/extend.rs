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
use crate::atlas::{need_new_chart, Atlas};
use crate::collision::ObstacleSet;
use crate::manifold::ConstraintSystem;
use crate::AmbientPoint;

use super::tree::Rrt;

/// Why a branch stopped growing. All of these are normal outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// The tip got within the goal tolerance of the target.
    Reached,
    /// The next point collided; it was discarded.
    Collision,
    /// Consecutive points got too close or stopped approaching the target.
    Stalled,
    /// The next point could not be projected onto the manifold, or its
    /// projection jumped farther than the maximum step.
    ProjectionFailed,
}

/// Step-size parameters of a branch extension.
#[derive(Clone, Copy, Debug)]
pub struct StepParams {
    pub delta: f64,
    pub stall_threshold: f64,
    pub goal_tolerance: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

impl StepParams {
    pub fn new(delta: f64) -> Self {
        Self {
            delta,
            stall_threshold: 0.1 * delta,
            goal_tolerance: delta,
            max_step: 1.1 * delta,
            max_steps: 100_000,
        }
    }
}

/// How interpolated points are brought back onto the manifold.
#[derive(Debug)]
pub enum Projector<'a> {
    /// Least-squares normal correction.
    PseudoInverse,
    /// Orthogonal projection in the chart of the branch tip, opening new
    /// charts as the branch leaves the current one.
    Atlas(&'a mut Atlas),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    /// Ids of the appended nodes in growth order.
    pub nodes: Vec<usize>,
    pub termination: Termination,
}

/// Grows a branch of `tree` from node `from` toward `target` in steps of
/// `delta`, projecting and collision-checking every step.
pub fn extend_branch(
    sys: &ConstraintSystem,
    obstacles: &ObstacleSet,
    tree: &mut Rrt,
    from: usize,
    target: &AmbientPoint,
    step: &StepParams,
    projector: &mut Projector<'_>,
) -> Branch {
    let mut nodes = Vec::new();
    let mut tip = from;
    let termination = loop {
        let tip_config = tree.node(tip).config.clone();
        let dist = (target - &tip_config).norm();
        if dist <= step.goal_tolerance {
            break Termination::Reached;
        }
        if nodes.len() >= step.max_steps {
            break Termination::Stalled;
        }
        let x_prime = &tip_config + (target - &tip_config) * (step.delta / dist);
        let chart = tree.node(tip).chart;
        let projected = match (&*projector, chart) {
            (Projector::Atlas(atlas), Some(c)) => {
                sys.project_orthogonal(&atlas.chart(c).basis, &x_prime)
            }
            _ => sys.project_pseudoinverse(&x_prime),
        };
        let Ok(x) = projected else {
            break Termination::ProjectionFailed;
        };
        let advance = (&x - &tip_config).norm();
        if advance > step.max_step {
            break Termination::ProjectionFailed;
        }
        if advance < step.stall_threshold || (target - &x).norm() >= dist {
            break Termination::Stalled;
        }
        if obstacles.in_collision(&x) {
            break Termination::Collision;
        }
        let next_chart = match (&mut *projector, chart) {
            (Projector::Atlas(atlas), Some(c)) => {
                let p = *atlas.params();
                let current = atlas.chart(c);
                // Tangent-space image of the step; `x` is its orthogonal projection.
                let on_tangent = current.basis.lift(&current.basis.coordinates(&x_prime));
                if need_new_chart(current, &x, &on_tangent, p.eps_dist, p.cos_theta_min, p.rho) {
                    // A rank-deficient point keeps the old chart.
                    Some(atlas.add_chart(sys, &x).unwrap_or(c))
                } else {
                    Some(c)
                }
            }
            _ => chart,
        };
        tip = tree.add_node(sys, x, tip, next_chart);
        nodes.push(tip);
    };
    Branch { nodes, termination }
}
