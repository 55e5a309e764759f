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
//! Sampling-biased bidirectional RRT planning on implicit manifolds
//! `{x | F(x) = 0}`.
//!
//! Three biasing strategies are implemented next to the ambient-uniform
//! baseline:
//!
//! * a dynamic domain that restricts the Voronoi region of nodes near
//!   obstacles to an ambient ball of radius `R`,
//! * kd-tree sampling inside the r-bounding rectangles of the tree's leaves,
//! * an atlas of tangent-space charts whose sampling radius is scaled up after
//!   clean branches and down after collisions.
//!
//! The [`bench`] module holds the benchmark problems and the experiment
//! runner behind the `manifold-rrt` command line tool.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atlas;
pub mod bench;
pub mod bounds;
pub mod collision;
pub mod manifold;
pub mod planner;
pub mod sampling;

/// A point of the ambient space.
pub type AmbientPoint = nalgebra::DVector<f64>;

pub use atlas::{Atlas, AtlasParams};
pub use bounds::AxisBox;
pub use collision::{Obstacle, ObstacleSet};
pub use manifold::{ConstraintSystem, TangentBasis};
pub use planner::{plan_bidirectional, PlanResult, PlannerConfig, PlanningProblem, RunStats, Strategy, StrategyKind};
