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
//! Obstacles in ambient coordinates and the counted collision predicate.
//!
//! Obstacle interiors collide; points exactly on an obstacle boundary are
//! treated as free.

use std::cell::Cell;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::AmbientPoint;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("invalid obstacle: {0}")]
pub struct ObstacleError(String);

/// Obstacle geometry. Each variant acts on the ambient axes listed in
/// `axes`; an empty list means "the leading axes, in order".
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Obstacle {
    Ball {
        axes: Vec<usize>,
        center: Vec<f64>,
        radius: f64,
    },
    AxisBox {
        axes: Vec<usize>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    /// Slab `|x[axis] - wall| < thickness / 2` with a square hole: the
    /// remaining axes (in increasing order) must all lie within
    /// `half_width` of `slot_center` to pass.
    SlottedWall {
        axis: usize,
        wall: f64,
        thickness: f64,
        slot_center: Vec<f64>,
        half_width: f64,
    },
    /// Open half space `normal . x > offset`.
    HalfSpace { normal: Vec<f64>, offset: f64 },
}

fn resolve_axes(axes: &[usize], len: usize) -> Vec<usize> {
    if axes.is_empty() {
        (0..len).collect()
    } else {
        axes.to_vec()
    }
}

impl Obstacle {
    pub fn ball(center: Vec<f64>, radius: f64) -> Self {
        Obstacle::Ball { axes: Vec::new(), center, radius }
    }

    pub fn slotted_wall(
        axis: usize,
        wall: f64,
        thickness: f64,
        slot_center: Vec<f64>,
        half_width: f64,
    ) -> Self {
        Obstacle::SlottedWall { axis, wall, thickness, slot_center, half_width }
    }

    /// Checks the geometric invariants against an ambient dimension.
    pub fn validate(&self, n: usize) -> Result<(), ObstacleError> {
        let bad = |msg: &str| Err(ObstacleError(msg.to_string()));
        match self {
            Obstacle::Ball { axes, center, radius } => {
                if !(*radius > 0.0) {
                    return bad("ball radius must be positive");
                }
                check_axes(axes, center.len(), n)
            }
            Obstacle::AxisBox { axes, lower, upper } => {
                if lower.len() != upper.len() || lower.iter().zip(upper).any(|(l, u)| !(l < u)) {
                    return bad("box needs lower < upper on every axis");
                }
                check_axes(axes, lower.len(), n)
            }
            Obstacle::SlottedWall { axis, thickness, slot_center, half_width, .. } => {
                if *axis >= n || slot_center.len() + 1 != n {
                    return bad("slotted wall axes do not match the ambient dimension");
                }
                if !(*thickness > 0.0 && *half_width > 0.0) {
                    return bad("wall thickness and slot half-width must be positive");
                }
                Ok(())
            }
            Obstacle::HalfSpace { normal, .. } => {
                if normal.len() != n || normal.iter().all(|v| *v == 0.0) {
                    return bad("half-space normal must be non-zero with ambient dimension");
                }
                Ok(())
            }
        }
    }

    /// Strict interior membership.
    pub fn contains(&self, x: &AmbientPoint) -> bool {
        match self {
            Obstacle::Ball { axes, center, radius } => {
                let d2: f64 = resolve_axes(axes, center.len())
                    .iter()
                    .zip(center)
                    .map(|(a, c)| (x[*a] - c).powi(2))
                    .sum();
                d2 < radius * radius
            }
            Obstacle::AxisBox { axes, lower, upper } => resolve_axes(axes, lower.len())
                .iter()
                .zip(lower.iter().zip(upper))
                .all(|(a, (l, u))| x[*a] > *l && x[*a] < *u),
            Obstacle::SlottedWall { axis, wall, thickness, slot_center, half_width } => {
                if (x[*axis] - wall).abs() >= 0.5 * thickness {
                    return false;
                }
                (0..x.len())
                    .filter(|a| a != axis)
                    .zip(slot_center)
                    .any(|(a, c)| (x[a] - c).abs() > *half_width)
            }
            Obstacle::HalfSpace { normal, offset } => {
                normal.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<f64>() > *offset
            }
        }
    }
}

fn check_axes(axes: &[usize], len: usize, n: usize) -> Result<(), ObstacleError> {
    let axes = resolve_axes(axes, len);
    if axes.len() != len || axes.iter().any(|a| *a >= n) || len == 0 {
        return Err(ObstacleError("obstacle axes out of range".into()));
    }
    Ok(())
}

/// The obstacles of one planning trial plus its collision-test counter.
///
/// Each trial owns its own set; the counter is not shared across threads.
#[derive(Clone, Debug, Default)]
pub struct ObstacleSet {
    obstacles: Vec<Obstacle>,
    cd_counter: Cell<u64>,
}

impl ObstacleSet {
    pub fn new(obstacles: Vec<Obstacle>) -> Self {
        Self { obstacles, cd_counter: Cell::new(0) }
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    /// Counted collision test.
    pub fn in_collision(&self, x: &AmbientPoint) -> bool {
        self.cd_counter.set(self.cd_counter.get() + 1);
        self.obstacles.iter().any(|o| o.contains(x))
    }

    /// Collision test that leaves the counter untouched.
    pub fn in_collision_uncounted(&self, x: &AmbientPoint) -> bool {
        self.obstacles.iter().any(|o| o.contains(x))
    }

    pub fn cd_count(&self) -> u64 {
        self.cd_counter.get()
    }

    pub fn reset_cd(&self) {
        self.cd_counter.set(0);
    }
}
