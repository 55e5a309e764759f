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
//! Axis-aligned boxes in the ambient space.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::AmbientPoint;

/// A closed axis-aligned box `[lower, upper]`. Bounds may be infinite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisBox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl AxisBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        assert_eq!(lower.len(), upper.len(), "box corner dimension mismatch");
        Self { lower, upper }
    }

    /// Box with the same `[lo, hi]` interval on every axis.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Self {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn unbounded(dim: usize) -> Self {
        Self::cube(dim, f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// True when every axis has a finite, strictly positive extent.
    pub fn is_proper(&self) -> bool {
        self.lower
            .iter()
            .zip(&self.upper)
            .all(|(l, u)| l.is_finite() && u.is_finite() && l < u)
    }

    /// Product of the per-axis extents, zero if any extent is empty.
    pub fn volume(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| (u - l).max(0.0))
            .product()
    }

    pub fn intersect(&self, other: &AxisBox) -> AxisBox {
        assert_eq!(self.dim(), other.dim());
        let lower = self
            .lower
            .iter()
            .zip(&other.lower)
            .map(|(a, b)| a.max(*b))
            .collect();
        let upper = self
            .upper
            .iter()
            .zip(&other.upper)
            .map(|(a, b)| a.min(*b))
            .collect();
        AxisBox { lower, upper }
    }

    /// Closed-box membership.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *v >= *l && *v <= *u)
    }

    /// True when the open interiors of the two boxes overlap.
    pub fn interiors_overlap(&self, other: &AxisBox) -> bool {
        let i = self.intersect(other);
        i.lower.iter().zip(&i.upper).all(|(l, u)| l < u)
    }

    pub fn center(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| 0.5 * (l + u))
            .collect()
    }

    /// Uniform draw inside the box. The box must have finite bounds.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> AmbientPoint {
        AmbientPoint::from_iterator(
            self.dim(),
            self.lower
                .iter()
                .zip(&self.upper)
                .map(|(l, u)| l + (u - l) * rng.random::<f64>()),
        )
    }
}
