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
//! Sample generation: the ambient-uniform baseline, the dynamic-domain
//! acceptance filter, uniform k-ball draws, and the kd-tree index that
//! doubles as a sampler.

mod kdtree;

use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::bounds::AxisBox;
use crate::AmbientPoint;

pub use kdtree::{r_bounding_rect, KdLeaf, KdNode, RrtKdTree, DEFAULT_LEAF_CAPACITY};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplingError {
    #[error("the tree holds no points")]
    EmptyTree,
    #[error("every sampling rectangle has zero volume")]
    ZeroVolume,
    #[error("sampling box must be finite and non-degenerate")]
    DegenerateBox,
}

/// Uniform sampler over the ambient box.
#[derive(Clone, Debug)]
pub struct AmbientSampler {
    domain: AxisBox,
}

impl AmbientSampler {
    pub fn new(domain: AxisBox) -> Result<Self, SamplingError> {
        if !domain.is_proper() {
            return Err(SamplingError::DegenerateBox);
        }
        Ok(Self { domain })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> AmbientPoint {
        self.domain.sample(rng)
    }
}

/// Uniform point in the `k`-ball of the given radius: a normalized Gaussian
/// direction scaled by `radius * U^(1/k)`.
pub fn sample_ball<R: Rng + ?Sized>(k: usize, radius: f64, rng: &mut R) -> nalgebra::DVector<f64> {
    assert!(k > 0);
    loop {
        let dir = nalgebra::DVector::from_iterator(k, (0..k).map(|_| rng.sample::<f64, _>(StandardNormal)));
        let norm = dir.norm();
        if norm > 0.0 {
            let scale = radius * rng.random::<f64>().powf(1.0 / k as f64);
            return dir * (scale / norm);
        }
    }
}

/// Boundary flags of one RRT plus the fixed dynamic-domain radius `R`.
///
/// A node is flagged once an extension from it is cut short by a collision;
/// samples whose nearest node is flagged are only kept within `R` of it.
#[derive(Clone, Debug)]
pub struct DynamicDomainState {
    radius: f64,
    boundary: Vec<bool>,
    rejected: u64,
}

impl DynamicDomainState {
    pub fn new(radius: f64) -> Self {
        assert!(radius > 0.0, "dynamic-domain radius must be positive");
        Self { radius, boundary: Vec::new(), rejected: 0 }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn is_boundary(&self, node: usize) -> bool {
        self.boundary.get(node).copied().unwrap_or(false)
    }

    /// Flags `node`; flags are never cleared.
    pub fn mark_boundary(&mut self, node: usize) {
        if self.boundary.len() <= node {
            self.boundary.resize(node + 1, false);
        }
        self.boundary[node] = true;
    }

    /// Accepts the sample unless its nearest node is flagged and farther
    /// than `R` away. Rejections are counted.
    pub fn dd_accept(&mut self, nearest: usize, distance: f64) -> bool {
        if !self.is_boundary(nearest) || distance <= self.radius {
            true
        } else {
            self.rejected += 1;
            false
        }
    }

    pub fn rejected(&self) -> u64 {
        self.rejected
    }
}
