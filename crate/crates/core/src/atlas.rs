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
//! Incremental atlas of tangent-space charts.
//!
//! Each chart is centered at a manifold point and parametrizes the manifold
//! nearby through its tangent basis. Overlapping neighbors crop each other
//! with bisecting half-planes in tangent coordinates; samples drawn in a
//! chart's ball but outside its crops are rejected. A global scale factor
//! grows after clean branches and shrinks after collisions, and the
//! effective sampling radius `max(rho, s * rho_s)` never drops below `rho`.

use nalgebra::DVector;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::manifold::{ConstraintSystem, ManifoldError, ProjectionError, TangentBasis};
use crate::sampling::sample_ball;
use crate::AmbientPoint;

/// Attempts per requested atlas sample before giving up.
pub const MAX_SAMPLE_ATTEMPTS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AtlasError {
    #[error("atlas has no charts")]
    Empty,
    #[error("no sample survived the crops in {0} attempts")]
    SamplingExhausted(usize),
    #[error("invalid atlas parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtlasParams {
    /// Maximum span of a chart.
    pub rho: f64,
    /// Base sampling radius.
    pub rho_s: f64,
    /// Scaling step; 0 freezes the scale at 1.
    pub alpha: f64,
    /// Max distance between a tangent point and its projection.
    pub eps_dist: f64,
    /// Min cosine between a chart's tangent space and the chord to a point.
    pub cos_theta_min: f64,
}

impl AtlasParams {
    pub fn new(rho: f64, rho_s: f64, alpha: f64) -> Self {
        Self { rho, rho_s, alpha, eps_dist: 0.1 * rho, cos_theta_min: 0.86 }
    }

    pub fn validate(&self) -> Result<(), AtlasError> {
        let bad = |m: &str| Err(AtlasError::InvalidParams(m.to_string()));
        if !(self.rho > 0.0 && self.rho_s > 0.0) {
            return bad("rho and rho_s must be positive");
        }
        if !(0.0..1.0).contains(&self.alpha) {
            return bad("alpha must lie in [0, 1)");
        }
        if !(self.eps_dist > 0.0) || !(self.cos_theta_min > 0.0 && self.cos_theta_min < 1.0) {
            return bad("eps_dist must be positive and cos_theta in (0, 1)");
        }
        Ok(())
    }
}

/// Half-plane `normal . u <= offset` in tangent coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CropPlane {
    pub normal: DVector<f64>,
    pub offset: f64,
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub id: usize,
    pub basis: TangentBasis,
    pub crops: Vec<CropPlane>,
    pub neighbors: Vec<usize>,
}

impl Chart {
    /// Chart at manifold point `center` with a fresh tangent basis.
    pub fn new(sys: &ConstraintSystem, center: &AmbientPoint, id: usize) -> Result<Self, ManifoldError> {
        Ok(Self { id, basis: sys.tangent_basis(center)?, crops: Vec::new(), neighbors: Vec::new() })
    }

    pub fn center(&self) -> &AmbientPoint {
        &self.basis.chart_point
    }

    pub fn in_crops(&self, u: &DVector<f64>) -> bool {
        self.crops.iter().all(|c| c.normal.dot(u) <= c.offset)
    }

    /// Lifts `u` to `x_c + Phi u` and projects it orthogonally onto the manifold.
    pub fn point_to_manifold(
        &self,
        sys: &ConstraintSystem,
        u: &DVector<f64>,
    ) -> Result<AmbientPoint, ProjectionError> {
        sys.project_orthogonal(&self.basis, &self.basis.lift(u))
    }
}

/// True when the chart no longer represents `x_i` (the projection of the
/// tangent point `x_i_prime`) well: chord error above `eps_dist`, the chord
/// from the center leaving the tangent space by more than the angle
/// threshold, or `x_i_prime` beyond `rho`.
pub fn need_new_chart(
    chart: &Chart,
    x_i: &AmbientPoint,
    x_i_prime: &AmbientPoint,
    eps_dist: f64,
    cos_theta_min: f64,
    rho: f64,
) -> bool {
    if (x_i - x_i_prime).norm() > eps_dist {
        return true;
    }
    let chord = x_i - chart.center();
    let len = chord.norm();
    if len > 0.0 && chart.basis.basis.tr_mul(&chord).norm() / len < cos_theta_min {
        return true;
    }
    (x_i_prime - chart.center()).norm() > rho
}

/// Whether a finished branch was cut short by an obstacle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchOutcome {
    Succeeded,
    Collided,
}

#[derive(Clone, Debug)]
pub struct Atlas {
    params: AtlasParams,
    charts: Vec<Chart>,
    scale: f64,
    draws: u64,
    rejected: u64,
    floor_violations: u64,
}

impl Atlas {
    pub fn new(params: AtlasParams) -> Result<Self, AtlasError> {
        params.validate()?;
        Ok(Self { params, charts: Vec::new(), scale: 1.0, draws: 0, rejected: 0, floor_violations: 0 })
    }

    pub fn params(&self) -> &AtlasParams {
        &self.params
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn chart(&self, id: usize) -> &Chart {
        &self.charts[id]
    }

    pub fn len(&self) -> usize {
        self.charts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charts.is_empty()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn rejected(&self) -> u64 {
        self.rejected
    }

    /// Times the effective radius was observed below `rho`. Stays zero.
    pub fn floor_violations(&self) -> u64 {
        self.floor_violations
    }

    /// `max(rho, s * rho_s)`.
    pub fn effective_radius(&self) -> f64 {
        self.params.rho.max(self.scale * self.params.rho_s)
    }

    fn checked_radius(&mut self) -> f64 {
        let r = self.effective_radius();
        if !(r >= self.params.rho) {
            self.floor_violations += 1;
        }
        debug_assert!(r >= self.params.rho);
        r
    }

    /// Creates a chart at `center` and coordinates it with every chart whose
    /// center lies within `2 rho`.
    pub fn add_chart(&mut self, sys: &ConstraintSystem, center: &AmbientPoint) -> Result<usize, AtlasError> {
        let id = self.charts.len();
        self.charts.push(Chart::new(sys, center, id)?);
        for other in 0..id {
            self.coordinate_charts(id, other);
        }
        Ok(id)
    }

    /// Crops `c1` and `c2` against each other with bisecting half-planes in
    /// their own tangent coordinates. Returns false (and changes nothing)
    /// when the validity balls of the two charts are disjoint.
    pub fn coordinate_charts(&mut self, c1: usize, c2: usize) -> bool {
        assert_ne!(c1, c2, "a chart cannot be coordinated with itself");
        let reach = 2.0 * self.params.rho;
        let diff = self.charts[c2].center() - self.charts[c1].center();
        if diff.norm() >= reach {
            return false;
        }
        let mut cropped = false;
        for (a, b, d) in [(c1, c2, diff.clone()), (c2, c1, -diff)] {
            let u = self.charts[a].basis.basis.tr_mul(&d);
            let dist = u.norm();
            // Tangent images at the origin give no usable direction.
            if dist > 0.0 {
                let chart = &mut self.charts[a];
                chart.crops.push(CropPlane { normal: u / dist, offset: 0.5 * dist });
                chart.neighbors.push(b);
                cropped = true;
            }
        }
        cropped
    }

    /// Picks a chart uniformly, draws `u` uniformly in the ball of the
    /// effective radius and returns the ambient lift `x_c + Phi u`. Samples
    /// outside the chart's crops are counted as rejected and redrawn with a
    /// fresh chart choice.
    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<(usize, AmbientPoint), AtlasError> {
        if self.charts.is_empty() {
            return Err(AtlasError::Empty);
        }
        let radius = self.checked_radius();
        for _ in 0..MAX_SAMPLE_ATTEMPTS {
            self.draws += 1;
            let id = rng.random_range(0..self.charts.len());
            let chart = &self.charts[id];
            let u = sample_ball(chart.basis.basis.ncols(), radius, rng);
            if chart.in_crops(&u) {
                return Ok((id, chart.basis.lift(&u)));
            }
            self.rejected += 1;
        }
        Err(AtlasError::SamplingExhausted(MAX_SAMPLE_ATTEMPTS))
    }

    /// `s <- s (1 + alpha)` after a clean branch, `s <- s (1 - alpha)` after
    /// a collision.
    pub fn update_scaling(&mut self, outcome: BranchOutcome) {
        match outcome {
            BranchOutcome::Succeeded => self.scale *= 1.0 + self.params.alpha,
            BranchOutcome::Collided => self.scale *= 1.0 - self.params.alpha,
        }
        debug_assert!(self.scale > 0.0);
        self.checked_radius();
    }

    #[cfg(test)]
    fn set_scale(&mut self, s: f64) {
        self.scale = s;
    }
}
