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
//! Implicit constraint manifolds `{x | F(x) = 0}` and the numerical
//! primitives that keep points on them.
//!
//! Two projections are provided. [`ConstraintSystem::project_pseudoinverse`]
//! moves a point along the least-squares normal directions
//! `dx = -J^T (J J^T)^-1 F(x)`. [`ConstraintSystem::project_orthogonal`]
//! solves `F(x) = 0` together with `Phi^T (x - x') = 0`, i.e. it projects
//! perpendicular to a chart's tangent space.

mod surfaces;

use std::fmt::Debug;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::bounds::AxisBox;
use crate::AmbientPoint;

pub use surfaces::{AffineConstraint, Hypersphere, PlanarClosedChain, Torus};

/// Default max-norm residual tolerance for on-manifold points.
pub const DEFAULT_TOL_F: f64 = 1e-8;
/// Default iteration cap of both Newton projections.
pub const DEFAULT_MAX_NEWTON_ITERS: usize = 50;
/// Relative pivot cutoff below which a linearized system counts as singular.
pub const SINGULAR_CUTOFF: f64 = 1e-12;
/// Iterates whose norm grows beyond this factor of the start are abandoned.
pub const DIVERGENCE_FACTOR: f64 = 1e6;

/// The equality constraints `F: R^n -> R^(n-k)` with an analytic Jacobian.
pub trait Constraint: Debug + Send + Sync {
    /// Ambient dimension `n`.
    fn ambient_dim(&self) -> usize;
    /// Number of scalar equations `n - k`.
    fn num_equations(&self) -> usize;
    fn eval(&self, x: &AmbientPoint) -> DVector<f64>;
    fn jacobian(&self, x: &AmbientPoint) -> DMatrix<f64>;
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ManifoldError {
    #[error("invalid constraint system: {0}")]
    InvalidSystem(String),
    #[error("jacobian has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
}

/// Why a Newton projection gave up.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("linearized system is numerically singular")]
    SingularSystem,
    #[error("iterate left the finite range")]
    NonFinite,
    #[error("iterate diverged")]
    Diverged,
    #[error("no convergence after {0} iterations")]
    NotConverged(usize),
}

/// Orthonormal basis `Phi` (n x k) of the tangent space at `chart_point`.
#[derive(Clone, Debug)]
pub struct TangentBasis {
    pub chart_point: AmbientPoint,
    pub basis: DMatrix<f64>,
}

impl TangentBasis {
    /// `Phi Phi^T`, which does not depend on the sign or order of the columns.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    /// Tangent coordinates `Phi^T (x - chart_point)`.
    pub fn coordinates(&self, x: &AmbientPoint) -> DVector<f64> {
        self.basis.tr_mul(&(x - &self.chart_point))
    }

    /// Ambient lift `chart_point + Phi u`.
    pub fn lift(&self, u: &DVector<f64>) -> AmbientPoint {
        &self.chart_point + &self.basis * u
    }
}

/// A constraint map together with its tolerances and ambient sampling box.
///
/// Immutable after construction; clones share the underlying constraint.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    n: usize,
    k: usize,
    constraint: Arc<dyn Constraint>,
    pub tol_f: f64,
    pub max_newton_iters: usize,
    ambient_box: AxisBox,
}

impl ConstraintSystem {
    pub fn new<C: Constraint + 'static>(
        constraint: C,
        ambient_box: AxisBox,
    ) -> Result<Self, ManifoldError> {
        let n = constraint.ambient_dim();
        let m = constraint.num_equations();
        if m == 0 || m >= n {
            return Err(ManifoldError::InvalidSystem(format!(
                "need n > k > 0, got n = {n} with {m} equations"
            )));
        }
        if ambient_box.dim() != n {
            return Err(ManifoldError::InvalidSystem(format!(
                "ambient box has dimension {}, expected {n}",
                ambient_box.dim()
            )));
        }
        if !ambient_box.is_proper() {
            return Err(ManifoldError::InvalidSystem(
                "ambient box must be finite and non-degenerate".into(),
            ));
        }
        Ok(Self {
            n,
            k: n - m,
            constraint: Arc::new(constraint),
            tol_f: DEFAULT_TOL_F,
            max_newton_iters: DEFAULT_MAX_NEWTON_ITERS,
            ambient_box,
        })
    }

    pub fn with_tolerance(mut self, tol_f: f64, max_newton_iters: usize) -> Self {
        assert!(tol_f > 0.0 && max_newton_iters > 0);
        self.tol_f = tol_f;
        self.max_newton_iters = max_newton_iters;
        self
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Manifold dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ambient_box(&self) -> &AxisBox {
        &self.ambient_box
    }

    fn check_dim(&self, x: &AmbientPoint) {
        assert_eq!(
            x.len(),
            self.n,
            "point has dimension {}, system expects {}",
            x.len(),
            self.n
        );
    }

    /// `F(x)`.
    pub fn evaluate(&self, x: &AmbientPoint) -> DVector<f64> {
        self.check_dim(x);
        self.constraint.eval(x)
    }

    /// Max-norm of `F(x)`.
    pub fn residual(&self, x: &AmbientPoint) -> f64 {
        self.evaluate(x).amax()
    }

    pub fn is_on_manifold(&self, x: &AmbientPoint) -> bool {
        self.residual(x) <= self.tol_f
    }

    /// Analytic `J(x)`, an `(n-k) x n` matrix.
    pub fn jacobian(&self, x: &AmbientPoint) -> DMatrix<f64> {
        self.check_dim(x);
        self.constraint.jacobian(x)
    }

    /// Central-difference Jacobian, used to validate [`Self::jacobian`].
    pub fn jacobian_fd(&self, x: &AmbientPoint, h: f64) -> DMatrix<f64> {
        assert!(h > 0.0, "finite-difference step must be positive");
        self.check_dim(x);
        let m = self.n - self.k;
        let mut jac = DMatrix::zeros(m, self.n);
        let mut probe = x.clone();
        for i in 0..self.n {
            probe[i] = x[i] + h;
            let fp = self.constraint.eval(&probe);
            probe[i] = x[i] - h;
            let fm = self.constraint.eval(&probe);
            probe[i] = x[i];
            jac.set_column(i, &((fp - fm) / (2.0 * h)));
        }
        jac
    }

    /// Iterates `x <- x - J^T (J J^T)^-1 F(x)` from `x0` until the max-norm
    /// residual drops to `tol_f`.
    pub fn project_pseudoinverse(&self, x0: &AmbientPoint) -> Result<AmbientPoint, ProjectionError> {
        self.check_dim(x0);
        let guard = divergence_bound(x0);
        let mut x = x0.clone();
        for _ in 0..self.max_newton_iters {
            let f = self.constraint.eval(&x);
            if f.amax() <= self.tol_f {
                return Ok(x);
            }
            let j = self.constraint.jacobian(&x);
            let jjt = &j * j.transpose();
            let y = solve_checked(jjt, f).ok_or(ProjectionError::SingularSystem)?;
            x -= j.tr_mul(&y);
            check_iterate(&x, guard)?;
        }
        if self.constraint.eval(&x).amax() <= self.tol_f {
            Ok(x)
        } else {
            Err(ProjectionError::NotConverged(self.max_newton_iters))
        }
    }

    /// Orthonormal tangent basis at `x` from a full QR factorization of
    /// `[J^T | I]`: the trailing `k` columns of `Q` span the null space of `J`.
    pub fn tangent_basis(&self, x: &AmbientPoint) -> Result<TangentBasis, ManifoldError> {
        self.check_dim(x);
        let m = self.n - self.k;
        let j = self.constraint.jacobian(x);
        let rank = numerical_rank(&j);
        if rank < m {
            return Err(ManifoldError::RankDeficient { rank, expected: m });
        }
        let mut aug = DMatrix::zeros(self.n, m + self.n);
        aug.view_mut((0, 0), (self.n, m)).copy_from(&j.transpose());
        aug.view_mut((0, m), (self.n, self.n))
            .copy_from(&DMatrix::identity(self.n, self.n));
        let q = aug.qr().q();
        Ok(TangentBasis {
            chart_point: x.clone(),
            basis: q.columns(m, self.k).into_owned(),
        })
    }

    /// Newton solve of `F(x) = 0`, `Phi^T (x - x') = 0` starting at `x'`.
    pub fn project_orthogonal(
        &self,
        basis: &TangentBasis,
        x_prime: &AmbientPoint,
    ) -> Result<AmbientPoint, ProjectionError> {
        self.check_dim(x_prime);
        let m = self.n - self.k;
        let phi_t = basis.basis.transpose();
        let guard = divergence_bound(x_prime);
        let mut x = x_prime.clone();
        let mut rhs = DVector::zeros(self.n);
        let mut lhs = DMatrix::zeros(self.n, self.n);
        lhs.view_mut((m, 0), (self.k, self.n)).copy_from(&phi_t);
        for iter in 0..=self.max_newton_iters {
            let f = self.constraint.eval(&x);
            let g = &phi_t * (&x - x_prime);
            if f.amax().max(g.amax()) <= self.tol_f {
                return Ok(x);
            }
            if iter == self.max_newton_iters {
                break;
            }
            rhs.rows_mut(0, m).copy_from(&(-f));
            rhs.rows_mut(m, self.k).copy_from(&(-g));
            lhs.view_mut((0, 0), (m, self.n))
                .copy_from(&self.constraint.jacobian(&x));
            let dx = solve_checked(lhs.clone(), rhs.clone()).ok_or(ProjectionError::SingularSystem)?;
            x += dx;
            check_iterate(&x, guard)?;
        }
        Err(ProjectionError::NotConverged(self.max_newton_iters))
    }
}

fn divergence_bound(x0: &AmbientPoint) -> f64 {
    DIVERGENCE_FACTOR * x0.norm().max(1.0)
}

fn check_iterate(x: &AmbientPoint, bound: f64) -> Result<(), ProjectionError> {
    if x.iter().any(|v| !v.is_finite()) {
        return Err(ProjectionError::NonFinite);
    }
    if x.norm() > bound {
        return Err(ProjectionError::Diverged);
    }
    Ok(())
}

/// LU solve that refuses systems whose smallest pivot is below
/// `SINGULAR_CUTOFF` times the largest.
fn solve_checked(a: DMatrix<f64>, b: DVector<f64>) -> Option<DVector<f64>> {
    if a.iter().any(|v| !v.is_finite()) || b.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let lu = a.lu();
    let u = lu.u();
    let pivots = u.diagonal().map(f64::abs);
    let max = pivots.max();
    if max == 0.0 || pivots.min() < SINGULAR_CUTOFF * max {
        return None;
    }
    lu.solve(&b)
}

fn numerical_rank(j: &DMatrix<f64>) -> usize {
    if j.iter().any(|v| !v.is_finite()) {
        return 0;
    }
    let sv = j.singular_values();
    let max = sv.max();
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > SINGULAR_CUTOFF * max).count()
}
