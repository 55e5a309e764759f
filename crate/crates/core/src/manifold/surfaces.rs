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
//! Concrete constraint maps used by the benchmarks and tests.

use nalgebra::{DMatrix, DVector};

use super::Constraint;
use crate::AmbientPoint;

/// `|x|^2 - r^2 = 0` in `R^dim`: the circle for `dim = 2`, the sphere for 3.
#[derive(Clone, Debug)]
pub struct Hypersphere {
    dim: usize,
    radius: f64,
}

impl Hypersphere {
    pub fn new(dim: usize, radius: f64) -> Self {
        assert!(dim >= 2 && radius > 0.0);
        Self { dim, radius }
    }
}

impl Constraint for Hypersphere {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn num_equations(&self) -> usize {
        1
    }

    fn eval(&self, x: &AmbientPoint) -> DVector<f64> {
        DVector::from_element(1, x.norm_squared() - self.radius * self.radius)
    }

    fn jacobian(&self, x: &AmbientPoint) -> DMatrix<f64> {
        DMatrix::from_row_slice(1, self.dim, (x * 2.0).as_slice())
    }
}

/// Torus of revolution about the z axis:
/// `(sqrt(x^2 + y^2) - R)^2 + z^2 - r^2 = 0`.
#[derive(Clone, Debug)]
pub struct Torus {
    pub major: f64,
    pub minor: f64,
}

impl Torus {
    pub fn new(major: f64, minor: f64) -> Self {
        assert!(major > minor && minor > 0.0);
        Self { major, minor }
    }

    /// Point at longitude `theta` (about z) and tube angle `phi`.
    pub fn point(&self, theta: f64, phi: f64) -> AmbientPoint {
        let ring = self.major + self.minor * phi.cos();
        AmbientPoint::from_vec(vec![ring * theta.cos(), ring * theta.sin(), self.minor * phi.sin()])
    }
}

impl Constraint for Torus {
    fn ambient_dim(&self) -> usize {
        3
    }

    fn num_equations(&self) -> usize {
        1
    }

    fn eval(&self, x: &AmbientPoint) -> DVector<f64> {
        let rho = x[0].hypot(x[1]);
        let d = rho - self.major;
        DVector::from_element(1, d * d + x[2] * x[2] - self.minor * self.minor)
    }

    fn jacobian(&self, x: &AmbientPoint) -> DMatrix<f64> {
        let rho = x[0].hypot(x[1]);
        // On the z axis the radial derivative is undefined; the planar
        // part is set to zero there.
        let radial = if rho > 0.0 { 2.0 * (rho - self.major) / rho } else { 0.0 };
        DMatrix::from_row_slice(1, 3, &[radial * x[0], radial * x[1], 2.0 * x[2]])
    }
}

/// Planar closed chain of revolute joints. Coordinates are the joint angles;
/// link `i` points along the cumulative angle `theta_1 + ... + theta_i`, and
/// the chain closes when its tip lands on `target`.
#[derive(Clone, Debug)]
pub struct PlanarClosedChain {
    lengths: Vec<f64>,
    target: [f64; 2],
}

impl PlanarClosedChain {
    pub fn new(lengths: Vec<f64>, target: [f64; 2]) -> Self {
        assert!(lengths.len() >= 3, "a closed planar chain needs at least 3 links");
        assert!(lengths.iter().all(|l| *l > 0.0));
        Self { lengths, target }
    }

    fn cumulative(x: &AmbientPoint) -> Vec<f64> {
        x.iter()
            .scan(0.0, |acc, t| {
                *acc += t;
                Some(*acc)
            })
            .collect()
    }
}

impl Constraint for PlanarClosedChain {
    fn ambient_dim(&self) -> usize {
        self.lengths.len()
    }

    fn num_equations(&self) -> usize {
        2
    }

    fn eval(&self, x: &AmbientPoint) -> DVector<f64> {
        let (cx, cy) = Self::cumulative(x)
            .iter()
            .zip(&self.lengths)
            .fold((0.0, 0.0), |(cx, cy), (a, l)| (cx + l * a.cos(), cy + l * a.sin()));
        DVector::from_vec(vec![cx - self.target[0], cy - self.target[1]])
    }

    fn jacobian(&self, x: &AmbientPoint) -> DMatrix<f64> {
        let n = self.lengths.len();
        let cum = Self::cumulative(x);
        let mut jac = DMatrix::zeros(2, n);
        // Joint j moves every link from j onward.
        let (mut sx, mut sy) = (0.0, 0.0);
        for j in (0..n).rev() {
            sx -= self.lengths[j] * cum[j].sin();
            sy += self.lengths[j] * cum[j].cos();
            jac[(0, j)] = sx;
            jac[(1, j)] = sy;
        }
        jac
    }
}

/// `A x - b = 0`.
#[derive(Clone, Debug)]
pub struct AffineConstraint {
    a: DMatrix<f64>,
    b: DVector<f64>,
}

impl AffineConstraint {
    pub fn new(a: DMatrix<f64>, b: DVector<f64>) -> Self {
        assert_eq!(a.nrows(), b.len());
        Self { a, b }
    }
}

impl Constraint for AffineConstraint {
    fn ambient_dim(&self) -> usize {
        self.a.ncols()
    }

    fn num_equations(&self) -> usize {
        self.a.nrows()
    }

    fn eval(&self, x: &AmbientPoint) -> DVector<f64> {
        &self.a * x - &self.b
    }

    fn jacobian(&self, _x: &AmbientPoint) -> DMatrix<f64> {
        self.a.clone()
    }
}
