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
//! Browser demo for `manifold-rrt`.
//!
//! Every export returns a JSON string so the page needs no generated
//! bindings beyond plain strings. The same functions run natively, which is
//! how they are tested.

use std::f64::consts::PI;

use manifold_rrt::bench::problems::{problem, GeometryOverrides};
use manifold_rrt::manifold::{Hypersphere, Torus};
use manifold_rrt::sampling::RrtKdTree;
use manifold_rrt::{
    plan_bidirectional, AmbientPoint, AxisBox, ConstraintSystem, ObstacleSet, PlannerConfig, StrategyKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Problems the page can draw, with the two ambient axes used as the view.
pub const VIEWS: [(&str, [usize; 2]); 3] = [("circle2d", [0, 1]), ("torus-slot", [0, 1]), ("sphere-wall", [0, 2])];

type Point2 = [f64; 2];

#[derive(Debug, Serialize)]
pub struct PlanView {
    pub problem: String,
    pub strategy: String,
    pub success: bool,
    /// Edges `[parent, child]` of the start tree and the goal tree.
    pub edges: [Vec<[Point2; 2]>; 2],
    pub path: Vec<Point2>,
    /// Manifold samples inside an obstacle.
    pub blocked: Vec<Point2>,
    /// Manifold samples outside every obstacle.
    pub free: Vec<Point2>,
    pub charts: Vec<Point2>,
    pub cd_tests: u64,
    pub collision_branch_ratio: f64,
    pub rejection_ratio: f64,
    pub nodes: [usize; 2],
}

#[derive(Debug, Serialize)]
pub struct KdView {
    pub points: Vec<Point2>,
    /// Leaf rectangles as `[lower, upper]`.
    pub rects: Vec<[Point2; 2]>,
    pub cells: Vec<[Point2; 2]>,
    pub samples: Vec<Point2>,
    pub total_volume: f64,
}

#[derive(Debug, Serialize)]
pub struct ProjectionView {
    pub query: Point2,
    pub chart_center: Point2,
    pub tangent: Point2,
    pub pseudo_inverse: Option<Point2>,
    pub orthogonal: Option<Point2>,
}

#[derive(Debug, Serialize)]
struct Failure {
    error: String,
}

fn to_json<T: Serialize>(value: &Result<T, String>) -> String {
    match value {
        Ok(v) => serde_json::to_string(v),
        Err(e) => serde_json::to_string(&Failure { error: e.clone() }),
    }
    .expect("view types serialize")
}

fn view_axes(name: &str) -> Result<[usize; 2], String> {
    VIEWS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, axes)| *axes)
        .ok_or_else(|| format!("no view for problem '{name}'"))
}

fn project2(x: &AmbientPoint, axes: [usize; 2]) -> Point2 {
    [x[axes[0]], x[axes[1]]]
}

/// Dense manifold samples, for painting free space and obstacles.
fn manifold_samples(name: &str) -> Vec<AmbientPoint> {
    match name {
        "circle2d" => (0..720)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / 720.0;
                AmbientPoint::from_column_slice(&[t.cos(), t.sin()])
            })
            .collect(),
        "torus-slot" => {
            let torus = Torus::new(2.0, 0.5);
            let mut out = Vec::new();
            for i in 0..240 {
                for j in 0..24 {
                    let theta = 2.0 * PI * i as f64 / 240.0;
                    let phi = 2.0 * PI * j as f64 / 24.0;
                    out.push(torus.point(theta, phi));
                }
            }
            out
        }
        _ => {
            // Front hemisphere (y >= 0) of the unit sphere.
            let mut out = Vec::new();
            for i in 0..=90 {
                for j in 0..=45 {
                    let polar = PI * i as f64 / 90.0;
                    let azimuth = PI * j as f64 / 45.0;
                    let (s, c) = polar.sin_cos();
                    out.push(AmbientPoint::from_column_slice(&[s * azimuth.cos(), s * azimuth.sin(), c]));
                }
            }
            out
        }
    }
}

/// Runs one bidirectional search and returns its trees in view coordinates.
pub fn plan_view(name: &str, strategy: &str, seed: u64, max_iterations: u64) -> Result<PlanView, String> {
    let axes = view_axes(name)?;
    let spec = problem(name, &GeometryOverrides::default()).map_err(|e| e.to_string())?;
    let kind: StrategyKind = strategy.parse()?;
    let mut config = PlannerConfig::new(spec.defaults.strategy(kind), seed);
    config.max_iterations = max_iterations;
    let result = plan_bidirectional(&spec.problem, &config).map_err(|e| e.to_string())?;

    let edges = result.trees.clone().map(|nodes| {
        nodes
            .iter()
            .filter_map(|n| n.parent.map(|p| [project2(&nodes[p].config, axes), project2(&n.config, axes)]))
            .collect()
    });
    let obstacles = ObstacleSet::new(spec.problem.obstacles.clone());
    let (mut blocked, mut free) = (Vec::new(), Vec::new());
    for x in manifold_samples(name) {
        let bucket = if obstacles.in_collision_uncounted(&x) { &mut blocked } else { &mut free };
        bucket.push(project2(&x, axes));
    }
    Ok(PlanView {
        problem: name.to_string(),
        strategy: kind.name().to_string(),
        success: result.success,
        edges,
        path: result.path.iter().map(|x| project2(x, axes)).collect(),
        blocked,
        free,
        charts: result.chart_centers.iter().map(|x| project2(x, axes)).collect(),
        cd_tests: result.stats.cd_tests,
        collision_branch_ratio: result.stats.collision_branch_ratio,
        rejection_ratio: result.stats.rejection_ratio,
        nodes: result.stats.nodes,
    })
}

/// Grows a random walk of `points` steps in the unit square, indexes it in
/// a kd-tree with margin `r` and draws `samples` points from the tree.
pub fn kdtree_view(points: usize, r: f64, samples: usize, seed: u64) -> Result<KdView, String> {
    if r.is_nan() || r <= 0.0 || points == 0 {
        return Err("need at least one point and r > 0".into());
    }
    let domain = AxisBox::cube(2, 0.0, 1.0);
    let mut tree = RrtKdTree::new(domain.clone(), r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut at = [0.5, 0.5];
    let mut walk = Vec::with_capacity(points);
    for id in 0..points {
        tree.insert(AmbientPoint::from_column_slice(&at), id);
        walk.push(at);
        let heading = rng.random::<f64>() * 2.0 * PI;
        at = [
            (at[0] + 0.04 * heading.cos()).clamp(0.0, 1.0),
            (at[1] + 0.04 * heading.sin()).clamp(0.0, 1.0),
        ];
    }
    let corners = |b: &AxisBox| [[b.lower[0], b.lower[1]], [b.upper[0], b.upper[1]]];
    let mut draws = Vec::with_capacity(samples);
    for _ in 0..samples {
        let x = tree.sample(&mut rng).map_err(|e| e.to_string())?;
        draws.push([x[0], x[1]]);
    }
    Ok(KdView {
        points: walk,
        rects: tree.leaves().map(|l| corners(&l.rect)).collect(),
        cells: tree.leaves().map(|l| corners(&l.subdomain)).collect(),
        samples: draws,
        total_volume: tree.total_volume(),
    })
}

/// Projects `(x, y)` onto the unit circle twice: along the normal, and
/// orthogonally to the tangent line of the chart at angle `chart_angle`.
pub fn projection_view(x: f64, y: f64, chart_angle: f64) -> Result<ProjectionView, String> {
    let box2 = AxisBox::cube(2, -2.0, 2.0);
    let sys = ConstraintSystem::new(Hypersphere::new(2, 1.0), box2).map_err(|e| e.to_string())?;
    let center = AmbientPoint::from_column_slice(&[chart_angle.cos(), chart_angle.sin()]);
    let basis = sys.tangent_basis(&center).map_err(|e| e.to_string())?;
    let query = AmbientPoint::from_column_slice(&[x, y]);
    let tangent = basis.lift(&basis.coordinates(&query));
    Ok(ProjectionView {
        query: [x, y],
        chart_center: [center[0], center[1]],
        tangent: [tangent[0], tangent[1]],
        pseudo_inverse: sys.project_pseudoinverse(&query).ok().map(|p| [p[0], p[1]]),
        orthogonal: sys.project_orthogonal(&basis, &query).ok().map(|p| [p[0], p[1]]),
    })
}

#[wasm_bindgen]
pub fn plan(problem: &str, strategy: &str, seed: u32, max_iterations: u32) -> String {
    to_json(&plan_view(problem, strategy, seed.into(), max_iterations.into()))
}

#[wasm_bindgen]
pub fn kdtree(points: u32, r: f64, samples: u32, seed: u32) -> String {
    to_json(&kdtree_view(points as usize, r, samples as usize, seed.into()))
}

#[wasm_bindgen]
pub fn project(x: f64, y: f64, chart_angle: f64) -> String {
    to_json(&projection_view(x, y, chart_angle))
}
