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
//! Incremental kd-tree over RRT nodes.
//!
//! Besides nearest-neighbor queries, every leaf keeps its r-bounding
//! rectangle: the bounding box of its points inflated by `r`, clipped to the
//! leaf's cell and to the ambient box. Internal nodes cache the summed volume
//! of the rectangles below them, so sampling descends by volume and then
//! draws uniformly in one leaf rectangle. Leaf cells partition space, so the
//! rectangles never overlap and the result is uniform over their union.

use rand::Rng;

use super::SamplingError;
use crate::bounds::AxisBox;
use crate::AmbientPoint;

pub const DEFAULT_LEAF_CAPACITY: usize = 8;

#[derive(Clone, Debug)]
pub struct KdLeaf {
    pub points: Vec<(usize, AmbientPoint)>,
    /// Cell of the space covered by this leaf.
    pub subdomain: AxisBox,
    pub rect: AxisBox,
    pub volume: f64,
    depth: usize,
}

#[derive(Clone, Debug)]
pub enum KdNode {
    Internal {
        axis: usize,
        split: f64,
        /// Lower child holds points with `x[axis] <= split`.
        children: [usize; 2],
        volume: f64,
    },
    Leaf(KdLeaf),
}

impl KdNode {
    pub fn volume(&self) -> f64 {
        match self {
            KdNode::Internal { volume, .. } => *volume,
            KdNode::Leaf(leaf) => leaf.volume,
        }
    }
}

/// Rectangle with corners `min_i(x_i) - r` and `max_i(x_i) + r` per axis,
/// intersected with `subdomain` and `ambient`.
pub fn r_bounding_rect<'a, I>(points: I, r: f64, subdomain: &AxisBox, ambient: &AxisBox) -> AxisBox
where
    I: IntoIterator<Item = &'a AmbientPoint>,
{
    let dim = subdomain.dim();
    let mut lower = vec![f64::INFINITY; dim];
    let mut upper = vec![f64::NEG_INFINITY; dim];
    for p in points {
        for (i, v) in p.iter().enumerate() {
            lower[i] = lower[i].min(v - r);
            upper[i] = upper[i].max(v + r);
        }
    }
    AxisBox::new(lower, upper).intersect(subdomain).intersect(ambient)
}

#[derive(Clone, Debug)]
pub struct RrtKdTree {
    dim: usize,
    r: f64,
    leaf_capacity: usize,
    domain: AxisBox,
    nodes: Vec<KdNode>,
    len: usize,
}

const ROOT: usize = 0;

impl RrtKdTree {
    /// Empty tree over `domain` (the ambient box) with margin `r`.
    pub fn new(domain: AxisBox, r: f64) -> Self {
        Self::with_capacity(domain, r, DEFAULT_LEAF_CAPACITY)
    }

    pub fn with_capacity(domain: AxisBox, r: f64, leaf_capacity: usize) -> Self {
        assert!(r >= 0.0, "r-bounding margin must be non-negative");
        assert!(leaf_capacity >= 1);
        let dim = domain.dim();
        let root = KdLeaf {
            points: Vec::new(),
            subdomain: domain.clone(),
            rect: AxisBox::new(domain.lower.clone(), domain.lower.clone()),
            volume: 0.0,
            depth: 0,
        };
        Self { dim, r, leaf_capacity, domain, nodes: vec![KdNode::Leaf(root)], len: 0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// All nodes; index 0 is the root.
    pub fn nodes(&self) -> &[KdNode] {
        &self.nodes
    }

    pub fn leaves(&self) -> impl Iterator<Item = &KdLeaf> {
        self.nodes.iter().filter_map(|n| match n {
            KdNode::Leaf(leaf) => Some(leaf),
            KdNode::Internal { .. } => None,
        })
    }

    /// Total volume of all r-bounding rectangles.
    pub fn total_volume(&self) -> f64 {
        self.nodes[ROOT].volume()
    }

    pub fn insert(&mut self, x: AmbientPoint, id: usize) {
        assert_eq!(x.len(), self.dim, "point dimension does not match the tree");
        self.len += 1;
        let mut path = Vec::new();
        let mut node = ROOT;
        while let KdNode::Internal { axis, split, children, .. } = &self.nodes[node] {
            path.push(node);
            node = if x[*axis] <= *split { children[0] } else { children[1] };
        }
        if let KdNode::Leaf(leaf) = &mut self.nodes[node] {
            leaf.points.push((id, x));
            if leaf.points.len() > self.leaf_capacity {
                self.split_leaf(node);
            } else {
                self.refresh_leaf(node);
            }
        }
        // Only the ancestors of the touched leaf change volume.
        for &n in path.iter().rev() {
            if let KdNode::Internal { children, .. } = self.nodes[n] {
                let v = self.nodes[children[0]].volume() + self.nodes[children[1]].volume();
                if let KdNode::Internal { volume, .. } = &mut self.nodes[n] {
                    *volume = v;
                }
            }
        }
    }

    fn refresh_leaf(&mut self, node: usize) {
        let r = self.r;
        if let KdNode::Leaf(leaf) = &mut self.nodes[node] {
            leaf.rect = r_bounding_rect(leaf.points.iter().map(|(_, p)| p), r, &leaf.subdomain, &self.domain);
            leaf.volume = leaf.rect.volume();
        }
    }

    /// Median split along `depth mod n`, moving on to the next axes when all
    /// points share a coordinate. Identical points stay in one leaf.
    fn split_leaf(&mut self, node: usize) {
        let KdNode::Leaf(leaf) = &self.nodes[node] else {
            unreachable!()
        };
        let Some((axis, split)) = choose_split(leaf, self.dim) else {
            self.refresh_leaf(node);
            return;
        };
        let KdNode::Leaf(leaf) = std::mem::replace(
            &mut self.nodes[node],
            KdNode::Internal { axis, split, children: [0, 0], volume: 0.0 },
        ) else {
            unreachable!()
        };
        let (lower_pts, upper_pts): (Vec<_>, Vec<_>) =
            leaf.points.into_iter().partition(|(_, p)| p[axis] <= split);
        let mut lower_dom = leaf.subdomain.clone();
        lower_dom.upper[axis] = split;
        let mut upper_dom = leaf.subdomain;
        upper_dom.lower[axis] = split;

        let mut child_ids = [0; 2];
        for (slot, (points, subdomain)) in
            [(lower_pts, lower_dom), (upper_pts, upper_dom)].into_iter().enumerate()
        {
            let rect = r_bounding_rect(points.iter().map(|(_, p)| p), self.r, &subdomain, &self.domain);
            let volume = rect.volume();
            child_ids[slot] = self.nodes.len();
            self.nodes.push(KdNode::Leaf(KdLeaf { points, subdomain, rect, volume, depth: leaf.depth + 1 }));
        }
        let total = self.nodes[child_ids[0]].volume() + self.nodes[child_ids[1]].volume();
        if let KdNode::Internal { children, volume, .. } = &mut self.nodes[node] {
            *children = child_ids;
            *volume = total;
        }
    }

    /// Exact Euclidean nearest neighbor; ties go to the smaller id.
    pub fn nearest(&self, q: &AmbientPoint) -> Result<(usize, f64), SamplingError> {
        if self.is_empty() {
            return Err(SamplingError::EmptyTree);
        }
        let mut best = (usize::MAX, f64::INFINITY);
        self.nearest_in(ROOT, q, &mut best);
        Ok((best.0, best.1.sqrt()))
    }

    fn nearest_in(&self, node: usize, q: &AmbientPoint, best: &mut (usize, f64)) {
        match &self.nodes[node] {
            KdNode::Leaf(leaf) => {
                for (id, p) in &leaf.points {
                    let d2: f64 = p.iter().zip(q.iter()).map(|(a, b)| (a - b) * (a - b)).sum();
                    if d2 < best.1 || (d2 == best.1 && *id < best.0) {
                        *best = (*id, d2);
                    }
                }
            }
            KdNode::Internal { axis, split, children, .. } => {
                let diff = q[*axis] - split;
                let (near, far) = if diff <= 0.0 {
                    (children[0], children[1])
                } else {
                    (children[1], children[0])
                };
                self.nearest_in(near, q, best);
                if diff * diff <= best.1 {
                    self.nearest_in(far, q, best);
                }
            }
        }
    }

    /// Uniform draw over the union of the leaf rectangles. Never rejects.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<AmbientPoint, SamplingError> {
        if self.is_empty() {
            return Err(SamplingError::EmptyTree);
        }
        if !(self.total_volume() > 0.0) {
            return Err(SamplingError::ZeroVolume);
        }
        let mut node = ROOT;
        loop {
            match &self.nodes[node] {
                KdNode::Internal { children, volume, .. } => {
                    let pick = rng.random::<f64>() * volume;
                    node = if pick < self.nodes[children[0]].volume() {
                        children[0]
                    } else {
                        children[1]
                    };
                }
                KdNode::Leaf(leaf) => return Ok(leaf.rect.sample(rng)),
            }
        }
    }
}

fn choose_split(leaf: &KdLeaf, dim: usize) -> Option<(usize, f64)> {
    (0..dim).map(|o| (leaf.depth + o) % dim).find_map(|axis| {
        let mut values: Vec<f64> = leaf.points.iter().map(|(_, p)| p[axis]).collect();
        values.sort_by(f64::total_cmp);
        let max = *values.last()?;
        let median = values[(values.len() - 1) / 2];
        if median < max {
            Some((axis, median))
        } else {
            // Median equals the max; split just below it unless all equal.
            values.iter().rev().find(|v| **v < max).map(|v| (axis, *v))
        }
    })
}
