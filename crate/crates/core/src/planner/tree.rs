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
use crate::bounds::AxisBox;
use crate::manifold::ConstraintSystem;
use crate::sampling::{DynamicDomainState, RrtKdTree};
use crate::AmbientPoint;

#[derive(Clone, Debug, PartialEq)]
pub struct RrtNode {
    pub config: AmbientPoint,
    pub parent: Option<usize>,
    /// Chart the node was grown in (atlas strategies only).
    pub chart: Option<usize>,
}

/// One search tree: nodes, their kd-tree index and dynamic-domain flags.
#[derive(Clone, Debug)]
pub struct Rrt {
    nodes: Vec<RrtNode>,
    index: RrtKdTree,
    domain: DynamicDomainState,
    tol_f: f64,
}

impl Rrt {
    pub fn new(root: AmbientPoint, chart: Option<usize>, ambient: &AxisBox, r: f64, big_r: f64, tol_f: f64) -> Self {
        let mut tree = Self {
            nodes: Vec::new(),
            index: RrtKdTree::new(ambient.clone(), r),
            domain: DynamicDomainState::new(big_r),
            tol_f,
        };
        tree.push(root, None, chart);
        tree
    }

    fn push(&mut self, config: AmbientPoint, parent: Option<usize>, chart: Option<usize>) -> usize {
        let id = self.nodes.len();
        self.index.insert(config.clone(), id);
        self.nodes.push(RrtNode { config, parent, chart });
        id
    }

    /// Adds a node; the configuration must already be on the manifold.
    pub fn add_node(
        &mut self,
        sys: &ConstraintSystem,
        config: AmbientPoint,
        parent: usize,
        chart: Option<usize>,
    ) -> usize {
        let residual = sys.residual(&config);
        assert!(
            residual <= self.tol_f,
            "refusing off-manifold node (residual {residual:e})"
        );
        assert!(parent < self.nodes.len());
        self.push(config, Some(parent), chart)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> &RrtNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[RrtNode] {
        &self.nodes
    }

    pub fn index(&self) -> &RrtKdTree {
        &self.index
    }

    pub fn dynamic_domain(&self) -> &DynamicDomainState {
        &self.domain
    }

    pub fn dynamic_domain_mut(&mut self) -> &mut DynamicDomainState {
        &mut self.domain
    }

    pub fn nearest(&self, x: &AmbientPoint) -> (usize, f64) {
        self.index.nearest(x).expect("an RRT always holds its root")
    }

    /// Configurations from `id` back to the root, `id` first.
    pub fn path_to_root(&self, id: usize) -> Vec<AmbientPoint> {
        let mut out = Vec::new();
        let mut cur = Some(id);
        while let Some(i) = cur {
            out.push(self.nodes[i].config.clone());
            cur = self.nodes[i].parent;
        }
        out
    }
}
