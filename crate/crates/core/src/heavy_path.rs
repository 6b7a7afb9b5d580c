//! Heavy-path decomposition of a rooted tree.
//!
//! Works on any tree stored in a [`WakeUpTree`] rooted at robot 0; the
//! wake-up degree bounds are not required.

use alloc::vec;
use alloc::vec::Vec;

use crate::instance::RobotId;
use crate::tree::WakeUpTree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavyPaths {
    /// Number of nodes in each node's subtree, the node included.
    pub subtree_size: Vec<usize>,
    /// Child with the largest subtree (smallest id on ties).
    pub heavy_child: Vec<Option<RobotId>>,
    /// Heavy paths, each listed from its head downwards. The path containing
    /// the root comes first; the rest follow in depth-first order.
    pub paths: Vec<Vec<RobotId>>,
    /// `(parent, child)` pairs joined by a light edge.
    pub light_edges: Vec<(RobotId, RobotId)>,
    /// Index into `paths` of the path containing each node.
    pub path_of: Vec<usize>,
}

impl HeavyPaths {
    /// Largest number of light edges on any root-to-leaf path.
    pub fn max_light_depth(&self) -> usize {
        self.light_depths().into_iter().max().unwrap_or(0)
    }

    /// Light edges between the root and each node.
    pub fn light_depths(&self) -> Vec<usize> {
        let n = self.subtree_size.len();
        let mut depth = vec![0usize; n];
        // paths are emitted parents-first, so one sweep suffices
        for path in &self.paths {
            let head = path[0];
            let base = self
                .light_edges
                .iter()
                .find(|(_, c)| *c == head)
                .map(|(p, _)| depth[p.0] + 1)
                .unwrap_or(0);
            for r in path {
                depth[r.0] = base;
            }
        }
        depth
    }
}

/// Decomposes `tree` (rooted at robot 0) into heavy paths.
pub fn heavy_path_decomposition(tree: &WakeUpTree) -> HeavyPaths {
    let n = tree.len();
    if n == 0 {
        return HeavyPaths {
            subtree_size: Vec::new(),
            heavy_child: Vec::new(),
            paths: Vec::new(),
            light_edges: Vec::new(),
            path_of: Vec::new(),
        };
    }
    let order = preorder(tree);
    let mut size = vec![1usize; n];
    for &u in order.iter().rev() {
        for c in tree.children(u) {
            size[u.0] += size[c.0];
        }
    }
    let mut heavy = vec![None; n];
    for &u in &order {
        heavy[u.0] = tree
            .children(u)
            .iter()
            .copied()
            .max_by(|a, b| size[a.0].cmp(&size[b.0]).then(b.0.cmp(&a.0)));
    }

    let mut paths = Vec::new();
    let mut light_edges = Vec::new();
    let mut path_of = vec![usize::MAX; n];
    let mut heads = vec![RobotId::SOURCE];
    while let Some(head) = heads.pop() {
        let idx = paths.len();
        let mut path = Vec::new();
        let mut cur = Some(head);
        let mut lights = Vec::new();
        while let Some(u) = cur {
            path.push(u);
            path_of[u.0] = idx;
            for &c in tree.children(u) {
                if Some(c) != heavy[u.0] {
                    light_edges.push((u, c));
                    lights.push(c);
                }
            }
            cur = heavy[u.0];
        }
        paths.push(path);
        // reversed so the first light child is expanded first
        heads.extend(lights.into_iter().rev());
    }
    HeavyPaths {
        subtree_size: size,
        heavy_child: heavy,
        paths,
        light_edges,
        path_of,
    }
}

fn preorder(tree: &WakeUpTree) -> Vec<RobotId> {
    let mut order = Vec::with_capacity(tree.len());
    let mut stack = vec![RobotId::SOURCE];
    while let Some(u) = stack.pop() {
        order.push(u);
        stack.extend(tree.children(u).iter().rev());
    }
    order
}
