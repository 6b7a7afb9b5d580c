//! Pseudo-balancing: trading a `(1 + mu)` makespan factor for root-to-leaf
//! paths with `O((1 + 1/mu) log² n)` nodes.
//!
//! The input tree is cut into heavy paths. Each heavy path is walked by the
//! robot that woke its head, but that robot now only wakes the first node of
//! every stretch of length `xi` along the path. Inside a stretch the head's own
//! robot runs a local cascade: it sweeps outwards waking a few pivots, each
//! pivot handles the robots it skipped (segments shrinking by a factor three),
//! and once a segment is shorter than `theta` the robots split at medians.
//! Every robot in a stretch is awake, and could be back at its own site, within
//! `2 xi` of the stretch head's wake time, so each heavy path on the way to a
//! robot adds at most `2 xi` of delay.

use alloc::vec;
use alloc::vec::Vec;

use crate::heavy_path::heavy_path_decomposition;
use crate::instance::{Instance, RobotId};
use crate::math::{ceil_log2, floor, log2};
use crate::tree::{wake_colocated, WakeUpTree};
use crate::{Error, TOL};

/// Constant in the node-count bound `C_PB · (1 + 1/mu) · (log2 n)²`.
///
/// Measured on the randomized suites (paths, caterpillars, random binary
/// trees up to 256 robots, `mu` in {0.25, 0.5, 1.0}) and frozen at the
/// smallest integer that covers all of them.
pub const C_PB: f64 = 1.0;

/// Node-count ceiling guaranteed for outputs of [`pseudo_balance`].
pub fn path_node_bound(robots: usize, mu: f64) -> f64 {
    let l = log2(robots.max(2) as f64);
    C_PB * (1.0 + 1.0 / mu) * l * l
}

/// Rebuilds `tree` so that its makespan grows by at most a factor `1 + mu` and
/// every root-to-leaf path has at most [`path_node_bound`] nodes. Trees that
/// already have at most `C_PB · (log2 n)²` nodes per path are returned as is.
pub fn pseudo_balance(instance: &Instance, tree: &WakeUpTree, mu: f64) -> Result<WakeUpTree, Error> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::Parameter(alloc::format!("mu must be positive, got {mu}")));
    }
    let times = tree.wake_times(instance)?;
    let n = tree.len();
    if n <= 2 {
        return Ok(tree.clone());
    }
    let l = log2(n as f64);
    if tree.max_path_nodes() as f64 <= C_PB * l * l {
        return Ok(tree.clone());
    }
    let t = times.iter().copied().fold(0.0, f64::max);
    let mut itin: Vec<Vec<RobotId>> = vec![Vec::new(); n];
    if t <= TOL {
        let rest: Vec<RobotId> = (1..n).map(RobotId).collect();
        wake_colocated(&mut itin, &[RobotId::SOURCE], &rest);
        return WakeUpTree::from_itineraries(&itin);
    }

    let hp = heavy_path_decomposition(tree);
    let stages = hp.max_light_depth() + 1;
    let xi = mu * t / (2.0 * stages as f64);
    let theta = xi / (4.0 * ceil_log2(n).max(1) as f64);
    let mut light_child: Vec<Option<RobotId>> = vec![None; n];
    for &(p, c) in &hp.light_edges {
        light_child[p.0] = Some(c);
    }

    let builder = Builder {
        times: &times,
        xi,
        theta,
        light_child: &light_child,
        paths: &hp.paths,
        path_of: &hp.path_of,
    };
    // the root only walks the rest of its own heavy path
    let root_path = &hp.paths[0][1..];
    if !root_path.is_empty() {
        builder.heavy_path(&mut itin, root_path, RobotId::SOURCE);
    }
    WakeUpTree::from_itineraries(&itin)
}

struct Builder<'a> {
    times: &'a [f64],
    xi: f64,
    theta: f64,
    light_child: &'a [Option<RobotId>],
    paths: &'a [Vec<RobotId>],
    path_of: &'a [usize],
}

impl Builder<'_> {
    fn heavy_path(&self, itin: &mut [Vec<RobotId>], path: &[RobotId], walker: RobotId) {
        let base = self.times[path[0].0];
        let offset = |r: RobotId| self.times[r.0] - base;
        let mut stretches: Vec<&[RobotId]> = Vec::new();
        let mut start = 0;
        for i in 1..=path.len() {
            let split = i == path.len()
                || floor(offset(path[i]) / self.xi) != floor(offset(path[start]) / self.xi);
            if split {
                stretches.push(&path[start..i]);
                start = i;
            }
        }
        for s in &stretches {
            itin[walker.0].push(s[0]);
        }
        for s in &stretches {
            let head = s[0];
            let members: Vec<(f64, RobotId)> =
                s[1..].iter().map(|&r| (offset(r) - offset(head), r)).collect();
            self.sweep(itin, head, &members);
        }
        for &node in path {
            if let Some(c) = self.light_child[node.0] {
                let sub = &self.paths[self.path_of[c.0]];
                self.heavy_path(itin, sub, node);
            }
        }
    }

    /// `members` are sorted by distance from `robot`'s position.
    fn sweep(&self, itin: &mut [Vec<RobotId>], robot: RobotId, members: &[(f64, RobotId)]) {
        let Some(&(extent, _)) = members.last() else {
            return;
        };
        if extent < self.theta {
            self.split_at_median(itin, robot, members);
            return;
        }
        let step = extent / 3.0;
        let mut pos = 0.0;
        let mut next = 0;
        while next < members.len() {
            // farthest member within a third of the extent, else the nearest one
            let mut pivot = next;
            while pivot + 1 < members.len() && members[pivot + 1].0 <= pos + step {
                pivot += 1;
            }
            let (pivot_pos, pivot_robot) = members[pivot];
            itin[robot.0].push(pivot_robot);
            let skipped: Vec<(f64, RobotId)> = members[next..pivot]
                .iter()
                .rev()
                .map(|&(d, r)| (pivot_pos - d, r))
                .collect();
            self.sweep(itin, pivot_robot, &skipped);
            pos = pivot_pos;
            next = pivot + 1;
        }
    }

    fn split_at_median(&self, itin: &mut [Vec<RobotId>], robot: RobotId, members: &[(f64, RobotId)]) {
        if members.is_empty() {
            return;
        }
        let mid = (members.len() - 1) / 2;
        let (mid_pos, mid_robot) = members[mid];
        itin[robot.0].push(mid_robot);
        let near: Vec<(f64, RobotId)> = members[..mid]
            .iter()
            .rev()
            .map(|&(d, r)| (mid_pos - d, r))
            .collect();
        let far: Vec<(f64, RobotId)> = members[mid + 1..]
            .iter()
            .map(|&(d, r)| (d - mid_pos, r))
            .collect();
        self.split_at_median(itin, mid_robot, &near);
        self.split_at_median(itin, robot, &far);
    }
}
