//! Weighted graphs: breadth-first wake-up when robots are plentiful, the
//! online cascade, and the instance family behind the online lower bound.

mod online;

pub use online::{online_cascade, online_cascade_with, OnlineOptions, OnlineReport, OnlineView, C_ONLINE};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{dijkstra_tree, Instance, RobotId};
use crate::tree::{wake_colocated, WakeUpTree};
use crate::Error;

pub(crate) fn adjacency(instance: &Instance) -> Result<&[Vec<(usize, f64)>], Error> {
    instance
        .adjacency()
        .ok_or_else(|| Error::Precondition("instance is not a graph".into()))
}

/// `Δ_G = max{δ(v0)/r(v0), (δ(v)-2)/r(v) for v != v0}`.
///
/// `r` counts every robot at a vertex, the source included. A vertex without
/// robots contributes infinity when `δ(v) > 2` and zero otherwise.
pub fn delta_g(instance: &Instance) -> Result<f64, Error> {
    let adj = adjacency(instance)?;
    let src = instance.source_site();
    let mut worst = f64::NEG_INFINITY;
    for (v, nbrs) in adj.iter().enumerate() {
        let r = instance.robots_at(v).len() as f64;
        let need = if v == src {
            nbrs.len() as f64
        } else {
            nbrs.len() as f64 - 2.0
        };
        let ratio = if r > 0.0 {
            need / r
        } else if need > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        worst = worst.max(ratio);
    }
    Ok(worst)
}

/// Largest ratio between the heaviest and lightest edge at one vertex.
pub fn rho_max(instance: &Instance) -> Result<f64, Error> {
    let adj = adjacency(instance)?;
    let mut worst: f64 = 1.0;
    for nbrs in adj {
        let lo = nbrs.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
        let hi = nbrs.iter().map(|e| e.1).fold(0.0, f64::max);
        if !nbrs.is_empty() {
            worst = worst.max(if lo > 0.0 { hi / lo } else { f64::INFINITY });
        }
    }
    Ok(worst)
}

/// Vertices that do not hold enough robots for [`bfs_wakeup`].
pub fn bfs_deficient(instance: &Instance) -> Result<Vec<usize>, Error> {
    let adj = adjacency(instance)?;
    let src = instance.source_site();
    Ok((0..adj.len())
        .filter(|&v| {
            let r = instance.robots_at(v).len();
            let d = adj[v].len();
            if v == src {
                r < d
            } else {
                r + 2 < d
            }
        })
        .collect())
}

/// Wake-up along a shortest-path tree, which is optimal when every vertex has
/// enough robots to cover its tree children (`r(v0) >= δ(v0)` and
/// `r(v) >= δ(v) - 2` elsewhere).
pub fn bfs_wakeup(instance: &Instance) -> Result<WakeUpTree, Error> {
    let adj = adjacency(instance)?;
    let bad = bfs_deficient(instance)?;
    if !bad.is_empty() {
        return Err(Error::Precondition(format!(
            "too few robots for breadth-first wake-up at vertices {bad:?}"
        )));
    }
    let src = instance.source_site();
    let (dist, pred) = dijkstra_tree(adj, src);
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); adj.len()];
    for (v, p) in pred.iter().enumerate() {
        if let Some(p) = *p {
            kids[p].push(v);
        }
    }
    for k in &mut kids {
        k.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
    }

    let mut itin: Vec<Vec<RobotId>> = vec![Vec::new(); instance.robot_count()];
    let at_src = instance.robots_at(src);
    let group = wake_colocated(&mut itin, &[RobotId::SOURCE], &at_src[1..]);
    let mut stack: Vec<(usize, Vec<RobotId>)> = vec![(src, group)];
    while let Some((v, group)) = stack.pop() {
        for (&c, &robot) in kids[v].iter().zip(&group) {
            let here = instance.robots_at(c);
            let next = match here.first() {
                Some(&first) => {
                    itin[robot.0].push(first);
                    wake_colocated(&mut itin, &[robot, first], &here[1..])
                }
                None => vec![robot],
            };
            stack.push((c, next));
        }
    }
    WakeUpTree::from_itineraries(&itin)
}

/// Lower-bound family for online algorithms: the source has `k` unit-weight
/// neighbors with one robot each, and neighbor `heavy` (0-based) leads through
/// an edge of weight `epsilon` to a vertex holding `k` robots.
///
/// Vertex 0 is the source, vertices `1..=k` its neighbors, vertex `k + 1` the
/// populous one.
pub fn adversary_family(k: usize, epsilon: f64, heavy: usize) -> Result<Instance, Error> {
    if k < 2 {
        return Err(Error::Parameter(format!("adversary family needs k >= 2, got {k}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Parameter(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    if heavy >= k {
        return Err(Error::Parameter(format!("heavy neighbor {heavy} out of range 0..{k}")));
    }
    let mut edges: Vec<(usize, usize, f64)> = (1..=k).map(|v| (0, v, 1.0)).collect();
    edges.push((heavy + 1, k + 1, epsilon));
    let mut robots = vec![1; k + 1];
    robots.push(k);
    Instance::graph(k + 2, &edges, 0, &robots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_three() {
        let g = Instance::graph(3, &[(0, 1, 1.0), (1, 2, 1.0)], 0, &[1, 1, 1]).unwrap();
        let t = bfs_wakeup(&g).unwrap();
        assert_eq!(g.makespan(&t).unwrap(), 2.0);
    }

    #[test]
    fn four_cycle_two_each() {
        let g = Instance::graph(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)], 0, &[2; 4]).unwrap();
        let t = bfs_wakeup(&g).unwrap();
        assert!(t.validate(&g).is_ok());
        assert_eq!(g.makespan(&t).unwrap(), 2.0);
    }

    #[test]
    fn star_graph_with_enough_robots_at_center() {
        let edges: Vec<(usize, usize, f64)> = (1..=5).map(|v| (0, v, 1.0)).collect();
        let g = Instance::graph(6, &edges, 0, &[5, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(g.makespan(&bfs_wakeup(&g).unwrap()).unwrap(), 1.0);
    }

    #[test]
    fn deficient_vertices_are_listed() {
        let edges: Vec<(usize, usize, f64)> = (1..=3).map(|v| (0, v, 1.0)).collect();
        let g = Instance::graph(4, &edges, 0, &[1, 1, 1, 1]).unwrap();
        match bfs_wakeup(&g) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("[0]")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn delta_and_rho() {
        let g = Instance::graph(3, &[(0, 1, 1.0), (0, 2, 4.0), (1, 2, 2.0)], 0, &[1, 0, 1]).unwrap();
        // v0: 2/1, v1: 0/0 -> 0, v2: 0/1
        assert_eq!(delta_g(&g).unwrap(), 2.0);
        assert_eq!(rho_max(&g).unwrap(), 4.0);
        let h = Instance::graph(4, &[(0, 1, 1.0), (1, 2, 1.0), (1, 3, 1.0)], 0, &[1, 0, 1, 1]).unwrap();
        assert_eq!(delta_g(&h).unwrap(), f64::INFINITY);
    }

    #[test]
    fn adversary_shapes() {
        let g = adversary_family(2, 0.1, 1).unwrap();
        assert_eq!(g.robot_count(), 1 + 2 + 2);
        assert_eq!(g.site_distance(0, 3), 1.1);
        assert!(matches!(adversary_family(1, 0.1, 0), Err(Error::Parameter(_))));
        let four = adversary_family(4, 0.1, 3).unwrap();
        assert_eq!(four.robot_count(), 9);
    }
}
