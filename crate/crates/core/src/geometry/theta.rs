use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::math::{atan2, floor, sqrt};
use crate::Error;

/// Θ-graph: for every point and each of `k` equal angular sectors around it,
/// the nearest other point inside that sector.
///
/// Sector `j` of `v` is the half-open range of directions
/// `[j · 2π/k, (j + 1) · 2π/k)` measured from the +x axis. Points at distance
/// zero from `v` lie in no sector. Nearest means Euclidean distance, lower
/// index on ties.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaGraph {
    pub k: usize,
    /// `neighbors[v][j]`: nearest point in sector `j` of `v`.
    pub neighbors: Vec<Vec<Option<usize>>>,
}

impl ThetaGraph {
    /// Distinct sector neighbors of `v`.
    pub fn sector_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.neighbors[v].iter().flatten().copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Points reachable from `start` along directed sector edges.
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.neighbors.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbors[v].iter().flatten() {
                if !seen[*u] {
                    seen[*u] = true;
                    stack.push(*u);
                }
            }
        }
        seen
    }
}

fn direction(from: [f64; 2], to: [f64; 2]) -> f64 {
    let a = atan2(to[1] - from[1], to[0] - from[0]);
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

fn width(k: usize) -> f64 {
    2.0 * PI / k as f64
}

fn lower_edge(j: usize, k: usize) -> f64 {
    j as f64 * width(k)
}

/// The sector containing direction `angle`, consistent with [`in_sector`].
fn sector_of(angle: f64, k: usize) -> usize {
    let mut j = (floor(angle / width(k)).max(0.0) as usize).min(k - 1);
    while j > 0 && angle < lower_edge(j, k) {
        j -= 1;
    }
    while j + 1 < k && angle >= lower_edge(j + 1, k) {
        j += 1;
    }
    j
}

fn in_sector(angle: f64, j: usize, k: usize) -> bool {
    angle >= lower_edge(j, k) && (j + 1 == k || angle < lower_edge(j + 1, k))
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    sqrt(dx * dx + dy * dy)
}

fn check_k(k: usize) -> Result<(), Error> {
    if k == 0 {
        return Err(Error::Parameter("the Θ-graph needs at least one sector".into()));
    }
    Ok(())
}

fn closer(points: &[[f64; 2]], v: usize, cand: usize, best: Option<usize>) -> bool {
    match best {
        None => true,
        Some(b) => {
            let dc = dist(points[v], points[cand]);
            let db = dist(points[v], points[b]);
            dc < db || (dc == db && cand < b)
        }
    }
}

/// Θ-graph in `O(n²)` time: every pair is binned into its sector once.
pub fn build_theta_graph(points: &[[f64; 2]], k: usize) -> Result<ThetaGraph, Error> {
    check_k(k)?;
    let n = points.len();
    let mut neighbors = vec![vec![None; k]; n];
    for v in 0..n {
        for u in 0..n {
            if u == v || dist(points[v], points[u]) == 0.0 {
                continue;
            }
            let j = sector_of(direction(points[v], points[u]), k);
            if closer(points, v, u, neighbors[v][j]) {
                neighbors[v][j] = Some(u);
            }
        }
    }
    Ok(ThetaGraph { k, neighbors })
}

/// Reference builder in `O(n² k)` time: scans every sector of every point.
pub fn build_theta_graph_brute(points: &[[f64; 2]], k: usize) -> Result<ThetaGraph, Error> {
    check_k(k)?;
    let n = points.len();
    let mut neighbors = vec![vec![None; k]; n];
    for v in 0..n {
        for (j, slot) in neighbors[v].iter_mut().enumerate() {
            for u in 0..n {
                if u == v || dist(points[v], points[u]) == 0.0 {
                    continue;
                }
                if in_sector(direction(points[v], points[u]), j, k) && closer(points, v, u, *slot) {
                    *slot = Some(u);
                }
            }
        }
    }
    Ok(ThetaGraph { k, neighbors })
}

pub(crate) fn planar_points(coords: &[Vec<f64>]) -> Result<Vec<[f64; 2]>, Error> {
    coords
        .iter()
        .map(|c| match c.as_slice() {
            [x, y] => Ok([*x, *y]),
            _ => Err(Error::Precondition(format!(
                "planar algorithm given a {}-dimensional point",
                c.len()
            ))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_see_each_other() {
        let g = build_theta_graph(&[[0.0, 0.0], [1.0, 2.0]], 9).unwrap();
        assert_eq!(g.sector_neighbors(0), vec![1]);
        assert_eq!(g.sector_neighbors(1), vec![0]);
    }

    #[test]
    fn colinear_nearest_in_positive_x_sector() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]];
        let g = build_theta_graph(&pts, 9).unwrap();
        assert_eq!(g.neighbors[0][0], Some(1));
        assert_eq!(g.neighbors[2][4], Some(1));
        assert_eq!(g, build_theta_graph_brute(&pts, 9).unwrap());
    }

    #[test]
    fn boundary_directions() {
        // straight up is exactly the start of sector 1 when k = 4
        let pts = [[0.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        let g = build_theta_graph(&pts, 4).unwrap();
        assert_eq!(g.neighbors[0], vec![None, Some(1), Some(2), Some(3)]);
        assert_eq!(g, build_theta_graph_brute(&pts, 4).unwrap());
    }

    #[test]
    fn coincident_points_are_skipped() {
        let g = build_theta_graph(&[[1.0, 1.0], [1.0, 1.0]], 9).unwrap();
        assert!(g.sector_neighbors(0).is_empty());
        assert!(build_theta_graph(&[[0.0, 0.0]], 0).is_err());
    }
}
