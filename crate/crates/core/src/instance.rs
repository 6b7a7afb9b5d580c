//! Metric environments and robot placement.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::math;
use crate::Error;

/// Dense robot index. Robot 0 is the source robot and starts awake.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RobotId(pub usize);

impl RobotId {
    pub const SOURCE: RobotId = RobotId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for RobotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One spoke of a weighted star: its length and the sleepers at its leaf.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Spoke {
    pub length: f64,
    pub robots: usize,
}

impl Spoke {
    pub fn new(length: f64, robots: usize) -> Self {
        Spoke { length, robots }
    }
}

/// `L_p` metric used by point instances.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum Metric {
    L1,
    #[default]
    L2,
    LInf,
}

impl Metric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| math::abs(x - y));
        match self {
            Metric::L1 => diffs.sum(),
            Metric::L2 => math::sqrt(diffs.map(|d| d * d).sum()),
            Metric::LInf => diffs.fold(0.0, f64::max),
        }
    }
}

/// An undirected weighted edge `(u, v, w)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// The space the robots live in.
#[derive(Clone, Debug, PartialEq)]
pub enum Environment {
    /// Site 0 is the center; site `i + 1` is the leaf of `spokes[i]`.
    Star { spokes: Vec<Spoke> },
    /// Sites are vertices; distances are shortest-path lengths.
    Graph {
        vertices: usize,
        edges: Vec<Edge>,
        adjacency: Vec<Vec<(usize, f64)>>,
        dist: Vec<f64>,
    },
    /// Sites are points of `R^dim`.
    Points {
        dim: usize,
        points: Vec<Vec<f64>>,
        metric: Metric,
    },
}

/// Which of the three environment kinds an instance uses.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Star,
    Graph,
    Points,
}

/// `(max distance from the source, half the diameter)` over occupied sites.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct LowerBounds {
    pub max_dist_from_source: f64,
    pub half_diameter: f64,
}

impl LowerBounds {
    pub fn max(&self) -> f64 {
        self.max_dist_from_source.max(self.half_diameter)
    }
}

/// A Freeze-Tag instance: an environment, robot counts per site and a source.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    env: Environment,
    source_site: usize,
    robot_site: Vec<usize>,
    site_robots: Vec<Vec<RobotId>>,
}

impl Instance {
    /// Weighted star with the source alone at the center.
    pub fn star(spokes: &[Spoke]) -> Result<Self, Error> {
        for (i, s) in spokes.iter().enumerate() {
            if !(s.length.is_finite() && s.length > 0.0) {
                return Err(Error::InvalidInstance(format!(
                    "spoke {i} has non-positive length {}",
                    s.length
                )));
            }
            if s.robots == 0 {
                return Err(Error::InvalidInstance(format!("spoke {i} carries no robots")));
            }
        }
        let mut counts = Vec::with_capacity(spokes.len() + 1);
        counts.push(1);
        counts.extend(spokes.iter().map(|s| s.robots));
        Ok(Self::assemble(
            Environment::Star {
                spokes: spokes.to_vec(),
            },
            0,
            &counts,
        ))
    }

    /// Weighted star with `q` sleepers on every leaf.
    pub fn star_uniform(lengths: &[f64], q: usize) -> Result<Self, Error> {
        let spokes: Vec<Spoke> = lengths.iter().map(|&l| Spoke::new(l, q)).collect();
        Self::star(&spokes)
    }

    /// Weighted graph. `robots[v]` counts the robots at vertex `v`; the count at
    /// `source` includes the source robot and must be positive.
    pub fn graph(
        vertices: usize,
        edges: &[(usize, usize, f64)],
        source: usize,
        robots: &[usize],
    ) -> Result<Self, Error> {
        if vertices == 0 {
            return Err(Error::InvalidInstance("graph has no vertices".into()));
        }
        if robots.len() != vertices {
            return Err(Error::InvalidInstance(format!(
                "robots list has {} entries for {vertices} vertices",
                robots.len()
            )));
        }
        if source >= vertices {
            return Err(Error::InvalidInstance(format!("source {source} is not a vertex")));
        }
        if robots[source] == 0 {
            return Err(Error::InvalidInstance("source vertex holds no robot".into()));
        }
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); vertices];
        let mut kept = Vec::with_capacity(edges.len());
        for (i, &(u, v, w)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidInstance(format!("edge {i} has an unknown endpoint")));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidInstance(format!("edge {i} has negative weight {w}")));
            }
            if u == v {
                continue;
            }
            // parallel edges collapse to the lightest one
            match adjacency[u].iter().position(|&(x, _)| x == v) {
                Some(pos) => {
                    if w < adjacency[u][pos].1 {
                        adjacency[u][pos].1 = w;
                        let back = adjacency[v].iter().position(|&(x, _)| x == u).unwrap();
                        adjacency[v][back].1 = w;
                    }
                }
                None => {
                    adjacency[u].push((v, w));
                    adjacency[v].push((u, w));
                }
            }
            kept.push(Edge { u, v, weight: w });
        }
        for list in adjacency.iter_mut() {
            list.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        }
        let mut dist = vec![f64::INFINITY; vertices * vertices];
        for s in 0..vertices {
            let row = dijkstra(&adjacency, s);
            dist[s * vertices..(s + 1) * vertices].copy_from_slice(&row);
        }
        if let Some(v) = (0..vertices).find(|&v| dist[source * vertices + v].is_infinite()) {
            return Err(Error::InvalidInstance(format!(
                "graph is disconnected: vertex {v} is unreachable from the source"
            )));
        }
        Ok(Self::assemble(
            Environment::Graph {
                vertices,
                edges: kept,
                adjacency,
                dist,
            },
            source,
            robots,
        ))
    }

    /// Point set in `R^dim`. `robots[i]` counts the robots at point `i`.
    pub fn points(
        dim: usize,
        points: &[Vec<f64>],
        source: usize,
        robots: &[usize],
        metric: Metric,
    ) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::InvalidInstance("no robots".into()));
        }
        if dim == 0 {
            return Err(Error::InvalidInstance("dimension must be positive".into()));
        }
        if robots.len() != points.len() {
            return Err(Error::InvalidInstance(format!(
                "robots list has {} entries for {} points",
                robots.len(),
                points.len()
            )));
        }
        if source >= points.len() {
            return Err(Error::InvalidInstance(format!("source {source} is not a point")));
        }
        if robots[source] == 0 {
            return Err(Error::InvalidInstance("source point holds no robot".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidInstance(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInstance(format!("point {i} has a non-finite coordinate")));
            }
        }
        Ok(Self::assemble(
            Environment::Points {
                dim,
                points: points.to_vec(),
                metric,
            },
            source,
            robots,
        ))
    }

    /// Planar Euclidean instance with one robot per point.
    pub fn planar(points: &[(f64, f64)], source: usize) -> Result<Self, Error> {
        let pts: Vec<Vec<f64>> = points.iter().map(|&(x, y)| vec![x, y]).collect();
        Self::points(2, &pts, source, &vec![1; pts.len()], Metric::L2)
    }

    // Robot 0 is the source; the rest are numbered site by site.
    fn assemble(env: Environment, source_site: usize, counts: &[usize]) -> Self {
        let mut robot_site = vec![source_site];
        let mut site_robots = vec![Vec::new(); counts.len()];
        site_robots[source_site].push(RobotId::SOURCE);
        for (site, &c) in counts.iter().enumerate() {
            let extra = if site == source_site { c.saturating_sub(1) } else { c };
            for _ in 0..extra {
                site_robots[site].push(RobotId(robot_site.len()));
                robot_site.push(site);
            }
        }
        Instance {
            env,
            source_site,
            robot_site,
            site_robots,
        }
    }

    pub fn environment(&self) -> &Environment {
        &self.env
    }

    pub fn kind(&self) -> Kind {
        match self.env {
            Environment::Star { .. } => Kind::Star,
            Environment::Graph { .. } => Kind::Graph,
            Environment::Points { .. } => Kind::Points,
        }
    }

    pub fn robot_count(&self) -> usize {
        self.robot_site.len()
    }

    pub fn site_count(&self) -> usize {
        self.site_robots.len()
    }

    pub fn source_site(&self) -> usize {
        self.source_site
    }

    pub fn site_of(&self, robot: RobotId) -> usize {
        self.robot_site[robot.0]
    }

    /// Robots initially located at `site`, in increasing id order.
    pub fn robots_at(&self, site: usize) -> &[RobotId] {
        &self.site_robots[site]
    }

    /// Number of robots per site, the source included.
    pub fn site_counts(&self) -> Vec<usize> {
        self.site_robots.iter().map(Vec::len).collect()
    }

    /// Sites holding at least one robot.
    pub fn occupied_sites(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.site_count()).filter(move |&s| !self.site_robots[s].is_empty())
    }

    /// Spokes of a star instance.
    pub fn spokes(&self) -> Option<&[Spoke]> {
        match &self.env {
            Environment::Star { spokes } => Some(spokes),
            _ => None,
        }
    }

    /// Adjacency lists of a graph instance, sorted by `(weight, neighbor)`.
    pub fn adjacency(&self) -> Option<&[Vec<(usize, f64)>]> {
        match &self.env {
            Environment::Graph { adjacency, .. } => Some(adjacency),
            _ => None,
        }
    }

    /// Coordinates of a point instance.
    pub fn coordinates(&self) -> Option<&[Vec<f64>]> {
        match &self.env {
            Environment::Points { points, .. } => Some(points),
            _ => None,
        }
    }

    pub fn site_distance(&self, a: usize, b: usize) -> f64 {
        if a == b {
            return 0.0;
        }
        match &self.env {
            Environment::Star { spokes } => {
                let leg = |s: usize| if s == 0 { 0.0 } else { spokes[s - 1].length };
                leg(a) + leg(b)
            }
            Environment::Graph { vertices, dist, .. } => dist[a * vertices + b],
            Environment::Points { points, metric, .. } => metric.distance(&points[a], &points[b]),
        }
    }

    pub fn distance(&self, a: RobotId, b: RobotId) -> f64 {
        self.site_distance(self.site_of(a), self.site_of(b))
    }

    /// Generic makespan lower bounds over occupied sites.
    pub fn lower_bounds(&self) -> LowerBounds {
        let occupied: Vec<usize> = self.occupied_sites().collect();
        let max_dist_from_source = occupied
            .iter()
            .map(|&s| self.site_distance(self.source_site, s))
            .fold(0.0, f64::max);
        let diameter = match &self.env {
            Environment::Star { spokes } => {
                // two longest spokes, or the longest alone against the center
                let mut top = [0.0f64; 2];
                for s in spokes {
                    if s.length > top[0] {
                        top[1] = top[0];
                        top[0] = s.length;
                    } else if s.length > top[1] {
                        top[1] = s.length;
                    }
                }
                top[0] + top[1]
            }
            _ => {
                let mut best = 0.0f64;
                for (i, &a) in occupied.iter().enumerate() {
                    for &b in &occupied[i + 1..] {
                        best = best.max(self.site_distance(a, b));
                    }
                }
                best
            }
        };
        LowerBounds {
            max_dist_from_source,
            half_diameter: diameter / 2.0,
        }
    }

    /// Same instance with every distance multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Self {
        let env = match &self.env {
            Environment::Star { spokes } => Environment::Star {
                spokes: spokes
                    .iter()
                    .map(|s| Spoke::new(s.length * factor, s.robots))
                    .collect(),
            },
            Environment::Graph {
                vertices,
                edges,
                adjacency,
                dist,
            } => Environment::Graph {
                vertices: *vertices,
                edges: edges
                    .iter()
                    .map(|e| Edge {
                        weight: e.weight * factor,
                        ..*e
                    })
                    .collect(),
                adjacency: adjacency
                    .iter()
                    .map(|l| l.iter().map(|&(v, w)| (v, w * factor)).collect())
                    .collect(),
                dist: dist.iter().map(|d| d * factor).collect(),
            },
            Environment::Points { dim, points, metric } => Environment::Points {
                dim: *dim,
                points: points
                    .iter()
                    .map(|p| p.iter().map(|c| c * factor).collect())
                    .collect(),
                metric: *metric,
            },
        };
        Instance { env, ..self.clone() }
    }
}

#[derive(Copy, Clone, PartialEq)]
struct HeapEntry(f64, usize);

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source shortest paths over adjacency lists.
pub(crate) fn dijkstra(adjacency: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    dijkstra_tree(adjacency, source).0
}

/// Shortest-path distances and a shortest-path tree. Ties in the tree break
/// toward the smaller predecessor id.
pub(crate) fn dijkstra_tree(
    adjacency: &[Vec<(usize, f64)>],
    source: usize,
) -> (Vec<f64>, Vec<Option<usize>>) {
    let n = adjacency.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapEntry(0.0, source));
    while let Some(HeapEntry(d, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(v, w) in &adjacency[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                pred[v] = Some(u);
                heap.push(HeapEntry(nd, v));
            } else if nd == dist[v] && !done[v] && pred[v].is_some_and(|p| u < p) {
                pred[v] = Some(u);
            }
        }
    }
    (dist, pred)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_numbering_and_distances() {
        let inst = Instance::star(&[Spoke::new(1.0, 2), Spoke::new(3.0, 1)]).unwrap();
        assert_eq!(inst.robot_count(), 4);
        assert_eq!(inst.robots_at(0), &[RobotId(0)]);
        assert_eq!(inst.robots_at(1), &[RobotId(1), RobotId(2)]);
        assert_eq!(inst.site_distance(1, 2), 4.0);
        assert_eq!(inst.site_distance(0, 2), 3.0);
        assert_eq!(inst.distance(RobotId(1), RobotId(2)), 0.0);
    }

    #[test]
    fn star_lower_bounds() {
        let inst = Instance::star_uniform(&[1.0, 1.0, 1.0, 100.0], 1).unwrap();
        let lb = inst.lower_bounds();
        assert_eq!(lb.max_dist_from_source, 100.0);
        assert_eq!(lb.half_diameter, 50.5);

        let single = Instance::star(&[]).unwrap();
        assert_eq!(single.lower_bounds().max(), 0.0);
    }

    #[test]
    fn graph_shortest_paths() {
        let inst = Instance::graph(
            4,
            &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0), (2, 3, 2.0)],
            0,
            &[1, 1, 1, 1],
        )
        .unwrap();
        assert_eq!(inst.site_distance(0, 2), 2.0);
        assert_eq!(inst.site_distance(0, 3), 4.0);
        assert_eq!(inst.site_distance(3, 0), 4.0);
    }

    #[test]
    fn graph_rejects_bad_input() {
        assert!(matches!(
            Instance::graph(2, &[(0, 1, -1.0)], 0, &[1, 1]),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(
            Instance::graph(3, &[(0, 1, 1.0)], 0, &[1, 1, 1]),
            Err(Error::InvalidInstance(_))
        ));
        assert!(Instance::graph(2, &[(0, 1, 1.0)], 0, &[0, 1]).is_err());
    }

    #[test]
    fn points_metrics() {
        let pts = [vec![0.0, 0.0], vec![3.0, 4.0]];
        for (metric, d) in [(Metric::L1, 7.0), (Metric::L2, 5.0), (Metric::LInf, 4.0)] {
            let inst = Instance::points(2, &pts, 0, &[1, 1], metric).unwrap();
            assert_eq!(inst.site_distance(0, 1), d);
        }
        assert!(Instance::points(2, &[], 0, &[], Metric::L2).is_err());
    }

    #[test]
    fn unit_square_lower_bounds() {
        let inst = Instance::planar(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)], 0).unwrap();
        let lb = inst.lower_bounds();
        let diag = math::sqrt(2.0);
        assert!((lb.max_dist_from_source - diag).abs() < 1e-12);
        assert!((lb.half_diameter - diag / 2.0).abs() < 1e-12);
    }
}
