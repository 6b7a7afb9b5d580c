//! Pixel-grid approximation scheme in the plane.
//!
//! The points are cut into `m × m` pixels with `m = ⌈c_m / eps⌉`, and every
//! nonempty pixel is represented by its lowest-numbered robot. Wake-up trees
//! over the representatives are enumerated exhaustively, subject to two caps:
//! a pixel holding `r` robots hands out at most `min(m² - 1, r + 1)` child
//! pixels (`r` at the source's pixel), and no root-to-leaf path has more than
//! `max(3, ⌈c_b · log2(m)²⌉)` pixels. The best few trees are expanded: each
//! pixel is swept internally with [`geo_o1`](super::geo_o1), and its robots,
//! the one that came in included, then leave for the child pixels as soon as
//! they are free. The result is never worse than plain `geo_o1`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::pixel::{pixelize, PixelGrid};
use super::sweep::{sweep, SweepOptions};
use crate::instance::{Environment, Instance, RobotId};
use crate::math::{ceil, log2};
use crate::tree::WakeUpTree;
use crate::{Error, TOL};

/// Default pixels per `1/eps`.
pub const C_M: f64 = 2.0;
/// Default constant of the path cap `max(3, ⌈c_b · log2(m)²⌉)`.
pub const C_B: f64 = 2.0;
/// Constant in `geo_ptas <= (1 + C_GP · eps) · optimum`, measured with
/// `m = 2` on random planar sets with at most eight robots.
pub const C_GP: f64 = 1.0;
/// Constant in `geo_ptas <= t_b + C_EXP · side · log2(m)² / m`, where `t_b`
/// is the best representative tree and `side` the bounding-square side.
pub const C_EXP: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridOptions {
    pub epsilon: f64,
    pub c_m: f64,
    /// Use this resolution instead of `⌈c_m / eps⌉`.
    pub m_override: Option<usize>,
    /// Accept `m > 4`.
    pub allow_large_m: bool,
    pub c_b: f64,
    /// Representative trees expanded into full schedules.
    pub candidates: usize,
    /// Enumeration nodes before giving up.
    pub node_budget: u64,
    pub sweep: SweepOptions,
}

impl GridOptions {
    pub fn new(epsilon: f64) -> Self {
        GridOptions {
            epsilon,
            c_m: C_M,
            m_override: None,
            allow_large_m: false,
            c_b: C_B,
            candidates: 4,
            node_budget: 20_000_000,
            sweep: SweepOptions::default(),
        }
    }

    pub fn resolution(&self) -> Result<usize, Error> {
        if let Some(m) = self.m_override {
            return if m == 0 {
                Err(Error::Parameter("grid resolution must be at least 1".into()))
            } else {
                Ok(m)
            };
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Parameter(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        Ok((ceil(self.c_m / self.epsilon) as usize).max(1))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridReport {
    pub tree: WakeUpTree,
    pub makespan: f64,
    pub m: usize,
    pub pixels: usize,
    pub side: f64,
    /// Best representative-tree makespan found, `t_b`.
    pub representative_makespan: f64,
    /// Representative trees completed during the enumeration.
    pub enumerated: u64,
    /// Whether plain `geo_o1` beat every expanded tree.
    pub fallback: bool,
}

pub fn geo_ptas(instance: &Instance, epsilon: f64) -> Result<WakeUpTree, Error> {
    Ok(geo_ptas_with(instance, &GridOptions::new(epsilon))?.tree)
}

pub fn geo_ptas_with(instance: &Instance, options: &GridOptions) -> Result<GridReport, Error> {
    let m = options.resolution()?;
    if m > 4 && !options.allow_large_m && options.m_override.is_none() {
        return Err(Error::Parameter(format!(
            "epsilon {} gives a {m}×{m} grid; at most 4×4 runs without the override",
            options.epsilon
        )));
    }
    let grid = pixelize(instance, m)?;
    let base = sweep(instance, &options.sweep)?;
    let base_tree = WakeUpTree::from_itineraries(&base.itin)?;
    let base_makespan = instance.makespan(&base_tree)?;
    let mut report = GridReport {
        tree: base_tree,
        makespan: base_makespan,
        m,
        pixels: grid.pixels.len(),
        side: grid.side,
        representative_makespan: 0.0,
        enumerated: 0,
        fallback: true,
    };
    if grid.pixels.len() == 1 {
        return Ok(report);
    }

    let reps: Vec<usize> = grid.pixels.iter().map(|p| instance.site_of(p.representative)).collect();
    let k = reps.len();
    let mut dist = vec![0.0; k * k];
    for a in 0..k {
        for b in 0..k {
            dist[a * k + b] = instance.site_distance(reps[a], reps[b]);
        }
    }
    let cells = m * m;
    let cap: Vec<usize> = grid
        .pixels
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let r = p.robots.len();
            if i == 0 {
                r
            } else {
                (r + 1).min(cells - 1)
            }
        })
        .collect();
    let lm = log2(m.max(2) as f64);
    let path_cap = (ceil(options.c_b * lm * lm) as usize).max(3);

    let mut search = Enumeration {
        k,
        dist: &dist,
        cap: &cap,
        path_cap,
        keep: options.candidates.max(1),
        parent: vec![None; k],
        tau: vec![0.0; k],
        depth: vec![0; k],
        used: vec![0; k],
        added: vec![false; k],
        best: Vec::new(),
        nodes: 0,
        budget: options.node_budget,
        completed: 0,
    };
    search.added[0] = true;
    search.depth[0] = 1;
    search.dfs(1, (0.0, 0), 0.0);
    if search.nodes > search.budget {
        return Err(Error::Budget(format!(
            "representative-tree enumeration exceeded {} nodes; it grows as 2^O(m^2 log m) (m = {m})",
            options.node_budget
        )));
    }
    report.enumerated = search.completed;
    let Some(first) = search.best.first() else {
        return Ok(report);
    };
    report.representative_makespan = first.0;

    for (_, parent, tau) in &search.best {
        let tree = expand(instance, &grid, parent, tau, &options.sweep)?;
        let t = instance.makespan(&tree)?;
        if t < report.makespan - TOL {
            report.makespan = t;
            report.tree = tree;
            report.fallback = false;
        }
    }
    Ok(report)
}

type Candidate = (f64, Vec<Option<usize>>, Vec<f64>);

struct Enumeration<'a> {
    k: usize,
    dist: &'a [f64],
    cap: &'a [usize],
    path_cap: usize,
    keep: usize,
    parent: Vec<Option<usize>>,
    tau: Vec<f64>,
    depth: Vec<usize>,
    used: Vec<usize>,
    added: Vec<bool>,
    /// Best trees so far, ascending makespan.
    best: Vec<Candidate>,
    nodes: u64,
    budget: u64,
    completed: u64,
}

impl Enumeration<'_> {
    fn cutoff(&self) -> f64 {
        if self.best.len() < self.keep {
            f64::INFINITY
        } else {
            self.best[self.best.len() - 1].0
        }
    }

    /// Pixels join in increasing `(wake time, index)` order, so every tree is
    /// produced exactly once.
    fn dfs(&mut self, count: usize, last: (f64, usize), makespan: f64) {
        self.nodes += 1;
        if self.nodes > self.budget {
            return;
        }
        if makespan >= self.cutoff() - TOL {
            return;
        }
        if count == self.k {
            self.completed += 1;
            let entry = (makespan, self.parent.clone(), self.tau.clone());
            let pos = self.best.iter().position(|b| b.0 > makespan).unwrap_or(self.best.len());
            self.best.insert(pos, entry);
            self.best.truncate(self.keep);
            return;
        }
        for c in 0..self.k {
            if self.added[c] {
                continue;
            }
            for p in 0..self.k {
                if !self.added[p] || self.used[p] >= self.cap[p] || self.depth[p] >= self.path_cap {
                    continue;
                }
                let t = self.tau[p] + self.dist[p * self.k + c];
                if t < last.0 || (t == last.0 && c < last.1) {
                    continue;
                }
                self.added[c] = true;
                self.parent[c] = Some(p);
                self.tau[c] = t;
                self.depth[c] = self.depth[p] + 1;
                self.used[p] += 1;
                self.dfs(count + 1, (t, c), makespan.max(t));
                self.used[p] -= 1;
                self.parent[c] = None;
                self.added[c] = false;
                if self.nodes > self.budget {
                    return;
                }
            }
        }
    }
}

/// Turns a representative tree into a wake-up tree over all robots.
fn expand(
    instance: &Instance,
    grid: &PixelGrid,
    parent: &[Option<usize>],
    planned: &[f64],
    sweep_options: &SweepOptions,
) -> Result<WakeUpTree, Error> {
    let metric = match instance.environment() {
        Environment::Points { metric, .. } => *metric,
        _ => return Err(Error::Precondition("instance is not a point set".into())),
    };
    let coords = instance.coordinates().unwrap_or(&[]);
    let k = grid.pixels.len();
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (c, p) in parent.iter().enumerate().take(k) {
        if let Some(p) = *p {
            kids[p].push(c);
        }
    }
    for list in &mut kids {
        list.sort_by(|&a, &b| planned[a].total_cmp(&planned[b]).then(a.cmp(&b)));
    }

    let mut itin: Vec<Vec<RobotId>> = vec![Vec::new(); instance.robot_count()];
    let mut start = vec![0.0; k];
    let mut incoming: Vec<Option<RobotId>> = vec![None; k];
    let mut queue = VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        let pixel = &grid.pixels[p];
        let rep = pixel.representative;
        let rep_site = instance.site_of(rep);
        // local instance: the representative's site first, its robot first
        let mut sites = vec![rep_site];
        sites.extend(pixel.sites.iter().copied().filter(|&s| s != rep_site));
        let pts: Vec<Vec<f64>> = sites.iter().map(|&s| coords[s].clone()).collect();
        let counts: Vec<usize> = sites.iter().map(|&s| instance.robots_at(s).len()).collect();
        let local = Instance::points(2, &pts, 0, &counts, metric)?;
        let mut to_global = vec![rep];
        for (i, &s) in sites.iter().enumerate() {
            to_global.extend(instance.robots_at(s).iter().copied().filter(|&r| !(i == 0 && r == rep)));
        }
        let run = sweep(&local, sweep_options)?;

        let mut pool: Vec<(f64, usize, RobotId)> = Vec::new();
        if let Some(a) = incoming[p] {
            pool.push((start[p], rep_site, a));
        }
        for (l, list) in run.itin.iter().enumerate() {
            let g = to_global[l];
            itin[g.0].extend(list.iter().map(|r| to_global[r.0]));
            pool.push((start[p] + run.done[l], sites[run.rest[l]], g));
        }
        for &c in &kids[p] {
            let target = instance.site_of(grid.pixels[c].representative);
            let Some((i, arrival)) = pool
                .iter()
                .enumerate()
                .map(|(i, &(t, at, _))| (i, t + instance.site_distance(at, target)))
                .min_by(|a, b| a.1.total_cmp(&b.1).then(pool[a.0].2.cmp(&pool[b.0].2)))
            else {
                return Err(Error::Precondition(format!("pixel {p} has no robot left for a child")));
            };
            let (_, _, robot) = pool.swap_remove(i);
            itin[robot.0].push(grid.pixels[c].representative);
            start[c] = arrival;
            incoming[c] = Some(robot);
            queue.push_back(c);
        }
    }
    WakeUpTree::from_itineraries(&itin)
}
