//! Online cascade: breadth-first search simulated locally at every vertex.
//!
//! Robots only see edges at vertices that have been visited. Each visited
//! vertex keeps a table of its incident edges, lightest first, marking which
//! neighbors are still unknown. An idle robot at `x`
//!
//!  1. claims the first unknown neighbor of `x`, else
//!  2. walks to a tree child of `x` that asked for help, else
//!  3. walks up to the vertex `x` was discovered from (at the source: stops).
//!
//! When a robot discovers `y` from `x`, it wakes the robots at `y`. As many of
//! the group as `x` still has unknown neighbors walk back to `x` (the waker
//! first), but one robot stays if `y` has unknown neighbors of its own. The
//! robots walking back tell `x` how many more robots `y` could use. The
//! workforce at a vertex thus doubles until its neighborhood is covered.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{adjacency, delta_g, rho_max};
use crate::instance::{Instance, RobotId};
use crate::tree::{wake_colocated, WakeUpTree};
use crate::Error;

/// Constant in the competitive bound `C_ONLINE · (1 + log2(1 + Δ_G))`.
///
/// Measured on random locally bounded graphs with at most nine robots and
/// frozen at the smallest value covering the suite.
pub const C_ONLINE: f64 = 2.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OnlineOptions {
    /// Fail on the first query outside the robots' view instead of counting it.
    pub enforce_view: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OnlineReport {
    pub tree: WakeUpTree,
    pub makespan: f64,
    /// Time at which the simulated robots finished waking everyone; the tree
    /// replaces walks by shortest paths, so `makespan` never exceeds it.
    pub simulated: f64,
    pub edge_queries: u64,
    pub out_of_view_queries: u64,
    pub delta_g: f64,
    pub rho_max: f64,
}

/// Adjacency access limited to visited vertices, with a query log.
pub struct OnlineView<'a> {
    adjacency: &'a [Vec<(usize, f64)>],
    visited: Vec<bool>,
    enforce: bool,
    pub queries: u64,
    pub out_of_view: u64,
}

impl<'a> OnlineView<'a> {
    pub fn new(adjacency: &'a [Vec<(usize, f64)>], enforce: bool) -> Self {
        OnlineView {
            adjacency,
            visited: vec![false; adjacency.len()],
            enforce,
            queries: 0,
            out_of_view: 0,
        }
    }

    pub fn visit(&mut self, v: usize) {
        self.visited[v] = true;
    }

    pub fn is_visited(&self, v: usize) -> bool {
        self.visited[v]
    }

    /// Edges at `v`, lightest first.
    pub fn incident(&mut self, v: usize) -> Result<&'a [(usize, f64)], Error> {
        self.queries += 1;
        if !self.visited[v] {
            self.out_of_view += 1;
            if self.enforce {
                return Err(Error::Precondition(format!("edge query at unvisited vertex {v}")));
            }
        }
        Ok(&self.adjacency[v])
    }
}

pub fn online_cascade(instance: &Instance) -> Result<WakeUpTree, Error> {
    Ok(online_cascade_with(instance, &OnlineOptions::default())?.tree)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Unknown,
    Claimed,
    Awake,
}

struct Entry {
    to: usize,
    weight: f64,
    status: Status,
}

#[derive(Clone, Copy, PartialEq)]
enum Action {
    Idle,
    /// Claimed `to` from `from`, which then had `left` unknown neighbors.
    Discover { from: usize, left: usize },
    /// Walked back to report that a child needs `help` more robots.
    Report { child: usize, help: usize },
}

#[derive(PartialEq)]
struct Event {
    time: f64,
    robot: RobotId,
    at: usize,
    action: Action,
}

impl Eq for Event {}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        other.time.total_cmp(&self.time).then(other.robot.cmp(&self.robot))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Sim<'a> {
    instance: &'a Instance,
    view: OnlineView<'a>,
    table: Vec<Vec<Entry>>,
    parent: Vec<Option<usize>>,
    help: Vec<Vec<(usize, usize)>>,
    itin: Vec<Vec<RobotId>>,
    queue: BinaryHeap<Event>,
    finished: f64,
}

pub fn online_cascade_with(instance: &Instance, options: &OnlineOptions) -> Result<OnlineReport, Error> {
    let adj = adjacency(instance)?;
    let n = instance.robot_count();
    let mut sim = Sim {
        instance,
        view: OnlineView::new(adj, options.enforce_view),
        table: (0..adj.len()).map(|_| Vec::new()).collect(),
        parent: vec![None; adj.len()],
        help: vec![Vec::new(); adj.len()],
        itin: vec![Vec::new(); n],
        queue: BinaryHeap::new(),
        finished: 0.0,
    };
    let src = instance.source_site();
    sim.open(src, None)?;
    let at_src = instance.robots_at(src);
    let group = wake_colocated(&mut sim.itin, &[RobotId::SOURCE], &at_src[1..]);
    for r in group {
        sim.push(0.0, r, src, Action::Idle);
    }
    while let Some(ev) = sim.queue.pop() {
        sim.handle(ev)?;
    }
    let tree = WakeUpTree::from_itineraries(&sim.itin)?;
    let makespan = instance.makespan(&tree)?;
    Ok(OnlineReport {
        tree,
        makespan,
        simulated: sim.finished,
        edge_queries: sim.view.queries,
        out_of_view_queries: sim.view.out_of_view,
        delta_g: delta_g(instance)?,
        rho_max: rho_max(instance)?,
    })
}

impl Sim<'_> {
    fn push(&mut self, time: f64, robot: RobotId, at: usize, action: Action) {
        self.queue.push(Event {
            time,
            robot,
            at,
            action,
        });
    }

    /// First visit of `v`: read its edges into a table.
    fn open(&mut self, v: usize, from: Option<usize>) -> Result<(), Error> {
        self.view.visit(v);
        self.parent[v] = from;
        let edges = self.view.incident(v)?;
        self.table[v] = edges
            .iter()
            .map(|&(to, weight)| Entry {
                to,
                weight,
                status: if Some(to) == from { Status::Awake } else { Status::Unknown },
            })
            .collect();
        Ok(())
    }

    fn unknown(&self, v: usize) -> usize {
        self.table[v].iter().filter(|e| e.status == Status::Unknown).count()
    }

    fn weight(&self, from: usize, to: usize) -> f64 {
        self.table[from]
            .iter()
            .find(|e| e.to == to)
            .map(|e| e.weight)
            .expect("walks only follow known edges")
    }

    fn mark(&mut self, at: usize, other: usize, status: Status) {
        if let Some(e) = self.table[at].iter_mut().find(|e| e.to == other) {
            e.status = status;
        }
    }

    fn handle(&mut self, ev: Event) -> Result<(), Error> {
        let Event {
            time,
            robot,
            at,
            action,
        } = ev;
        match action {
            Action::Idle => self.idle(time, robot, at),
            Action::Report { child, help } => {
                if help > 0 {
                    match self.help[at].iter_mut().find(|(c, _)| *c == child) {
                        Some(h) => h.1 = h.1.max(help),
                        None => self.help[at].push((child, help)),
                    }
                }
                self.idle(time, robot, at)
            }
            Action::Discover { from, left } => {
                if self.view.is_visited(at) {
                    // someone else got here first: walk back and carry on
                    // where the robot came from
                    self.mark(at, from, Status::Awake);
                    let w = self.weight(at, from);
                    self.push(time + w, robot, from, Action::Idle);
                    return Ok(());
                }
                self.open(at, Some(from))?;
                let here = self.instance.robots_at(at);
                let group = match here.first() {
                    Some(&first) => {
                        self.itin[robot.0].push(first);
                        self.finished = self.finished.max(time);
                        wake_colocated(&mut self.itin, &[robot, first], &here[1..])
                    }
                    None => vec![robot],
                };
                let need = self.unknown(at);
                let keep_one = usize::from(need > 0);
                let back = left.min(group.len() - keep_one);
                let help = need.saturating_sub(group.len() - back);
                let w = self.weight(at, from);
                for (i, &r) in group.iter().enumerate() {
                    if i < back {
                        self.push(time + w, r, from, Action::Report { child: at, help });
                    } else {
                        self.push(time, r, at, Action::Idle);
                    }
                }
                Ok(())
            }
        }
    }

    fn idle(&mut self, time: f64, robot: RobotId, at: usize) -> Result<(), Error> {
        if let Some(k) = self.table[at].iter().position(|e| e.status == Status::Unknown) {
            self.table[at][k].status = Status::Claimed;
            let to = self.table[at][k].to;
            let w = self.table[at][k].weight;
            let left = self.unknown(at);
            self.push(time + w, robot, to, Action::Discover { from: at, left });
            return Ok(());
        }
        if let Some(h) = self.help[at].iter_mut().find(|h| h.1 > 0) {
            h.1 -= 1;
            let child = h.0;
            let w = self.weight(at, child);
            self.push(time + w, robot, child, Action::Idle);
            return Ok(());
        }
        if let Some(p) = self.parent[at] {
            let w = self.weight(at, p);
            self.push(time + w, robot, p, Action::Idle);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{adversary_family, bfs_wakeup};

    #[test]
    fn path_matches_bfs() {
        let g = Instance::graph(4, &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0)], 0, &[1, 1, 1, 1]).unwrap();
        let r = online_cascade_with(&g, &OnlineOptions { enforce_view: true }).unwrap();
        assert_eq!(r.makespan, g.makespan(&bfs_wakeup(&g).unwrap()).unwrap());
        assert_eq!(r.out_of_view_queries, 0);
    }

    #[test]
    fn unit_star_of_eight() {
        let edges: Vec<(usize, usize, f64)> = (1..=8).map(|v| (0, v, 1.0)).collect();
        let g = Instance::graph(9, &edges, 0, &[1; 9]).unwrap();
        let r = online_cascade_with(&g, &OnlineOptions { enforce_view: true }).unwrap();
        assert!(r.tree.validate(&g).is_ok());
        // doubling at the center: 1, 2, 4 robots leave at times 0, 2, 4
        assert_eq!(r.makespan, 7.0);
        assert_eq!(r.delta_g, 8.0);
    }

    #[test]
    fn adversary_slower_when_heavy_is_last() {
        let first = online_cascade(&adversary_family(8, 0.1, 0).unwrap()).unwrap();
        let last_inst = adversary_family(8, 0.1, 7).unwrap();
        let last = online_cascade(&last_inst).unwrap();
        let first_inst = adversary_family(8, 0.1, 0).unwrap();
        assert!(last_inst.makespan(&last).unwrap() > first_inst.makespan(&first).unwrap());
    }

    #[test]
    fn cross_edges_do_not_strand_a_subtree() {
        let edges = [(0, 1, 1.5), (0, 2, 1.89), (1, 3, 1.65), (1, 4, 1.87), (0, 5, 1.65), (1, 2, 1.01)];
        let g = Instance::graph(6, &edges, 0, &[1, 0, 0, 1, 0, 1]).unwrap();
        let r = online_cascade_with(&g, &OnlineOptions { enforce_view: true }).unwrap();
        assert!(r.tree.validate(&g).is_ok());
    }

    #[test]
    fn robotless_vertices_are_crossed() {
        let g = Instance::graph(4, &[(0, 1, 1.0), (1, 2, 1.0), (1, 3, 1.0)], 0, &[1, 0, 1, 1]).unwrap();
        let r = online_cascade(&g).unwrap();
        assert!(r.validate(&g).is_ok());
    }
}
