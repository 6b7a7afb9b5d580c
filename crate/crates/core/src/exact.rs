//! Branch-and-bound optimum for desk-scale instances.
//!
//! The search works on sites rather than individual robots. Robots sharing a
//! site wake each other at no cost, so reaching a site releases all of its
//! sleepers at the arrival time. The robot that becomes idle first (ties by
//! id) either claims an unclaimed site or stops for good. Forcing a claim
//! would lose optima: a robot freed early may be a worse choice for the last
//! site than one that frees up later but nearby.
//!
//! Pruning uses the bound `max(current makespan, max over unclaimed sites of
//! the earliest possible arrival)`. Interchangeable sites (same population and
//! the same distance to every other site) are only branched on through their
//! lowest index, and idle robots standing on the same spot at the same time
//! claim sites in increasing index order.

use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{Instance, Kind, RobotId};
use crate::tree::{wake_colocated, WakeUpTree};
use crate::{Error, TOL};

/// Search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest robot count accepted; bigger instances are a capacity error.
    pub max_robots: usize,
    /// Search nodes expanded before giving up with the incumbent.
    pub max_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_robots: 10,
            max_nodes: u64::MAX,
        }
    }
}

/// Result of an exact search.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub tree: WakeUpTree,
    pub makespan: f64,
    /// `false` when the search stopped early; `tree` is then the best found.
    pub optimal: bool,
    pub nodes: u64,
}

/// Minimum-makespan wake-up tree.
pub fn solve_optimal(instance: &Instance, limits: &Limits) -> Result<Solution, Error> {
    solve_optimal_with(instance, limits, &mut || false)
}

/// As [`solve_optimal`], polling `stop` every few thousand nodes. A `true`
/// answer ends the search with the incumbent flagged as not optimal.
pub fn solve_optimal_with(
    instance: &Instance,
    limits: &Limits,
    stop: &mut dyn FnMut() -> bool,
) -> Result<Solution, Error> {
    check_capacity(instance, limits)?;
    Search::new(instance, limits, stop, None).run()
}

/// Optimum on a star whose leaves all carry the same number of robots.
///
/// Only trees whose spoke lengths never decrease along a root-to-leaf path are
/// explored; such a tree is always among the optima on these stars.
pub fn solve_optimal_equal_star(instance: &Instance, limits: &Limits) -> Result<Solution, Error> {
    let spokes = instance
        .spokes()
        .ok_or_else(|| Error::Precondition("instance is not a star".into()))?;
    if spokes.windows(2).any(|w| w[0].robots != w[1].robots) {
        return Err(Error::Precondition("leaves carry different robot counts".into()));
    }
    check_capacity(instance, limits)?;
    let mut level = vec![0.0];
    level.extend(spokes.iter().map(|s| s.length));
    Search::new(instance, limits, &mut || false, Some(level)).run()
}

fn check_capacity(instance: &Instance, limits: &Limits) -> Result<(), Error> {
    let n = instance.robot_count();
    if n > limits.max_robots {
        return Err(Error::Capacity {
            robots: n,
            limit: limits.max_robots,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
struct Idle {
    time: f64,
    loc: usize,
    robot: RobotId,
    /// Smallest choice this robot may make; `retire` means it must stop.
    floor: usize,
}

struct Search<'a> {
    instance: &'a Instance,
    /// Local index 0 is the source site, `i >= 1` is `sites[i - 1]`.
    sites: Vec<usize>,
    dist: Vec<f64>,
    width: usize,
    class: Vec<usize>,
    /// Spoke length per local site when the nondecreasing restriction applies.
    level: Option<Vec<f64>>,
    idle: Vec<Idle>,
    claimed: Vec<bool>,
    open: usize,
    claims: Vec<(RobotId, usize)>,
    best: f64,
    best_claims: Vec<(RobotId, usize)>,
    nodes: u64,
    max_nodes: u64,
    stop: &'a mut dyn FnMut() -> bool,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(
        instance: &'a Instance,
        limits: &Limits,
        stop: &'a mut dyn FnMut() -> bool,
        level: Option<Vec<f64>>,
    ) -> Self {
        let src = instance.source_site();
        let sites: Vec<usize> = instance.occupied_sites().filter(|&s| s != src).collect();
        let width = sites.len() + 1;
        let site = |i: usize| if i == 0 { src } else { sites[i - 1] };
        let mut dist = vec![0.0; width * width];
        for a in 0..width {
            for b in 0..width {
                dist[a * width + b] = instance.site_distance(site(a), site(b));
            }
        }
        let mut class: Vec<usize> = (0..width).collect();
        for j in 1..width {
            for i in 1..j {
                if class[i] != i {
                    continue;
                }
                let same_count = instance.robots_at(site(i)).len() == instance.robots_at(site(j)).len();
                let same_dist = (0..width)
                    .filter(|&x| x != i && x != j)
                    .all(|x| dist[i * width + x] == dist[j * width + x]);
                if same_count && same_dist {
                    class[j] = i;
                    break;
                }
            }
        }
        let mut claimed = vec![false; width];
        claimed[0] = true;
        Search {
            instance,
            sites,
            dist,
            width,
            class,
            level,
            idle: Vec::new(),
            claimed,
            open: width - 1,
            claims: Vec::new(),
            best: f64::INFINITY,
            best_claims: Vec::new(),
            nodes: 0,
            max_nodes: limits.max_nodes,
            stop,
            aborted: false,
        }
    }

    fn retire(&self) -> usize {
        self.width
    }

    fn d(&self, a: usize, b: usize) -> f64 {
        self.dist[a * self.width + b]
    }

    fn robots_at_local(&self, loc: usize) -> &'a [RobotId] {
        let site = if loc == 0 {
            self.instance.source_site()
        } else {
            self.sites[loc - 1]
        };
        self.instance.robots_at(site)
    }

    fn initial_idle(&self) -> Vec<Idle> {
        self.robots_at_local(0)
            .iter()
            .map(|&robot| Idle {
                time: 0.0,
                loc: 0,
                robot,
                floor: 1,
            })
            .collect()
    }

    fn run(mut self) -> Result<Solution, Error> {
        self.greedy_incumbent();
        self.idle = self.initial_idle();
        self.dfs(0.0);
        let tree = self.build_tree(&self.best_claims)?;
        let makespan = self.instance.makespan(&tree)?;
        Ok(Solution {
            tree,
            makespan,
            optimal: !self.aborted,
            nodes: self.nodes,
        })
    }

    fn earliest(idle: &[Idle]) -> Option<usize> {
        (0..idle.len()).min_by(|&a, &b| {
            idle[a]
                .time
                .total_cmp(&idle[b].time)
                .then(idle[a].robot.cmp(&idle[b].robot))
        })
    }

    fn greedy_incumbent(&mut self) {
        let mut idle = self.initial_idle();
        let mut claimed = self.claimed.clone();
        let mut claims = Vec::new();
        let mut makespan: f64 = 0.0;
        while let Some(i) = Self::earliest(&idle) {
            let r = idle.swap_remove(i);
            let target = (1..self.width)
                .filter(|&s| !claimed[s])
                .min_by(|&a, &b| self.d(r.loc, a).total_cmp(&self.d(r.loc, b)));
            let Some(s) = target else { continue };
            claimed[s] = true;
            let arrival = r.time + self.d(r.loc, s);
            makespan = makespan.max(arrival);
            claims.push((r.robot, s));
            for &robot in core::iter::once(&r.robot).chain(self.robots_at_local(s)) {
                idle.push(Idle {
                    time: arrival,
                    loc: s,
                    robot,
                    floor: 1,
                });
            }
        }
        self.best = makespan;
        self.best_claims = claims;
    }

    fn dfs(&mut self, current: f64) {
        self.nodes += 1;
        if self.nodes >= self.max_nodes || (self.nodes & 0xfff == 0 && (self.stop)()) {
            self.aborted = true;
        }
        if self.aborted {
            return;
        }
        if self.open == 0 {
            if current < self.best - TOL {
                self.best = current;
                self.best_claims = self.claims.clone();
            }
            return;
        }
        let mut bound = current;
        for s in 1..self.width {
            if self.claimed[s] {
                continue;
            }
            let reach = self
                .idle
                .iter()
                .map(|r| r.time + self.d(r.loc, s))
                .fold(f64::INFINITY, f64::min);
            bound = bound.max(reach);
        }
        if bound >= self.best - TOL {
            return;
        }
        let Some(i) = Self::earliest(&self.idle) else {
            return;
        };
        let r = self.idle[i];

        let mut options: Vec<(f64, usize)> = Vec::new();
        for s in r.floor.max(1)..self.width {
            if self.claimed[s] {
                continue;
            }
            let c = self.class[s];
            if (c..s).any(|x| self.class[x] == c && !self.claimed[x]) {
                continue;
            }
            if let Some(level) = &self.level {
                if level[s] < level[r.loc] {
                    continue;
                }
            }
            options.push((r.time + self.d(r.loc, s), s));
        }
        options.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        for (arrival, s) in options {
            self.idle.remove(i);
            let saved = self.raise_floors(&r, s + 1);
            let base = self.idle.len();
            for &robot in core::iter::once(&r.robot).chain(self.robots_at_local(s)) {
                self.idle.push(Idle {
                    time: arrival,
                    loc: s,
                    robot,
                    floor: 1,
                });
            }
            self.claimed[s] = true;
            self.open -= 1;
            self.claims.push((r.robot, s));

            self.dfs(current.max(arrival));

            self.claims.pop();
            self.open += 1;
            self.claimed[s] = false;
            self.idle.truncate(base);
            self.restore_floors(saved);
            self.idle.insert(i, r);
            if self.aborted {
                return;
            }
        }

        if self.idle.len() > 1 && r.floor <= self.retire() {
            self.idle.remove(i);
            let saved = self.raise_floors(&r, self.retire());
            self.dfs(current);
            self.restore_floors(saved);
            self.idle.insert(i, r);
        }
    }

    /// Robots identical to `r` (same time and place) must choose at least `floor`.
    fn raise_floors(&mut self, r: &Idle, floor: usize) -> Vec<(usize, usize)> {
        let mut saved = Vec::new();
        for (k, other) in self.idle.iter_mut().enumerate() {
            if other.loc == r.loc && other.time == r.time && other.floor < floor {
                saved.push((k, other.floor));
                other.floor = floor;
            }
        }
        saved
    }

    fn restore_floors(&mut self, saved: Vec<(usize, usize)>) {
        for (k, floor) in saved {
            self.idle[k].floor = floor;
        }
    }

    fn build_tree(&self, claims: &[(RobotId, usize)]) -> Result<WakeUpTree, Error> {
        let n = self.instance.robot_count();
        let mut itin = vec![Vec::new(); n];
        let at_source: Vec<RobotId> = self
            .robots_at_local(0)
            .iter()
            .copied()
            .filter(|&r| r != RobotId::SOURCE)
            .collect();
        wake_colocated(&mut itin, &[RobotId::SOURCE], &at_source);
        for &(robot, s) in claims {
            let here = self.robots_at_local(s);
            itin[robot.0].push(here[0]);
            wake_colocated(&mut itin, &[robot, here[0]], &here[1..]);
        }
        WakeUpTree::from_itineraries(&itin)
    }
}

/// Whether `instance` is a star with the same robot count on every leaf.
pub fn is_equal_star(instance: &Instance) -> bool {
    instance.kind() == Kind::Star
        && instance
            .spokes()
            .is_some_and(|s| s.windows(2).all(|w| w[0].robots == w[1].robots))
}
