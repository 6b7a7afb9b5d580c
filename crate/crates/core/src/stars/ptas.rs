//! Approximation scheme for stars with equal leaf populations.
//!
//! `T` is `3/7` of the [`sef`](super::sef) makespan, a lower bound on the
//! optimum. Spokes no longer than `eps T` are short; the others are long and
//! their lengths are rounded up to multiples of `eps² T`. Start times of long
//! spokes are enumerated on the same grid. Long spokes starting at the same
//! moment a previous long spoke's group gets back to the center hang below
//! that spoke (at most `q + 1` of them), so each configuration is a forest of
//! long-spoke subtrees with root start times `S_1 <= ... <= S_p`. Short spokes
//! are filled in by the generalized greedy rule, which also decides when each
//! subtree is entered. The best simulated configuration wins; the plain
//! Shortest-Edge-First tree is always a candidate.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::engine::{simulate, Policy, View};
use super::{lengths, uniform_spokes};
use crate::instance::{Instance, RobotId};
use crate::math::ceil;
use crate::tree::WakeUpTree;
use crate::{Error, TOL};

/// Constant in the guarantee `makespan <= (1 + C_PTAS eps) · optimum`.
///
/// Measured with `eps = 0.25` on random stars with at most nine robots and
/// frozen at the smallest value covering the suite.
pub const C_PTAS: f64 = 1.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PtasOptions {
    pub epsilon: f64,
    /// Accept `epsilon < 0.2`; the enumeration grows very quickly below that.
    pub allow_small_epsilon: bool,
    /// Enumeration nodes before giving up.
    pub node_budget: u64,
}

impl PtasOptions {
    pub fn new(epsilon: f64) -> Self {
        PtasOptions {
            epsilon,
            allow_small_epsilon: false,
            node_budget: 250_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PtasReport {
    pub tree: WakeUpTree,
    pub makespan: f64,
    /// Makespan of the Shortest-Edge-First tree used for `T`.
    pub sef_makespan: f64,
    pub long_spokes: usize,
    /// Configurations simulated, the plain greedy one excluded.
    pub configurations: u64,
    /// Whether the winner came from the enumeration rather than plain SEF.
    pub improved: bool,
}

/// [`star_ptas_with`] with default options.
pub fn star_ptas(instance: &Instance, epsilon: f64) -> Result<WakeUpTree, Error> {
    Ok(star_ptas_with(instance, &PtasOptions::new(epsilon))?.tree)
}

pub fn star_ptas_with(instance: &Instance, options: &PtasOptions) -> Result<PtasReport, Error> {
    let eps = options.epsilon;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Parameter(format!("epsilon must lie in (0, 1], got {eps}")));
    }
    if eps < 0.2 && !options.allow_small_epsilon {
        return Err(Error::Parameter(format!(
            "epsilon {eps} is below the desk-scale floor 0.2; pass the override to run it"
        )));
    }
    let spokes = uniform_spokes(instance)?;
    let lens = lengths(spokes);
    let sef_run = simulate(instance, &lens, &mut Sef)?;
    let mut report = PtasReport {
        tree: sef_run.tree,
        makespan: sef_run.makespan,
        sef_makespan: sef_run.makespan,
        long_spokes: 0,
        configurations: 0,
        improved: false,
    };
    if sef_run.makespan <= 0.0 {
        return Ok(report);
    }
    let t_low = 3.0 / 7.0 * sef_run.makespan;
    let grid = eps * eps * t_low;
    let q = spokes.first().map_or(0, |s| s.robots);

    let mut short: Vec<usize> = (0..spokes.len()).filter(|&s| lens[s] <= eps * t_low).collect();
    short.sort_by(|&a, &b| lens[a].total_cmp(&lens[b]).then(a.cmp(&b)));
    let mut long: Vec<(u32, usize)> = (0..spokes.len())
        .filter(|&s| lens[s] > eps * t_low)
        .map(|s| (ceil(lens[s] / grid - TOL) as u32, s))
        .collect();
    long.sort_by(|a, b| a.0.cmp(&b.0).then(lens[a.1].total_cmp(&lens[b.1])).then(a.1.cmp(&b.1)));
    report.long_spokes = long.len();
    if long.is_empty() {
        return Ok(report);
    }

    // distinct rounded lengths with the spokes of each, shortest original first
    let mut units: Vec<u32> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for &(u, s) in &long {
        if units.last() != Some(&u) {
            units.push(u);
            members.push(Vec::new());
        }
        members.last_mut().unwrap().push(s);
    }

    let mut search = Enumeration {
        instance,
        lens: &lens,
        short: &short,
        units: &units,
        members: &members,
        q,
        grid,
        slack: 2.0 * eps * t_low,
        max_roots: 1 + q * short.len(),
        remaining: members.iter().map(Vec::len).collect(),
        placements: Vec::new(),
        capacity: Vec::new(),
        roots: 0,
        best: report.makespan,
        best_tree: None,
        configurations: 0,
        nodes: 0,
        budget: options.node_budget,
        over_budget: false,
    };
    search.slot(0)?;
    if search.over_budget {
        return Err(Error::Budget(format!(
            "star PTAS enumeration exceeded {} nodes; the configuration space grows as n^O(1/eps^4) (eps = {eps}, n = {})",
            options.node_budget,
            instance.robot_count()
        )));
    }
    report.configurations = search.configurations;
    if let Some(tree) = search.best_tree {
        report.tree = tree;
        report.makespan = search.best;
        report.improved = true;
    }
    Ok(report)
}

struct Sef;

impl Policy for Sef {
    fn choose(&mut self, view: &View<'_>, _: RobotId, _: f64) -> Option<usize> {
        view.shortest(0..view.claimed.len())
    }
}

#[derive(Clone, Copy, Debug)]
struct Placement {
    slot: u32,
    class: usize,
    parent: Option<usize>,
}

struct Enumeration<'a> {
    instance: &'a Instance,
    lens: &'a [f64],
    short: &'a [usize],
    units: &'a [u32],
    members: &'a [Vec<usize>],
    q: usize,
    grid: f64,
    slack: f64,
    max_roots: usize,
    remaining: Vec<usize>,
    placements: Vec<Placement>,
    /// Free child positions per slot: placements returning then, with room left.
    capacity: Vec<Vec<(usize, usize)>>,
    roots: usize,
    best: f64,
    best_tree: Option<WakeUpTree>,
    configurations: u64,
    nodes: u64,
    budget: u64,
    over_budget: bool,
}

impl Enumeration<'_> {
    fn slot(&mut self, slot: u32) -> Result<(), Error> {
        if self.over_budget {
            return Ok(());
        }
        if self.remaining.iter().all(|&r| r == 0) {
            return self.evaluate();
        }
        // nothing can start early enough to beat the incumbent any more
        let shortest_left = (0..self.units.len())
            .filter(|&c| self.remaining[c] > 0)
            .map(|c| self.units[c])
            .min()
            .unwrap_or(0);
        if (slot + shortest_left) as f64 * self.grid >= self.best - TOL {
            return Ok(());
        }
        let mut counts = vec![0usize; self.units.len()];
        self.choose(slot, self.units.len(), &mut counts)
    }

    /// Picks how many spokes of each class (from the longest down) start at
    /// `slot`, then moves on to the next slot.
    fn choose(&mut self, slot: u32, class: usize, counts: &mut Vec<usize>) -> Result<(), Error> {
        if class == 0 {
            return self.place(slot, counts);
        }
        let c = class - 1;
        let mut max = self.remaining[c];
        while max > 0 && (slot + self.units[c]) as f64 * self.grid >= self.best - TOL {
            max = 0;
        }
        for k in 0..=max {
            counts[c] = k;
            self.choose(slot, c, counts)?;
            if self.over_budget {
                break;
            }
        }
        counts[c] = 0;
        Ok(())
    }

    fn place(&mut self, slot: u32, counts: &[usize]) -> Result<(), Error> {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.over_budget = true;
            return Ok(());
        }
        let total: usize = counts.iter().sum();
        let free: usize = self
            .capacity
            .get(slot as usize)
            .map_or(0, |v| v.iter().map(|&(_, room)| room).sum());
        let children = total.min(free);
        let new_roots = total - children;
        if (slot == 0 && new_roots > 1) || self.roots + new_roots > self.max_roots {
            return Ok(());
        }

        let mark = self.placements.len();
        let saved_capacity = self.capacity.get(slot as usize).cloned();
        let mut parents: Vec<(usize, usize)> = saved_capacity.clone().unwrap_or_default();
        let mut assigned = 0;
        // longer classes take the child positions first
        for c in (0..counts.len()).rev() {
            for _ in 0..counts[c] {
                let parent = if assigned < children {
                    let p = parents.iter_mut().find(|(_, room)| *room > 0).unwrap();
                    p.1 -= 1;
                    assigned += 1;
                    Some(p.0)
                } else {
                    None
                };
                self.placements.push(Placement { slot, class: c, parent });
            }
            self.remaining[c] -= counts[c];
        }
        self.roots += new_roots;
        if let Some(v) = self.capacity.get_mut(slot as usize) {
            *v = parents;
        }
        for idx in mark..self.placements.len() {
            let p = self.placements[idx];
            let back = (slot + 2 * self.units[p.class]) as usize;
            if self.capacity.len() <= back {
                self.capacity.resize(back + 1, Vec::new());
            }
            self.capacity[back].push((idx, self.q + 1));
        }

        let result = self.slot(slot + 1);

        for idx in (mark..self.placements.len()).rev() {
            let p = self.placements[idx];
            let back = (slot + 2 * self.units[p.class]) as usize;
            self.capacity[back].pop();
        }
        if let Some(saved) = saved_capacity {
            self.capacity[slot as usize] = saved;
        }
        self.roots -= new_roots;
        for (c, &k) in counts.iter().enumerate() {
            self.remaining[c] += k;
        }
        self.placements.truncate(mark);
        result
    }

    fn evaluate(&mut self) -> Result<(), Error> {
        self.configurations += 1;
        // hand out real spokes: within a class, earlier starts get shorter spokes
        let mut order: Vec<usize> = (0..self.placements.len()).collect();
        order.sort_by_key(|&i| (self.placements[i].slot, i));
        let mut next = vec![0usize; self.members.len()];
        let mut spoke_of = vec![0usize; self.placements.len()];
        for &i in &order {
            let c = self.placements[i].class;
            spoke_of[i] = self.members[c][next[c]];
            next[c] += 1;
        }
        let m = self.lens.len();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut roots: Vec<usize> = Vec::new();
        let mut starts: Vec<f64> = Vec::new();
        for &i in &order {
            let p = self.placements[i];
            match p.parent {
                Some(parent) => children[spoke_of[parent]].push(spoke_of[i]),
                None => {
                    roots.push(spoke_of[i]);
                    starts.push(p.slot as f64 * self.grid);
                }
            }
        }
        let mut policy = Generalized {
            short: self.short,
            roots: &roots,
            starts: &starts,
            slack: self.slack,
            next_subtree: 0,
            children: &children,
            assigned: vec![Assignment::Short; self.instance.robot_count()],
        };
        let run = simulate(self.instance, self.lens, &mut policy)?;
        if run.unclaimed == 0 && run.makespan < self.best - TOL {
            self.best = run.makespan;
            self.best_tree = Some(run.tree);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Assignment {
    /// Follows the generalized greedy rule.
    Short,
    /// Takes this long spoke next.
    Long(usize),
    Rest,
}

struct Generalized<'a> {
    short: &'a [usize],
    roots: &'a [usize],
    starts: &'a [f64],
    slack: f64,
    next_subtree: usize,
    children: &'a [Vec<usize>],
    assigned: Vec<Assignment>,
}

impl Policy for Generalized<'_> {
    fn choose(&mut self, view: &View<'_>, robot: RobotId, time: f64) -> Option<usize> {
        match self.assigned[robot.0] {
            Assignment::Long(s) => return Some(s),
            Assignment::Rest => return None,
            Assignment::Short => {}
        }
        let i = self.next_subtree;
        let p = self.roots.len();
        if i < p && time >= self.starts[i] + self.slack - TOL {
            self.next_subtree += 1;
            return Some(self.roots[i]);
        }
        if let Some(s) = view.shortest(self.short.iter().copied()) {
            return Some(s);
        }
        if i < p {
            self.next_subtree += 1;
            return Some(self.roots[i]);
        }
        None
    }

    fn arrived(&mut self, spoke: usize, group: &[RobotId]) {
        let kids = &self.children[spoke];
        let in_subtree = self.assigned[group[0].0] != Assignment::Short;
        let long_root = self.roots.contains(&spoke);
        if !(in_subtree || long_root) {
            return;
        }
        for (k, r) in group.iter().enumerate() {
            self.assigned[r.0] = match kids.get(k) {
                Some(&s) => Assignment::Long(s),
                None => Assignment::Rest,
            };
        }
    }
}
