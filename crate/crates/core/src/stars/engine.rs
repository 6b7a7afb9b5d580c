//! Event simulation at the center of a star.
//!
//! A robot decides where to go when it reaches the center; robots reaching the
//! center together decide in `(time, id)` order. Claiming spoke `s` sends the
//! robot down to leaf `s`, where it wakes every sleeper; the whole group then
//! walks back and reaches the center `2 ℓ(s)` after the claim.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::instance::{Instance, RobotId};
use crate::tree::{wake_colocated, WakeUpTree};
use crate::Error;

pub(crate) struct View<'a> {
    pub lengths: &'a [f64],
    pub robots: &'a [usize],
    pub claimed: &'a [bool],
}

impl View<'_> {
    /// Shortest unclaimed spoke among `candidates`; ties go to more robots,
    /// then to the lower index.
    pub fn shortest(&self, candidates: impl Iterator<Item = usize>) -> Option<usize> {
        candidates.filter(|&s| !self.claimed[s]).min_by(|&a, &b| {
            self.lengths[a]
                .total_cmp(&self.lengths[b])
                .then(self.robots[b].cmp(&self.robots[a]))
                .then(a.cmp(&b))
        })
    }

    /// Most populous unclaimed spoke among `candidates`, lowest index on ties.
    pub fn most_robots(&self, candidates: impl Iterator<Item = usize>) -> Option<usize> {
        candidates
            .filter(|&s| !self.claimed[s])
            .min_by(|&a, &b| self.robots[b].cmp(&self.robots[a]).then(a.cmp(&b)))
    }
}

pub(crate) trait Policy {
    /// `robot` stands at the center at `time`: the spoke it claims, or `None`
    /// to stop for good.
    fn choose(&mut self, view: &View<'_>, robot: RobotId, time: f64) -> Option<usize>;

    /// `group[0]` reached leaf `spoke` and woke the rest of `group`.
    fn arrived(&mut self, _spoke: usize, _group: &[RobotId]) {}
}

pub(crate) struct Run {
    pub tree: WakeUpTree,
    pub makespan: f64,
    /// Spokes nobody claimed (the simulation stopped with sleepers left).
    pub unclaimed: usize,
    /// Time each robot reached its final resting place.
    pub completion: Vec<f64>,
}

#[derive(PartialEq)]
struct Event(f64, RobotId);

impl Eq for Event {}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Runs `policy` with the spoke lengths `lengths` (usually the instance's own).
pub(crate) fn simulate(instance: &Instance, lengths: &[f64], policy: &mut dyn Policy) -> Result<Run, Error> {
    let spokes = instance
        .spokes()
        .ok_or_else(|| Error::Precondition("instance is not a star".into()))?;
    let robots: Vec<usize> = spokes.iter().map(|s| s.robots).collect();
    let n = instance.robot_count();
    let mut claimed = vec![false; spokes.len()];
    let mut itin: Vec<Vec<RobotId>> = vec![Vec::new(); n];
    let mut completion = vec![0.0; n];
    let mut makespan: f64 = 0.0;
    let mut queue = BinaryHeap::new();
    queue.push(Event(0.0, RobotId::SOURCE));
    while let Some(Event(time, robot)) = queue.pop() {
        let view = View {
            lengths,
            robots: &robots,
            claimed: &claimed,
        };
        let Some(s) = policy.choose(&view, robot, time) else {
            continue;
        };
        if claimed[s] {
            return Err(Error::Precondition("policy claimed a spoke twice".into()));
        }
        claimed[s] = true;
        let arrival = time + lengths[s];
        makespan = makespan.max(arrival);
        let here = instance.robots_at(s + 1);
        itin[robot.0].push(here[0]);
        let group = wake_colocated(&mut itin, &[robot, here[0]], &here[1..]);
        for &r in &group {
            completion[r.0] = arrival;
            queue.push(Event(arrival + lengths[s], r));
        }
        policy.arrived(s, &group);
    }
    let unclaimed = claimed.iter().filter(|c| !**c).count();
    let tree = if unclaimed == 0 {
        WakeUpTree::from_itineraries(&itin)?
    } else {
        WakeUpTree::from_parents(vec![None; n])
    };
    Ok(Run {
        tree,
        makespan,
        unclaimed,
        completion,
    })
}
