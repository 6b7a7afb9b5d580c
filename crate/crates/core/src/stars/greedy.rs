use alloc::vec::Vec;

use super::engine::{simulate, Policy, View};
use super::{lengths, spokes, uniform_spokes};
use crate::instance::{Instance, RobotId};
use crate::tree::WakeUpTree;
use crate::{Error, TOL};

struct MostRobots;

impl Policy for MostRobots {
    fn choose(&mut self, view: &View<'_>, _: RobotId, _: f64) -> Option<usize> {
        view.most_robots(0..view.claimed.len())
    }
}

struct ShortestEdge;

impl Policy for ShortestEdge {
    fn choose(&mut self, view: &View<'_>, _: RobotId, _: f64) -> Option<usize> {
        view.shortest(0..view.claimed.len())
    }
}

/// Optimal algorithm for stars whose spokes all have the same length: robots
/// return to the center together, and the lowest-numbered one takes the most
/// populous leaf left.
pub fn unit_star_greedy(instance: &Instance) -> Result<WakeUpTree, Error> {
    let spokes = spokes(instance)?;
    if let Some(first) = spokes.first() {
        if spokes.iter().any(|s| (s.length - first.length).abs() > TOL) {
            return Err(Error::Precondition("spoke lengths differ".into()));
        }
    }
    Ok(simulate(instance, &lengths(spokes), &mut MostRobots)?.tree)
}

/// Shortest-Edge-First: every robot reaching the center takes the shortest
/// spoke nobody has claimed yet.
///
/// On stars with equal leaf populations the makespan is at most `7/3` times
/// the optimum and at most the optimum plus twice the longest spoke.
pub fn sef(instance: &Instance) -> Result<WakeUpTree, Error> {
    let spokes = uniform_spokes(instance)?;
    Ok(simulate(instance, &lengths(spokes), &mut ShortestEdge)?.tree)
}

/// Average completion time of the [`sef`] schedule.
///
/// A robot completes when it reaches the leaf where it stays: its last claimed
/// leaf, or the place it was woken if it never claims one. The source
/// completes at time zero if it has nothing to do.
pub fn sef_average_completion(instance: &Instance) -> Result<f64, Error> {
    let spokes = uniform_spokes(instance)?;
    let run = simulate(instance, &lengths(spokes), &mut ShortestEdge)?;
    let c: &Vec<f64> = &run.completion;
    Ok(c.iter().sum::<f64>() / c.len() as f64)
}
