//! Constant-factor algorithm in the plane: every robot walks through the
//! Θ-graph neighbors of the place it was woken, nearest first, waking those
//! that are still asleep and that nobody else has claimed.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::theta::{build_theta_graph, planar_points};
use crate::instance::{Instance, RobotId};
use crate::tree::{wake_colocated, WakeUpTree};
use crate::Error;

/// Constant in `geo_o1 <= C_GEO · optimum`, measured on random planar sets
/// with at most nine robots.
pub const C_GEO: f64 = 3.0;

/// Constant in `geo_o1 <= C_DIAM · diam(R)`, measured on the same suite.
pub const C_DIAM: f64 = 3.0;

/// Sector count below which the Θ-graph may fail to connect the points.
pub const MIN_SECTORS: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub k: usize,
    /// Accept `k < 9`. Robots that run out of sector neighbors then head for
    /// the nearest sleeper nobody has claimed.
    pub allow_few_sectors: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            k: MIN_SECTORS,
            allow_few_sectors: false,
        }
    }
}

pub(crate) struct SweepRun {
    pub itin: Vec<Vec<RobotId>>,
    /// Time each robot reaches the place where it stays.
    pub done: Vec<f64>,
    /// Site where each robot stays.
    pub rest: Vec<usize>,
}

#[derive(PartialEq)]
struct Event(f64, RobotId);

impl Eq for Event {}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sector-walk wake-up tree with `k = 9` sectors.
pub fn geo_o1(instance: &Instance) -> Result<WakeUpTree, Error> {
    geo_o1_with(instance, &SweepOptions::default())
}

pub fn geo_o1_with(instance: &Instance, options: &SweepOptions) -> Result<WakeUpTree, Error> {
    let run = sweep(instance, options)?;
    WakeUpTree::from_itineraries(&run.itin)
}

pub(crate) fn sweep(instance: &Instance, options: &SweepOptions) -> Result<SweepRun, Error> {
    let k = options.k;
    if k < MIN_SECTORS && !options.allow_few_sectors {
        return Err(Error::Parameter(format!(
            "{k} sectors may leave points unreachable; at least {MIN_SECTORS} are required"
        )));
    }
    let coords = instance
        .coordinates()
        .ok_or_else(|| Error::Precondition("instance is not a point set".into()))?;
    let sites: Vec<usize> = instance.occupied_sites().collect();
    let pts = planar_points(&sites.iter().map(|&s| coords[s].clone()).collect::<Vec<_>>())?;
    let theta = build_theta_graph(&pts, k)?;
    // nearest first, lower site index on ties
    let order: Vec<Vec<usize>> = (0..sites.len())
        .map(|v| {
            let mut nb: Vec<usize> = theta.sector_neighbors(v).into_iter().map(|u| sites[u]).collect();
            let home = sites[v];
            nb.sort_by(|&a, &b| {
                instance
                    .site_distance(home, a)
                    .total_cmp(&instance.site_distance(home, b))
                    .then(a.cmp(&b))
            });
            nb
        })
        .collect();
    let local: Vec<usize> = {
        let mut m = vec![usize::MAX; instance.site_count()];
        for (i, &s) in sites.iter().enumerate() {
            m[s] = i;
        }
        m
    };

    // sites sharing a point are woken together: the Θ-graph never links them
    let twins: Vec<Vec<usize>> = (0..instance.site_count())
        .map(|a| {
            sites
                .iter()
                .copied()
                .filter(|&b| b != a && instance.site_distance(a, b) == 0.0)
                .collect()
        })
        .collect();
    let n = instance.robot_count();
    let src = instance.source_site();
    let mut claimed = vec![false; instance.site_count()];
    claimed[src] = true;
    let mut open = sites.len() - 1;
    let mut itin: Vec<Vec<RobotId>> = vec![Vec::new(); n];
    let mut done = vec![0.0; n];
    let mut rest: Vec<usize> = (0..n).map(|r| instance.site_of(RobotId(r))).collect();
    // (list owner site, position in that list)
    let mut cursor: Vec<(usize, usize)> = (0..n).map(|r| (local[instance.site_of(RobotId(r))], 0)).collect();
    let mut queue = BinaryHeap::new();
    let mut at_src: Vec<RobotId> = instance.robots_at(src)[1..].to_vec();
    for &t in &twins[src] {
        claimed[t] = true;
        open -= 1;
        at_src.extend_from_slice(instance.robots_at(t));
    }
    for r in wake_colocated(&mut itin, &[RobotId::SOURCE], &at_src) {
        queue.push(Event(0.0, r));
    }
    while let Some(Event(time, robot)) = queue.pop() {
        if open == 0 {
            break;
        }
        let (owner, mut pos) = cursor[robot.0];
        let list = &order[owner];
        while pos < list.len() && claimed[list[pos]] {
            pos += 1;
        }
        let here = rest[robot.0];
        let target = if pos < list.len() {
            Some(list[pos])
        } else if options.allow_few_sectors && k < MIN_SECTORS {
            sites
                .iter()
                .copied()
                .filter(|&s| !claimed[s])
                .min_by(|&a, &b| {
                    instance
                        .site_distance(here, a)
                        .total_cmp(&instance.site_distance(here, b))
                        .then(a.cmp(&b))
                })
        } else {
            None
        };
        cursor[robot.0] = (owner, pos);
        let Some(t) = target else { continue };
        claimed[t] = true;
        open -= 1;
        let arrival = time + instance.site_distance(here, t);
        let mut sleepers: Vec<RobotId> = instance.robots_at(t).to_vec();
        for &u in &twins[t] {
            if !claimed[u] {
                claimed[u] = true;
                open -= 1;
                sleepers.extend_from_slice(instance.robots_at(u));
            }
        }
        itin[robot.0].push(sleepers[0]);
        for r in wake_colocated(&mut itin, &[robot, sleepers[0]], &sleepers[1..]) {
            done[r.0] = arrival;
            rest[r.0] = t;
            queue.push(Event(arrival, r));
        }
    }
    if open > 0 {
        return Err(Error::Precondition(format!(
            "{open} sites were never reached through the Θ-graph"
        )));
    }
    Ok(SweepRun { itin, done, rest })
}
