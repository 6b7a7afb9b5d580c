//! Wake-up trees, their evaluation and the event schedule derived from them.

use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{Instance, RobotId};
use crate::{Error, Violation};

/// Rooted tree over robots encoding who wakes whom.
///
/// If robot `r` is woken by `w`, the children of `r` are the robot `r` wakes
/// next and the robot `w` wakes next; both leave `r`'s site at `r`'s wake
/// time. The root (robot 0) therefore has at most one child and every other
/// robot at most two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WakeUpTree {
    parent: Vec<Option<RobotId>>,
    children: Vec<Vec<RobotId>>,
}

/// One awakening: `waker` reaches `woken` at `time`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct WakeEvent {
    pub time: f64,
    pub waker: RobotId,
    pub woken: RobotId,
    pub from_site: usize,
    pub to_site: usize,
}

/// Timed awakening events of a tree, sorted by time.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    pub events: Vec<WakeEvent>,
    pub makespan: f64,
}

impl WakeUpTree {
    /// Builds a tree from raw parent pointers. Children keep the order in which
    /// they appear in `parent`. The result is not validated.
    pub fn from_parents(parent: Vec<Option<RobotId>>) -> Self {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        for (child, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                if p.0 < n {
                    children[p.0].push(RobotId(child));
                }
            }
        }
        WakeUpTree { parent, children }
    }

    /// Builds a tree from explicit ordered child lists. Not validated.
    pub fn from_children(children: Vec<Vec<RobotId>>) -> Self {
        let n = children.len();
        let mut parent = vec![None; n];
        for (p, list) in children.iter().enumerate() {
            for c in list {
                if c.0 < n {
                    parent[c.0] = Some(RobotId(p));
                }
            }
        }
        WakeUpTree { parent, children }
    }

    /// Builds a tree from per-robot itineraries: `itineraries[r]` lists, in
    /// order, the robots that `r` wakes. Every robot other than 0 must appear in
    /// exactly one itinerary.
    ///
    /// Robot `x`, woken as the `k`-th target of `w`, gets as children its own
    /// first target and the `(k+1)`-th target of `w`.
    pub fn from_itineraries(itineraries: &[Vec<RobotId>]) -> Result<Self, Error> {
        let n = itineraries.len();
        let mut parent: Vec<Option<RobotId>> = vec![None; n];
        let mut seen = vec![false; n];
        if n > 0 {
            seen[0] = true;
        }
        for (waker, list) in itineraries.iter().enumerate() {
            for (k, &target) in list.iter().enumerate() {
                if target.0 >= n {
                    return Err(Error::InvalidTree(vec![Violation::UnknownRobot {
                        node: RobotId(waker),
                        referenced: target.0,
                    }]));
                }
                if seen[target.0] {
                    return Err(Error::InvalidTree(vec![Violation::InconsistentLink {
                        parent: RobotId(waker),
                        child: target,
                    }]));
                }
                seen[target.0] = true;
                parent[target.0] = Some(if k == 0 { RobotId(waker) } else { list[k - 1] });
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidTree(vec![Violation::Unreachable {
                node: RobotId(missing),
            }]));
        }
        // own first target before the waker's continuation
        let mut children = vec![Vec::new(); n];
        for (waker, list) in itineraries.iter().enumerate() {
            if let Some(&first) = list.first() {
                children[waker].push(first);
            }
        }
        for list in itineraries {
            for pair in list.windows(2) {
                children[pair[0].0].push(pair[1]);
            }
        }
        Ok(WakeUpTree { parent, children })
    }

    /// Recovers per-robot itineraries (inverse of [`from_itineraries`] up to the
    /// order of the two children, which does not affect wake times).
    ///
    /// [`from_itineraries`]: WakeUpTree::from_itineraries
    pub fn itineraries(&self) -> Vec<Vec<RobotId>> {
        let n = self.len();
        let mut itin = vec![Vec::new(); n];
        if n == 0 {
            return itin;
        }
        // (node, robot carrying the "waker continues" slot of this node)
        let mut stack = Vec::new();
        if let Some(&first) = self.children[0].first() {
            itin[0].push(first);
            stack.push((first, RobotId(0)));
        }
        while let Some((node, carrier)) = stack.pop() {
            let kids = &self.children[node.0];
            // first child continues `node` itself, second continues its waker
            if let Some(&own) = kids.first() {
                itin[node.0].push(own);
                stack.push((own, node));
            }
            if let Some(&cont) = kids.get(1) {
                itin[carrier.0].push(cont);
                stack.push((cont, carrier));
            }
        }
        itin
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, robot: RobotId) -> Option<RobotId> {
        self.parent[robot.0]
    }

    pub fn children(&self, robot: RobotId) -> &[RobotId] {
        &self.children[robot.0]
    }

    pub fn parents(&self) -> &[Option<RobotId>] {
        &self.parent
    }

    /// Structural check against an instance. Returns every violation found.
    pub fn validate(&self, instance: &Instance) -> Result<(), Vec<Violation>> {
        let violations = self.violations(instance.robot_count());
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub(crate) fn violations(&self, robots: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.len();
        if n != robots || self.children.len() != n {
            out.push(Violation::RobotCount { tree: n, instance: robots });
            return out;
        }
        if n == 0 {
            return out;
        }
        if let Some(p) = self.parent[0] {
            out.push(Violation::RootHasParent { parent: p });
        }
        for (node, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                if p.0 >= n {
                    out.push(Violation::UnknownRobot {
                        node: RobotId(node),
                        referenced: p.0,
                    });
                }
            }
        }
        for (node, kids) in self.children.iter().enumerate() {
            let bound = if node == 0 { 1 } else { 2 };
            if kids.len() > bound {
                out.push(if node == 0 {
                    Violation::RootOutDegree { children: kids.len() }
                } else {
                    Violation::BinaryBoundExceeded {
                        node: RobotId(node),
                        children: kids.len(),
                    }
                });
            }
            for c in kids {
                if c.0 >= n {
                    out.push(Violation::UnknownRobot {
                        node: RobotId(node),
                        referenced: c.0,
                    });
                } else if self.parent[c.0] != Some(RobotId(node)) {
                    out.push(Violation::InconsistentLink {
                        parent: RobotId(node),
                        child: *c,
                    });
                }
            }
        }
        // every parent link must be mirrored by a child entry
        for (node, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                if p.0 < n && !self.children[p.0].contains(&RobotId(node)) {
                    out.push(Violation::InconsistentLink {
                        parent: *p,
                        child: RobotId(node),
                    });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let mut reached = vec![false; n];
        let mut stack = vec![0usize];
        reached[0] = true;
        while let Some(u) = stack.pop() {
            for c in &self.children[u] {
                if !reached[c.0] {
                    reached[c.0] = true;
                    stack.push(c.0);
                }
            }
        }
        for (node, r) in reached.iter().enumerate() {
            if !r {
                out.push(Violation::Unreachable { node: RobotId(node) });
            }
        }
        out
    }

    /// Wake time of every robot. The tree must be valid for `instance`.
    pub fn wake_times(&self, instance: &Instance) -> Result<Vec<f64>, Error> {
        self.validate(instance).map_err(Error::InvalidTree)?;
        Ok(self.wake_times_unchecked(instance))
    }

    pub(crate) fn wake_times_unchecked(&self, instance: &Instance) -> Vec<f64> {
        let n = self.len();
        let mut time = vec![0.0; n];
        let mut stack = vec![RobotId::SOURCE];
        while let Some(u) = stack.pop() {
            for &c in &self.children[u.0] {
                time[c.0] = time[u.0] + instance.distance(u, c);
                stack.push(c);
            }
        }
        time
    }

    /// Largest number of nodes on a root-to-leaf path (root included).
    pub fn max_path_nodes(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        let mut best = 0;
        let mut stack = vec![(0usize, 1usize)];
        while let Some((u, depth)) = stack.pop() {
            best = best.max(depth);
            for c in &self.children[u] {
                stack.push((c.0, depth + 1));
            }
        }
        best
    }

    /// Timed events of the tree, sorted by time.
    pub fn schedule(&self, instance: &Instance) -> Result<Schedule, Error> {
        let times = self.wake_times(instance)?;
        let itin = self.itineraries();
        let mut events = Vec::with_capacity(self.len().saturating_sub(1));
        for (waker, list) in itin.iter().enumerate() {
            let mut from = RobotId(waker);
            for &woken in list {
                events.push(WakeEvent {
                    time: times[woken.0],
                    waker: RobotId(waker),
                    woken,
                    from_site: instance.site_of(from),
                    to_site: instance.site_of(woken),
                });
                from = woken;
            }
        }
        // stable: equal-time events keep itinerary order
        events.sort_by(|a, b| a.time.total_cmp(&b.time));
        let makespan = times.iter().copied().fold(0.0, f64::max);
        Ok(Schedule { events, makespan })
    }
}

impl Schedule {
    /// Rebuilds the wake-up tree described by the events.
    pub fn to_tree(&self, robots: usize) -> Result<WakeUpTree, Error> {
        let mut order: Vec<&WakeEvent> = self.events.iter().collect();
        order.sort_by(|a, b| a.time.total_cmp(&b.time));
        let mut itin = vec![Vec::new(); robots];
        for e in order {
            if e.waker.0 >= robots || e.woken.0 >= robots {
                return Err(Error::InvalidTree(vec![Violation::UnknownRobot {
                    node: e.waker,
                    referenced: e.woken.0.max(e.waker.0),
                }]));
            }
            itin[e.waker.0].push(e.woken);
        }
        WakeUpTree::from_itineraries(&itin)
    }
}

impl Instance {
    /// Makespan of `tree`: the largest wake time.
    pub fn makespan(&self, tree: &WakeUpTree) -> Result<f64, Error> {
        Ok(tree.wake_times(self)?.into_iter().fold(0.0, f64::max))
    }
}

/// Zero-cost doubling cascade: `awake` robots wake `asleep` colocated robots,
/// each round every awake robot (including those just woken) takes the next
/// sleeper. Appends to `itineraries` and returns the combined awake group.
pub(crate) fn wake_colocated(
    itineraries: &mut [Vec<RobotId>],
    awake: &[RobotId],
    asleep: &[RobotId],
) -> Vec<RobotId> {
    let mut group: Vec<RobotId> = awake.to_vec();
    let mut next = 0;
    while next < asleep.len() {
        let round = group.len();
        for i in 0..round {
            if next == asleep.len() {
                break;
            }
            itineraries[group[i].0].push(asleep[next]);
            group.push(asleep[next]);
            next += 1;
        }
        if round == 0 {
            break;
        }
    }
    group
}
