use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::engine::{simulate, Policy, View};
use super::{lengths, spokes};
use crate::instance::{Instance, RobotId, Spoke};
use crate::math::{ceil, log2, pow};
use crate::tree::WakeUpTree;
use crate::Error;

/// Spokes whose lengths round up to the same power of two `2^class_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthClass {
    pub class_index: i32,
    /// Spoke indices, most robots first (lower index on ties).
    pub edges: Vec<usize>,
}

fn class_of(length: f64) -> i32 {
    let mut j = ceil(log2(length)) as i32;
    // guard against log2 rounding on exact powers of two
    while pow(2.0, (j - 1) as f64) >= length {
        j -= 1;
    }
    while pow(2.0, j as f64) < length {
        j += 1;
    }
    j
}

/// Partition of the spokes into power-of-two length classes, ascending.
pub fn length_classes(spokes: &[Spoke]) -> Vec<LengthClass> {
    let mut map: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (i, s) in spokes.iter().enumerate() {
        map.entry(class_of(s.length)).or_default().push(i);
    }
    map.into_iter()
        .map(|(class_index, mut edges)| {
            edges.sort_by(|&a, &b| spokes[b].robots.cmp(&spokes[a].robots).then(a.cmp(&b)));
            LengthClass { class_index, edges }
        })
        .collect()
}

/// Walk through the classes, one step per call.
struct Doubling {
    classes: Vec<LengthClass>,
    /// Next class each robot looks at.
    cursor: Vec<usize>,
}

impl Doubling {
    fn new(spokes: &[Spoke], robots: usize) -> Self {
        Doubling {
            classes: length_classes(spokes),
            cursor: vec![0; robots],
        }
    }

    fn step(&mut self, view: &View<'_>, robot: RobotId) -> Option<usize> {
        let k = self.classes.len();
        let start = self.cursor[robot.0];
        // from the cursor upwards, then wrap around and start over
        for c in (start..k).chain(0..start) {
            if let Some(s) = view.most_robots(self.classes[c].edges.iter().copied()) {
                self.cursor[robot.0] = if c + 1 == k { 0 } else { c + 1 };
                return Some(s);
            }
        }
        None
    }
}

struct RepeatedDoubling(Doubling);

impl Policy for RepeatedDoubling {
    fn choose(&mut self, view: &View<'_>, robot: RobotId, _: f64) -> Option<usize> {
        self.0.step(view, robot)
    }
}

struct TagTeam {
    doubling: Doubling,
    /// Whether the robot's next move is a shortest-edge step.
    sef_turn: Vec<bool>,
}

impl Policy for TagTeam {
    fn choose(&mut self, view: &View<'_>, robot: RobotId, _: f64) -> Option<usize> {
        let turn = &mut self.sef_turn[robot.0];
        if *turn {
            *turn = false;
            if let Some(s) = view.shortest(0..view.claimed.len()) {
                return Some(s);
            }
        }
        self.sef_turn[robot.0] = true;
        self.doubling.step(view, robot)
    }
}

/// Repeated Doubling: every robot walks the length classes upwards from the
/// smallest one present and takes the most populous unclaimed spoke of the
/// next nonempty class, starting over after the largest class.
pub fn repeated_doubling(instance: &Instance) -> Result<WakeUpTree, Error> {
    let spokes = spokes(instance)?;
    let mut policy = RepeatedDoubling(Doubling::new(spokes, instance.robot_count()));
    Ok(simulate(instance, &lengths(spokes), &mut policy)?.tree)
}

/// Tag-Team: Repeated Doubling in which every doubling step is preceded by a
/// Shortest-Edge-First step. A 14-approximation on every star.
pub fn tag_team(instance: &Instance) -> Result<WakeUpTree, Error> {
    let spokes = spokes(instance)?;
    let n = instance.robot_count();
    let mut policy = TagTeam {
        doubling: Doubling::new(spokes, n),
        sef_turn: vec![true; n],
    };
    Ok(simulate(instance, &lengths(spokes), &mut policy)?.tree)
}
