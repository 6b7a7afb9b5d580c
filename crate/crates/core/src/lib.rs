//! Algorithms for the Freeze-Tag Problem.
//!
//! One robot starts awake at a source; every other robot is asleep and must be
//! visited by an awake robot to be woken. Awakened robots help. A solution is a
//! [`WakeUpTree`]: a rooted binary tree over robots in which the children of a
//! robot `r` are the robot that `r` wakes next and the robot that `r`'s waker
//! wakes next. The makespan is the weighted depth of that tree.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, instance
//! generators and the command-line front end live in the `freezetag` crate.
//!
//! Modules:
//!
//!  * [`instance`] / [`tree`] – environments, robots, wake-up trees and their
//!    evaluation, plus generic lower bounds;
//!  * [`heavy_path`] / [`balance`] – heavy-path decomposition and the
//!    pseudo-balancing transform;
//!  * [`exact`] – branch-and-bound optimum for desk-scale instances;
//!  * [`stars`] – greedy, shortest-edge-first, repeated doubling, tag-team and
//!    the approximation scheme for stars with equal leaf populations;
//!  * [`graphs`] – breadth-first wake-up and the online cascade;
//!  * [`geometry`] – Θ-graphs, the sector-walk constant-factor algorithm and
//!    the pixel-grid approximation scheme.
//!
//! ```
//! use freezetag_core::{exact, stars, Instance};
//!
//! let star = Instance::star_uniform(&[1.0, 1.0, 1.0, 100.0], 1).unwrap();
//! let sef = stars::sef(&star).unwrap();
//! assert_eq!(star.makespan(&sef).unwrap(), 104.0);
//!
//! let best = exact::solve_optimal(&star, &exact::Limits::default()).unwrap();
//! assert_eq!(best.makespan, 102.0);
//! ```
#![no_std]

extern crate alloc;

mod error;
mod math;

pub mod balance;
pub mod exact;
pub mod geometry;
pub mod graphs;
pub mod heavy_path;
pub mod instance;
pub mod stars;
pub mod tree;

pub use error::{Error, Violation};
pub use instance::{Environment, Instance, LowerBounds, Metric, RobotId, Spoke};
pub use tree::{Schedule, WakeEvent, WakeUpTree};

/// Absolute tolerance used for every comparison between times or distances.
pub const TOL: f64 = 1e-9;
