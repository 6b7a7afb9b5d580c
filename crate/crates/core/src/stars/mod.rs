//! Algorithms for weighted stars (centroid metrics).
//!
//! Leaf `i` of a star is site `i + 1`; the source waits at the center.
//! Everything here goes through a single event simulation in which robots pick
//! their next spoke when they pass the center.

mod doubling;
mod engine;
mod greedy;
mod ptas;

pub use doubling::{length_classes, repeated_doubling, tag_team, LengthClass};
pub use greedy::{sef, sef_average_completion, unit_star_greedy};
pub use ptas::{star_ptas, star_ptas_with, PtasOptions, PtasReport, C_PTAS};

use alloc::vec::Vec;

use crate::instance::{Instance, Spoke};
use crate::Error;

pub(crate) fn spokes(instance: &Instance) -> Result<&[Spoke], Error> {
    instance
        .spokes()
        .ok_or_else(|| Error::Precondition("instance is not a star".into()))
}

pub(crate) fn uniform_spokes(instance: &Instance) -> Result<&[Spoke], Error> {
    let spokes = spokes(instance)?;
    if spokes.windows(2).any(|w| w[0].robots != w[1].robots) {
        return Err(Error::Precondition(
            "every leaf must carry the same number of robots".into(),
        ));
    }
    Ok(spokes)
}

pub(crate) fn lengths(spokes: &[Spoke]) -> Vec<f64> {
    spokes.iter().map(|s| s.length).collect()
}
