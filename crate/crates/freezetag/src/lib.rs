//! Files, generators and reporting around [`freezetag_core`].
//!
//! * [`format`] reads and writes instance and schedule JSON;
//! * [`families`] builds the worst-case constructions and seeded random instances;
//! * [`run`] dispatches an algorithm by name and produces a [`SolveReport`];
//! * [`report`] renders CSV and text tables and an SVG Gantt chart.

pub mod families;
pub mod format;
pub mod report;
pub mod run;

pub use families::{generate, Family, Params};
pub use format::{parse_instance, parse_schedule, serialize_instance, serialize_schedule, FormatError};
pub use run::{run, Algorithm, Outcome, RunParams, SolveReport};

pub use freezetag_core as core;
