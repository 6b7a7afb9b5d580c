use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::instance::RobotId;

/// A structural defect of a wake-up tree with respect to an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The tree and the instance disagree on the number of robots.
    RobotCount { tree: usize, instance: usize },
    /// A parent or child reference points outside `0..n`.
    UnknownRobot { node: RobotId, referenced: usize },
    /// Robot 0 must be the root.
    RootHasParent { parent: RobotId },
    /// The source robot may wake only one robot directly.
    RootOutDegree { children: usize },
    /// Every other robot may have at most two children.
    BinaryBoundExceeded { node: RobotId, children: usize },
    /// `parent` and `children` disagree.
    InconsistentLink { parent: RobotId, child: RobotId },
    /// A robot that is not reachable from the root.
    Unreachable { node: RobotId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RobotCount { tree, instance } => {
                write!(f, "tree spans {tree} robots but the instance has {instance}")
            }
            Violation::UnknownRobot { node, referenced } => {
                write!(f, "robot {node} references unknown robot {referenced}")
            }
            Violation::RootHasParent { parent } => write!(f, "root has parent {parent}"),
            Violation::RootOutDegree { children } => {
                write!(f, "root out-degree > 1 ({children} children)")
            }
            Violation::BinaryBoundExceeded { node, children } => {
                write!(f, "binary bound exceeded at robot {node} ({children} children)")
            }
            Violation::InconsistentLink { parent, child } => {
                write!(f, "robot {child} is listed under {parent} but has another parent")
            }
            Violation::Unreachable { node } => write!(f, "robot {node} is not reachable from the root"),
        }
    }
}

/// Errors returned by the algorithms in this crate.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// The tree is not a valid wake-up tree for the instance.
    InvalidTree(Vec<Violation>),
    /// The instance itself is malformed.
    InvalidInstance(String),
    /// A numeric parameter is out of its admissible range.
    Parameter(String),
    /// The algorithm's precondition does not hold on this instance.
    Precondition(String),
    /// The instance is too large for an exhaustive method.
    Capacity { robots: usize, limit: usize },
    /// An enumeration exceeded its work budget.
    Budget(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidTree(violations) => {
                write!(f, "invalid wake-up tree:")?;
                for v in violations {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            Error::InvalidInstance(msg) => write!(f, "invalid instance: {msg}"),
            Error::Parameter(msg) => write!(f, "parameter error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Capacity { robots, limit } => {
                write!(f, "instance has {robots} robots, exhaustive limit is {limit}")
            }
            Error::Budget(msg) => write!(f, "enumeration budget exceeded: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
