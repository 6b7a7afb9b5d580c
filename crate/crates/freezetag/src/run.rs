//! Algorithm dispatch and solve reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use freezetag_core::exact::{self, Limits};
use freezetag_core::geometry::{self, GridOptions, SweepOptions};
use freezetag_core::graphs::{self, OnlineOptions};
use freezetag_core::stars::{self, PtasOptions};
use freezetag_core::{Error, Instance, LowerBounds, WakeUpTree, TOL};
use sha2::{Digest, Sha256};

use crate::format::serialize_instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Exact,
    UnitGreedy,
    Sef,
    Rd,
    TagTeam,
    StarPtas,
    Bfs,
    Online,
    GeoO1,
    GeoPtas,
}

impl Algorithm {
    pub const ALL: [Algorithm; 10] = [
        Algorithm::Exact,
        Algorithm::UnitGreedy,
        Algorithm::Sef,
        Algorithm::Rd,
        Algorithm::TagTeam,
        Algorithm::StarPtas,
        Algorithm::Bfs,
        Algorithm::Online,
        Algorithm::GeoO1,
        Algorithm::GeoPtas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::UnitGreedy => "unit-greedy",
            Algorithm::Sef => "sef",
            Algorithm::Rd => "rd",
            Algorithm::TagTeam => "tagteam",
            Algorithm::StarPtas => "star-ptas",
            Algorithm::Bfs => "bfs",
            Algorithm::Online => "online",
            Algorithm::GeoO1 => "geo-o1",
            Algorithm::GeoPtas => "geo-ptas",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunParams {
    pub epsilon: f64,
    /// Θ-graph sector count.
    pub k: usize,
    pub allow_few_sectors: bool,
    pub m_override: Option<usize>,
    pub allow_large_m: bool,
    pub allow_small_epsilon: bool,
    /// Fail instead of counting when the online cascade looks past its view.
    pub enforce_view: bool,
    /// Also solve exactly and report the ratio, when the instance is small enough.
    pub oracle: bool,
    pub limits: Limits,
    /// Wall-clock budget of each exact search.
    pub time_budget: Option<Duration>,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            epsilon: 0.25,
            k: geometry::MIN_SECTORS,
            allow_few_sectors: false,
            m_override: None,
            allow_large_m: false,
            allow_small_epsilon: false,
            enforce_view: false,
            oracle: false,
            limits: Limits::default(),
            time_budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub instance: String,
    pub algorithm: Algorithm,
    /// First 16 hex digits of the SHA-256 of the canonical instance file.
    pub digest: String,
    pub robots: usize,
    pub makespan: f64,
    pub lower_bounds: LowerBounds,
    pub oracle: Option<f64>,
    /// `makespan / oracle`; present exactly when `oracle` is.
    pub ratio: Option<f64>,
    /// `false` when an exact search ran out of time.
    pub optimal: bool,
    pub wall_time: Duration,
    pub parameters: BTreeMap<String, String>,
}

#[derive(Debug)]
pub struct Outcome {
    pub report: SolveReport,
    pub tree: WakeUpTree,
}

pub fn digest(instance: &Instance) -> String {
    let hash = Sha256::digest(serialize_instance(instance).as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn solve_exact(instance: &Instance, params: &RunParams) -> Result<exact::Solution, Error> {
    let start = Instant::now();
    let budget = params.time_budget;
    let mut stop = move || budget.is_some_and(|b| start.elapsed() >= b);
    exact::solve_optimal_with(instance, &params.limits, &mut stop)
}

/// Runs `algorithm` on `instance`. The tree is validated and evaluated here,
/// so the report's makespan never trusts the algorithm's own bookkeeping.
pub fn run(instance: &Instance, algorithm: Algorithm, params: &RunParams, name: &str) -> Result<Outcome, Error> {
    let start = Instant::now();
    let mut parameters = BTreeMap::new();
    let mut optimal = true;
    let sweep = SweepOptions {
        k: params.k,
        allow_few_sectors: params.allow_few_sectors,
    };
    let tree = match algorithm {
        Algorithm::Exact => {
            let s = solve_exact(instance, params)?;
            optimal = s.optimal;
            parameters.insert("nodes".into(), s.nodes.to_string());
            s.tree
        }
        Algorithm::UnitGreedy => stars::unit_star_greedy(instance)?,
        Algorithm::Sef => stars::sef(instance)?,
        Algorithm::Rd => stars::repeated_doubling(instance)?,
        Algorithm::TagTeam => stars::tag_team(instance)?,
        Algorithm::StarPtas => {
            let options = PtasOptions {
                allow_small_epsilon: params.allow_small_epsilon,
                ..PtasOptions::new(params.epsilon)
            };
            parameters.insert("epsilon".into(), params.epsilon.to_string());
            stars::star_ptas_with(instance, &options)?.tree
        }
        Algorithm::Bfs => graphs::bfs_wakeup(instance)?,
        Algorithm::Online => {
            let r = graphs::online_cascade_with(
                instance,
                &OnlineOptions {
                    enforce_view: params.enforce_view,
                },
            )?;
            parameters.insert("delta_g".into(), r.delta_g.to_string());
            parameters.insert("rho_max".into(), r.rho_max.to_string());
            parameters.insert("out_of_view".into(), r.out_of_view_queries.to_string());
            r.tree
        }
        Algorithm::GeoO1 => {
            parameters.insert("K".into(), params.k.to_string());
            geometry::geo_o1_with(instance, &sweep)?
        }
        Algorithm::GeoPtas => {
            let options = GridOptions {
                m_override: params.m_override,
                allow_large_m: params.allow_large_m,
                sweep,
                ..GridOptions::new(params.epsilon)
            };
            let r = geometry::geo_ptas_with(instance, &options)?;
            parameters.insert("epsilon".into(), params.epsilon.to_string());
            parameters.insert("m".into(), r.m.to_string());
            r.tree
        }
    };
    let wall_time = start.elapsed();
    tree.validate(instance).map_err(Error::InvalidTree)?;
    let makespan = instance.makespan(&tree)?;

    let oracle = if algorithm == Algorithm::Exact && optimal {
        Some(makespan)
    } else if params.oracle && instance.robot_count() <= params.limits.max_robots {
        let s = solve_exact(instance, params)?;
        s.optimal.then_some(s.makespan)
    } else {
        None
    };
    let ratio = oracle.map(|o| if o > TOL { makespan / o } else { 1.0 });
    Ok(Outcome {
        report: SolveReport {
            instance: name.to_string(),
            algorithm,
            digest: digest(instance),
            robots: instance.robot_count(),
            makespan,
            lower_bounds: instance.lower_bounds(),
            oracle,
            ratio,
            optimal,
            wall_time,
            parameters,
        },
        tree,
    })
}
