//! JSON instance and schedule files.
//!
//! ```text
//! {"kind":"star","spokes":[{"length":1.0,"robots":1}, ...]}
//! {"kind":"graph","vertices":N,"source":0,"edges":[[u,v,w], ...],"robots":[r0, ...]}
//! {"kind":"points","dim":2,"source":0,"points":[[x,y], ...],"robots":[...],"metric":"L2"}
//! {"makespan":t,"events":[{"t":..,"waker":..,"woken":..,"from":..,"to":..}, ...]}
//! ```

use std::fmt;

use freezetag_core::{Environment, Instance, Metric, RobotId, Schedule, Spoke, WakeEvent};
use serde::{Deserialize, Serialize};

/// A file could not be turned into an instance or schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct FormatError {
    /// JSON path of the offending field, empty for the document itself.
    pub field: String,
    /// 1-based line and column when the JSON parser reported them.
    pub position: Option<(usize, usize)>,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((line, column)) = self.position {
            write!(f, "line {line}, column {column}: ")?;
        }
        if !self.field.is_empty() {
            write!(f, "field `{}`: ", self.field)?;
        }
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for FormatError {}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError {
        field: field.into(),
        position: None,
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricName {
    L1,
    L2,
    #[serde(rename = "LInf", alias = "Linf", alias = "LINF")]
    LInf,
}

impl From<MetricName> for Metric {
    fn from(m: MetricName) -> Self {
        match m {
            MetricName::L1 => Metric::L1,
            MetricName::L2 => Metric::L2,
            MetricName::LInf => Metric::LInf,
        }
    }
}

impl From<Metric> for MetricName {
    fn from(m: Metric) -> Self {
        match m {
            Metric::L1 => MetricName::L1,
            Metric::L2 => MetricName::L2,
            Metric::LInf => MetricName::LInf,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpokeFile {
    pub length: f64,
    pub robots: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarFile {
    pub kind: String,
    pub spokes: Vec<SpokeFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub kind: String,
    pub vertices: usize,
    pub source: usize,
    pub edges: Vec<(usize, usize, f64)>,
    pub robots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsFile {
    pub kind: String,
    pub dim: usize,
    pub source: usize,
    pub points: Vec<Vec<f64>>,
    pub robots: Vec<usize>,
    #[serde(default = "default_metric")]
    pub metric: MetricName,
}

/// The on-disk form of an instance, told apart by its `kind` field.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum InstanceFile {
    Star(StarFile),
    Graph(GraphFile),
    Points(PointsFile),
}

#[derive(Deserialize)]
struct KindOnly {
    kind: String,
}

fn default_metric() -> MetricName {
    MetricName::L2
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> Self {
        let counts = instance.site_counts();
        match instance.environment() {
            Environment::Star { spokes } => InstanceFile::Star(StarFile {
                kind: "star".into(),
                spokes: spokes
                    .iter()
                    .map(|s| SpokeFile {
                        length: s.length,
                        robots: s.robots,
                    })
                    .collect(),
            }),
            Environment::Graph { vertices, edges, .. } => InstanceFile::Graph(GraphFile {
                kind: "graph".into(),
                vertices: *vertices,
                source: instance.source_site(),
                edges: edges.iter().map(|e| (e.u, e.v, e.weight)).collect(),
                robots: counts,
            }),
            Environment::Points { dim, points, metric } => InstanceFile::Points(PointsFile {
                kind: "points".into(),
                dim: *dim,
                source: instance.source_site(),
                points: points.clone(),
                robots: counts,
                metric: (*metric).into(),
            }),
        }
    }

    /// Checks the fields and builds the instance.
    pub fn to_instance(&self) -> Result<Instance, FormatError> {
        match self {
            InstanceFile::Star(StarFile { spokes, .. }) => {
                for (i, s) in spokes.iter().enumerate() {
                    if !(s.length.is_finite() && s.length > 0.0) {
                        return Err(field_error(
                            format!("spokes[{i}].length"),
                            format!("length must be positive, got {}", s.length),
                        ));
                    }
                    if s.robots == 0 {
                        return Err(field_error(format!("spokes[{i}].robots"), "a leaf needs at least one robot"));
                    }
                }
                let spokes: Vec<Spoke> = spokes.iter().map(|s| Spoke::new(s.length, s.robots)).collect();
                Instance::star(&spokes).map_err(|e| field_error("spokes", e.to_string()))
            }
            InstanceFile::Graph(GraphFile {
                vertices,
                source,
                edges,
                robots,
                ..
            }) => {
                if *vertices == 0 || robots.iter().sum::<usize>() == 0 {
                    return Err(field_error("robots", "no robots"));
                }
                if *source >= *vertices {
                    return Err(field_error("source", format!("source {source} is not a vertex")));
                }
                if robots.len() != *vertices {
                    return Err(field_error(
                        "robots",
                        format!("{} entries for {vertices} vertices", robots.len()),
                    ));
                }
                for (i, &(u, v, w)) in edges.iter().enumerate() {
                    if u >= *vertices || v >= *vertices {
                        return Err(field_error(format!("edges[{i}]"), format!("endpoint out of range 0..{vertices}")));
                    }
                    if !(w.is_finite() && w >= 0.0) {
                        return Err(field_error(format!("edges[{i}][2]"), format!("negative weight {w}")));
                    }
                }
                Instance::graph(*vertices, edges, *source, robots).map_err(|e| field_error("edges", e.to_string()))
            }
            InstanceFile::Points(PointsFile {
                dim,
                source,
                points,
                robots,
                metric,
                ..
            }) => {
                if points.is_empty() || robots.iter().sum::<usize>() == 0 {
                    return Err(field_error("points", "no robots"));
                }
                if *source >= points.len() {
                    return Err(field_error("source", format!("source {source} is not a point")));
                }
                if robots.len() != points.len() {
                    return Err(field_error(
                        "robots",
                        format!("{} entries for {} points", robots.len(), points.len()),
                    ));
                }
                for (i, p) in points.iter().enumerate() {
                    if p.len() != *dim {
                        return Err(field_error(
                            format!("points[{i}]"),
                            format!("{} coordinates, expected {dim}", p.len()),
                        ));
                    }
                }
                Instance::points(*dim, points, *source, robots, (*metric).into())
                    .map_err(|e| field_error("points", e.to_string()))
            }
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        FormatError {
            field: if field == "." { String::new() } else { field },
            position: (inner.line() > 0).then(|| (inner.line(), inner.column())),
            message: inner.to_string(),
        }
    })
}

pub fn parse_instance_file(text: &str) -> Result<InstanceFile, FormatError> {
    let kind = parse::<KindOnly>(text)?.kind;
    match kind.as_str() {
        "star" => Ok(InstanceFile::Star(parse(text)?)),
        "graph" => Ok(InstanceFile::Graph(parse(text)?)),
        "points" => Ok(InstanceFile::Points(parse(text)?)),
        other => Err(field_error(
            "kind",
            format!("unknown kind `{other}`, expected star, graph or points"),
        )),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    parse_instance_file(text)?.to_instance()
}

/// Canonical JSON text of an instance; parsing it gives the instance back.
pub fn serialize_instance(instance: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(instance)).expect("instance serializes")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventFile {
    pub t: f64,
    pub waker: usize,
    pub woken: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<usize>,
}

/// The on-disk form of a schedule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub makespan: f64,
    pub events: Vec<EventFile>,
}

impl ScheduleFile {
    pub fn from_schedule(schedule: &Schedule) -> Self {
        ScheduleFile {
            makespan: schedule.makespan,
            events: schedule
                .events
                .iter()
                .map(|e| EventFile {
                    t: e.time,
                    waker: e.waker.0,
                    woken: e.woken.0,
                    from: Some(e.from_site),
                    to: Some(e.to_site),
                })
                .collect(),
        }
    }

    pub fn to_schedule(&self) -> Schedule {
        Schedule {
            makespan: self.makespan,
            events: self
                .events
                .iter()
                .map(|e| WakeEvent {
                    time: e.t,
                    waker: RobotId(e.waker),
                    woken: RobotId(e.woken),
                    from_site: e.from.unwrap_or(0),
                    to_site: e.to.unwrap_or(0),
                })
                .collect(),
        }
    }
}

pub fn parse_schedule(text: &str) -> Result<Schedule, FormatError> {
    Ok(parse::<ScheduleFile>(text)?.to_schedule())
}

pub fn serialize_schedule(schedule: &Schedule) -> String {
    serde_json::to_string_pretty(&ScheduleFile::from_schedule(schedule)).expect("schedule serializes")
}
