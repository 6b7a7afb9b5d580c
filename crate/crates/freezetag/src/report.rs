//! Ratio tables and the Gantt chart of a schedule.

use std::fmt::Write as _;

use freezetag_core::{Error, Instance, WakeUpTree};

use crate::run::SolveReport;

pub const COLUMNS: [&str; 9] = [
    "instance",
    "algorithm",
    "makespan",
    "oracle",
    "ratio",
    "time_ms",
    "lower_bound",
    "robots",
    "digest",
];

fn fixed(x: f64) -> String {
    format!("{x:.9}")
}

fn row(r: &SolveReport, with_time: bool) -> [String; 9] {
    [
        r.instance.clone(),
        r.algorithm.to_string(),
        fixed(r.makespan),
        r.oracle.map(fixed).unwrap_or_default(),
        r.ratio.map(fixed).unwrap_or_default(),
        if with_time {
            format!("{:.3}", r.wall_time.as_secs_f64() * 1e3)
        } else {
            String::new()
        },
        fixed(r.lower_bounds.max()),
        r.robots.to_string(),
        r.digest.clone(),
    ]
}

/// CSV with a header row and one row per report, floats to 9 decimals.
/// Without `with_time` the timing column stays empty and the output depends
/// only on the reports' instances and algorithms.
pub fn csv_table(reports: &[SolveReport], with_time: bool) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS).expect("in-memory write");
    for r in reports {
        w.write_record(row(r, with_time)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Aligned plain-text version of [`csv_table`] for terminals.
pub fn human_table(reports: &[SolveReport]) -> String {
    let cols = 6;
    let rows: Vec<[String; 9]> = reports.iter().map(|r| row(r, true)).collect();
    let mut width: Vec<usize> = COLUMNS[..cols].iter().map(|c| c.len()).collect();
    for r in &rows {
        for (w, cell) in width.iter_mut().zip(r.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[&str]| {
        for (i, c) in cells.iter().enumerate() {
            let _ = write!(out, "{:<w$}", c, w = width[i] + 2);
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    };
    line(&mut out, &COLUMNS[..cols]);
    for r in &rows {
        let cells: Vec<&str> = r[..cols].iter().map(String::as_str).collect();
        line(&mut out, &cells);
    }
    out
}

/// Static SVG Gantt chart: one row per robot, grey while asleep, a thin bar
/// for each trip the robot makes and a thick bar once it is awake.
pub fn svg_gantt(instance: &Instance, tree: &WakeUpTree) -> Result<String, Error> {
    let schedule = tree.schedule(instance)?;
    let times = tree.wake_times(instance)?;
    let n = times.len();
    let span = if schedule.makespan > 0.0 { schedule.makespan } else { 1.0 };
    let (left, top, width, row_h) = (60.0, 30.0, 800.0, 16.0);
    let x = |t: f64| left + width * t / span;
    let y = |r: usize| top + row_h * r as f64;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="monospace" font-size="10">"#,
        left + width + 20.0,
        top + row_h * n as f64 + 30.0
    );
    let _ = writeln!(s, r#"<text x="{left}" y="15">makespan {:.6}</text>"#, schedule.makespan);
    for (r, &t) in times.iter().enumerate() {
        let _ = writeln!(s, r#"<text x="5" y="{}">r{r}</text>"#, y(r) + 11.0);
        let _ = writeln!(
            s,
            r##"<rect x="{left}" y="{}" width="{:.3}" height="12" fill="#ddd"/>"##,
            y(r),
            x(t) - left
        );
        let _ = writeln!(
            s,
            r##"<rect x="{:.3}" y="{}" width="{:.3}" height="12" fill="#8ab"/>"##,
            x(t),
            y(r),
            x(span) - x(t)
        );
    }
    for e in &schedule.events {
        let depart = times[tree.parent(e.woken).map_or(0, |p| p.0)];
        let _ = writeln!(
            s,
            r##"<line x1="{:.3}" y1="{:.1}" x2="{:.3}" y2="{:.1}" stroke="#c33" stroke-width="2"/>"##,
            x(depart),
            y(e.waker.0) + 6.0,
            x(e.time),
            y(e.woken.0) + 6.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
