use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use freezetag::format::{parse_instance, serialize_instance, serialize_schedule, FormatError};
use freezetag::report::{csv_table, human_table, svg_gantt};
use freezetag::{generate, run, Algorithm, Family, Params, RunParams, SolveReport};
use freezetag_core::Error;
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "freezetag", version, about = "Freeze-Tag wake-up schedules: solve, generate, benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance file and write its schedule.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        algorithm: Algorithm,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Write a generated instance.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long)]
        heavy: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Run several algorithms on every instance file of a directory.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, value_delimiter = ',')]
        algorithms: Vec<Algorithm>,
        #[arg(long)]
        csv: PathBuf,
        /// Leave the timing column empty so the CSV is reproducible.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        opts: SolveOpts,
    },
}

#[derive(Args)]
struct SolveOpts {
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    /// Θ-graph sectors.
    #[arg(long = "K", default_value_t = 9)]
    k: usize,
    /// Accept fewer than 9 sectors.
    #[arg(long)]
    allow_few_sectors: bool,
    #[arg(long)]
    m_override: Option<usize>,
    #[arg(long)]
    allow_large_m: bool,
    #[arg(long)]
    allow_small_epsilon: bool,
    /// Make the online cascade fail on any look outside its view.
    #[arg(long)]
    online: bool,
    /// Compare against the exact optimum when the instance is small enough.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 10)]
    max_robots: usize,
    /// Seconds allowed for each exact search.
    #[arg(long)]
    time_budget: Option<f64>,
}

impl SolveOpts {
    fn params(&self) -> RunParams {
        let mut p = RunParams {
            epsilon: self.epsilon,
            k: self.k,
            allow_few_sectors: self.allow_few_sectors,
            m_override: self.m_override,
            allow_large_m: self.allow_large_m,
            allow_small_epsilon: self.allow_small_epsilon,
            enforce_view: self.online,
            oracle: self.oracle,
            time_budget: self.time_budget.map(Duration::from_secs_f64),
            ..RunParams::default()
        };
        p.limits.max_robots = self.max_robots;
        p
    }
}

enum Failure {
    Io(String),
    Validation(String),
    Capacity(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Capacity(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Validation(m) | Failure::Capacity(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } | Error::Budget(_) => Failure::Capacity(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

fn read_instance(path: &Path) -> Result<freezetag_core::Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e: FormatError| Failure::Validation(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn label(path: &Path) -> String {
    path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned())
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Solve {
            input,
            algorithm,
            output,
            svg,
            opts,
        } => {
            let instance = read_instance(&input)?;
            let outcome = run(&instance, algorithm, &opts.params(), &label(&input))?;
            let schedule = outcome.tree.schedule(&instance)?;
            write(&output, &serialize_schedule(&schedule))?;
            if let Some(svg) = svg {
                write(&svg, &svg_gantt(&instance, &outcome.tree)?)?;
            }
            if !outcome.report.optimal {
                eprintln!("note: time budget ran out, the schedule may not be optimal");
            }
            print!("{}", human_table(&[outcome.report]));
            Ok(())
        }
        Command::Gen {
            family,
            k,
            n,
            q,
            epsilon,
            heavy,
            seed,
            output,
        } => {
            let params = Params {
                k,
                n,
                q,
                epsilon,
                heavy,
                seed,
            };
            let instance = generate(family, &params)?;
            write(&output, &serialize_instance(&instance))
        }
        Command::Bench {
            dir,
            algorithms,
            csv,
            no_timing,
            opts,
        } => {
            let mut files: Vec<PathBuf> = fs::read_dir(&dir)
                .map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            let instances = files
                .iter()
                .map(|f| read_instance(f).map(|i| (label(f), i)))
                .collect::<Result<Vec<_>, _>>()?;
            let params = &opts.params();
            let algorithms = &algorithms;
            let mut reports: Vec<SolveReport> = instances
                .par_iter()
                .flat_map_iter(|(name, inst)| {
                    algorithms.iter().filter_map(move |&a| match run(inst, a, params, name) {
                        Ok(o) => Some(o.report),
                        Err(e) => {
                            eprintln!("skipping {a} on {name}: {e}");
                            None
                        }
                    })
                })
                .collect();
            reports.sort_by(|a, b| {
                (&a.digest, a.algorithm, &a.instance).cmp(&(&b.digest, b.algorithm, &b.instance))
            });
            write(&csv, &csv_table(&reports, !no_timing))?;
            print!("{}", human_table(&reports));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
