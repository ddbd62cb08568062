//! Command-line frontend. Each subcommand writes one JSON report to
//! stdout or to `--out`; the process exit code is 0 for any verdict and
//! [`Error::exit_code`] otherwise.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::monodromy::{analyze_point, section_monodromy, Hypersurface, MonodromyOptions};
use crate::poly::{parse_point, ProjectivePoint};
use crate::report::{Report, RunConfig, Timing};
use crate::scan::{scan_region, GridSpec, PointFilter, ScanOptions, ScanRegion};
use crate::tangency::lines_through;

#[derive(Debug, Parser)]
#[command(name = "galpoint", version, about = "Uniform, non-uniform and Galois points of projections of hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monodromy group and verdict for the projection from a point.
    Analyze(PointArgs),
    /// Tangent and multitangent lines through a point of the plane.
    Tangency(PointArgs),
    /// Scan a region for non-uniform and Galois points.
    Scan(ScanArgs),
    /// Plane-section monodromy for a hypersurface of dimension at least 2.
    Section(PointArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Homogeneous polynomial, e.g. "x^4+y^4+z^4".
    #[arg(long)]
    pub poly: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Tolerance for matching roots at the end of a loop.
    #[arg(long, default_value_t = 1e-6)]
    pub eps_cluster: f64,
    /// Relative Newton tolerance of the path tracker.
    #[arg(long, default_value_t = 1e-12)]
    pub track_tol: f64,
    /// Plane sections sampled in dimension at least 2.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    /// Worker threads; all cores by default.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub common: Common,
    /// Center as comma-separated homogeneous rationals, e.g. "1/2,3,-1".
    #[arg(long)]
    pub point: String,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: Common,
    /// Grid values `lo:hi:n`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Affine chart of the grid (index of the coordinate set to 1); without
    /// it every homogeneous coordinate runs over the grid.
    #[arg(long)]
    pub chart: Option<usize>,
    /// Seeded random points.
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    /// Seeded rational points of the hypersurface.
    #[arg(long, default_value_t = 0)]
    pub inner: usize,
    /// Extra points, separated by semicolons.
    #[arg(long)]
    pub points: Option<String>,
    /// outer, inner or both.
    #[arg(long, default_value = "both")]
    pub filter: String,
    /// Per-point time budget in seconds.
    #[arg(long, default_value_t = 5.0)]
    pub time_cap: f64,
    /// Fraction of prefilter-rejected points re-checked by monodromy.
    #[arg(long, default_value_t = 0.05)]
    pub cross_check: f64,
}

impl Common {
    fn options(&self) -> MonodromyOptions {
        let mut opts = MonodromyOptions::default();
        opts.track.cluster_tol = self.eps_cluster;
        opts.track.tol = self.track_tol;
        opts.trials = self.trials;
        opts
    }

    fn config(&self, command: &str, x: &Hypersurface, point: Option<ProjectivePoint>) -> RunConfig {
        let mut config = RunConfig::new(command, x.poly().to_string(), point, self.seed, self.options());
        config.threads = self.threads;
        config
    }
}

fn emit(common: &Common, json: &str) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, format!("{json}\n"))?,
        None => writeln!(std::io::stdout().lock(), "{json}")?,
    }
    Ok(())
}

fn finish(common: &Common, mut report: Report, started: Instant) -> Result<()> {
    if common.timing {
        report.timing = Some(Timing {
            total_ms: started.elapsed().as_secs_f64() * 1e3,
        });
    }
    emit(common, &report.to_json()?)
}

fn parse_input(common: &Common, point: &str) -> Result<(Hypersurface, ProjectivePoint)> {
    let x = Hypersurface::parse(&common.poly)?;
    let p = parse_point(point)?;
    x.check_point(&p)?;
    Ok((x, p))
}

pub fn cmd_analyze(args: &PointArgs) -> Result<()> {
    let started = Instant::now();
    let (x, p) = parse_input(&args.common, &args.point)?;
    let result = analyze_point(&x, &p, args.common.seed, &args.common.options())?;
    let report = Report::from_monodromy(args.common.config("analyze", &x, Some(p)), &result);
    finish(&args.common, report, started)
}

pub fn cmd_tangency(args: &PointArgs) -> Result<()> {
    let started = Instant::now();
    let (x, p) = parse_input(&args.common, &args.point)?;
    let lines = lines_through(&x, &p, args.common.seed)?;
    let report = Report::from_tangency(args.common.config("tangency", &x, Some(p)), &lines);
    finish(&args.common, report, started)
}

pub fn cmd_section(args: &PointArgs) -> Result<()> {
    let started = Instant::now();
    let (x, p) = parse_input(&args.common, &args.point)?;
    let opts = args.common.options();
    let s = section_monodromy(&x, &p, args.common.seed, opts.trials, &opts)?;
    let report = Report::from_monodromy(args.common.config("section", &x, Some(p)), &s.result);
    finish(&args.common, report, started)
}

pub fn cmd_scan(args: &ScanArgs) -> Result<()> {
    let x = Hypersurface::parse(&args.common.poly)?;
    let points = match &args.points {
        Some(text) => text
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(parse_point)
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let region = ScanRegion {
        chart: args.chart,
        grid: args.grid.as_deref().map(str::parse::<GridSpec>).transpose()?,
        random: args.random,
        inner: args.inner,
        points,
        filter: args.filter.parse::<PointFilter>()?,
    };
    if region.grid.is_none() && region.random == 0 && region.inner == 0 && region.points.is_empty() {
        return Err(Error::InvalidInput("empty region: give --grid, --random, --inner or --points".into()));
    }
    let opts = ScanOptions {
        monodromy: args.common.options(),
        time_cap: args.time_cap,
        cross_check: args.cross_check,
    };
    let report = scan_region(&x, &region, args.common.seed, &opts)?;
    let mut config = args.common.config("scan", &x, None);
    config.grid = args.grid.clone();
    let mut json = serde_json::to_value(&report)?;
    json["config"] = serde_json::to_value(&config)?;
    emit(&args.common, &serde_json::to_string_pretty(&json)?)
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Analyze(a) | Command::Tangency(a) | Command::Section(a) => &a.common,
            Command::Scan(s) => &s.common,
        }
    }

    pub fn execute(&self) -> Result<()> {
        match self {
            Command::Analyze(a) => cmd_analyze(a),
            Command::Tangency(a) => cmd_tangency(a),
            Command::Scan(s) => cmd_scan(s),
            Command::Section(a) => cmd_section(a),
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { 2 } else { 0 };
        }
    };
    let threads = cli.command.common().threads.unwrap_or(0);
    let outcome = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| cli.command.execute()),
        Err(err) => Err(Error::InvalidInput(format!("thread pool: {err}"))),
    };
    match outcome {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
