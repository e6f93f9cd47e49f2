//! The `entx` command line: argument parsing, dispatch to the protocols,
//! and record emission.

mod grid;
mod output;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;
use std::thread;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

pub use grid::Grid;
pub use output::{format_real, render, render_csv, render_json, write_atomic, Format};

use crate::error::Error;
use crate::measures::{concurrence, pairwise_concurrence};
use crate::protocol::{
    channel_fixed_point, collide_once, concurrence_surface, fit_exponential, repeated_collisions,
    spin_star_sweep, threshold_scan, w_extraction, w_extraction_expected,
};
use crate::record::{Status, SweepRecord, Value};
use crate::states::{ground_state, pair_state, Boundary, CorrelationPair, PureState};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Numeric and closed-form spin-star values further apart than this are
/// flagged.
const STAR_MISMATCH_TOL: f64 = 1e-9;
const W_MISMATCH_TOL: f64 = 1e-10;
const MAX_CLI_STAR_CHAIN: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "entx", version, about = "Entanglement extraction from spin chains by probe collisions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for grid evaluation (default: available parallelism).
    #[arg(long, global = true, env = "ENTX_WORKERS")]
    pub workers: Option<usize>,

    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Seed for randomized inputs. No current subcommand draws random numbers.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TimeArgs {
    /// Coupling area J·τ.
    #[arg(long = "j-tau", allow_negative_numbers = true)]
    pub j_tau: Option<f64>,
    /// `start:stop:count` grid of J·τ values.
    #[arg(long = "j-tau-grid", allow_hyphen_values = true)]
    pub j_tau_grid: Option<Grid>,
}

impl TimeArgs {
    fn values(&self) -> Vec<f64> {
        match (&self.j_tau, &self.j_tau_grid) {
            (Some(t), _) => vec![*t],
            (None, Some(g)) => g.0.clone(),
            (None, None) => unreachable!("clap enforces one of the two"),
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CorrelationArgs {
    /// Nearest-neighbour correlation, used for both g_xx and g_zz.
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// `start:stop:count` grid of g values.
    #[arg(long = "g-grid", allow_hyphen_values = true)]
    pub g_grid: Option<Grid>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single collision with optimized product probes, over a (g, J·τ) grid.
    Collide {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda: f64,
        #[command(flatten)]
        g: CorrelationArgs,
        #[command(flatten)]
        time: TimeArgs,
    },
    /// Repeated collisions with fresh chain pairs, probes starting in |00⟩.
    Iterate {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, allow_negative_numbers = true)]
        g: f64,
        #[arg(long = "j-tau", allow_negative_numbers = true)]
        j_tau: f64,
        #[arg(long)]
        steps: usize,
        /// Also solve for the channel fixed point.
        #[arg(long = "fixed-point")]
        fixed_point: bool,
    },
    /// Two probes coupled to disjoint blocks of an L-spin W state.
    Spinstar {
        #[arg(long = "L")]
        chain_len: usize,
        #[arg(long = "N")]
        spins_per_probe: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lambda: f64,
        #[command(flatten)]
        time: TimeArgs,
    },
    /// Ground-state correlations of XXZ chains and their extractable concurrence.
    Groundstate {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda: f64,
        /// Chain lengths, comma separated.
        #[arg(long = "L", value_delimiter = ',', required = true)]
        chain_len: Vec<usize>,
        #[arg(long, default_value = "open")]
        boundary: Boundary,
    },
    /// N probes extracting an N-spin W state.
    Wstate {
        #[arg(long = "N")]
        probes: usize,
        #[command(flatten)]
        time: TimeArgs,
    },
    /// Extraction thresholds in g along g_xx = g_zz.
    Thresholds {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        lambda: f64,
        /// J·τ values to test; defaults to kπ/24 for k = 1..11.
        #[arg(long = "j-tau-grid", allow_hyphen_values = true)]
        j_tau_grid: Option<Grid>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(Error),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(e) => write!(f, "numerical failure: {e}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_config_error() {
            CliError::Config(e.to_string())
        } else {
            CliError::Numerical(e)
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("entx: {e}");
            e.exit_code()
        }
    }
}

/// Runs the command and writes its output.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let records = run(cli)?;
    let bytes = render(&records, cli.format)?;
    match &cli.out {
        Some(path) => write_atomic(path, &bytes)?,
        None => io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}

/// Runs the command on a worker pool and returns its records in grid order.
pub fn run(cli: &Cli) -> Result<Vec<SweepRecord>, CliError> {
    let workers = match cli.workers {
        Some(0) => return Err(config("--workers must be at least 1")),
        Some(n) => n,
        None => thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| config(format!("cannot start {workers} workers: {e}")))?;
    pool.install(|| dispatch(&cli.command))
}

fn finite(name: &str, x: f64) -> Result<(), CliError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(config(format!("--{name} must be finite, got {x}")))
    }
}

fn dispatch(cmd: &Command) -> Result<Vec<SweepRecord>, CliError> {
    match cmd {
        Command::Collide { lambda, g, time } => {
            let gs = match (&g.g, &g.g_grid) {
                (Some(x), _) => vec![*x],
                (None, Some(grid)) => grid.0.clone(),
                (None, None) => unreachable!("clap enforces one of the two"),
            };
            cmd_collide(*lambda, &gs, &time.values())
        }
        Command::Iterate { lambda, g, j_tau, steps, fixed_point } => {
            cmd_iterate(*lambda, *g, *j_tau, *steps, *fixed_point)
        }
        Command::Spinstar { chain_len, spins_per_probe, lambda, time } => {
            cmd_spinstar(*chain_len, *spins_per_probe, *lambda, &time.values())
        }
        Command::Groundstate { lambda, chain_len, boundary } => cmd_groundstate(*lambda, chain_len, *boundary),
        Command::Wstate { probes, time } => cmd_wstate(*probes, &time.values()),
        Command::Thresholds { lambda, j_tau_grid } => {
            let grid = match j_tau_grid {
                Some(g) => g.0.clone(),
                None => (1..=11).map(|k| k as f64 * std::f64::consts::PI / 24.0).collect(),
            };
            cmd_thresholds(*lambda, &grid)
        }
    }
}

fn zero_probes() -> crate::states::DensityMatrix {
    PureState::basis(2, 0).expect("two-qubit basis state").density()
}

fn cmd_collide(lambda: f64, gs: &[f64], times: &[f64]) -> Result<Vec<SweepRecord>, CliError> {
    finite("lambda", lambda)?;
    let mut records = concurrence_surface(gs, times, lambda)?;
    records.par_iter_mut().try_for_each(|rec| -> Result<(), CliError> {
        if rec.status != Status::Ok {
            return Ok(());
        }
        let (Some(Value::Real(g)), Some(Value::Real(t))) = (rec.inputs.get("g_xx"), rec.inputs.get("j_tau")) else {
            unreachable!("surface records carry g_xx and j_tau");
        };
        let chain = pair_state(&CorrelationPair::isotropic(*g)?);
        let plain = collide_once(&chain, &zero_probes(), lambda, *t)?;
        rec.auxiliary.insert("concurrence_unoptimized".into(), Value::Real(plain.concurrence));
        Ok(())
    })?;
    Ok(records)
}

fn cmd_iterate(lambda: f64, g: f64, j_tau: f64, steps: usize, fixed_point: bool) -> Result<Vec<SweepRecord>, CliError> {
    finite("lambda", lambda)?;
    finite("j-tau", j_tau)?;
    if steps == 0 {
        return Err(config("--steps must be at least 1"));
    }
    let chain = pair_state(&CorrelationPair::isotropic(g)?);
    let fixed = if fixed_point { Some(channel_fixed_point(&chain, lambda, j_tau)?) } else { None };
    let curve = repeated_collisions(&chain, &zero_probes(), lambda, j_tau, steps)?;
    let base = SweepRecord::new().input("g_xx", g).input("g_zz", g).input("j_tau", j_tau).input("lambda", lambda);
    let mut records: Vec<SweepRecord> = curve
        .iter()
        .map(|s| base.clone().input("step", s.step).with_concurrence(s.concurrence))
        .collect();
    if steps < 3 && fixed.is_none() {
        return Ok(records);
    }
    let mut summary = base.input("step", "summary");
    if steps >= 3 {
        let points: Vec<(usize, f64)> = curve.iter().map(|s| (s.step, s.concurrence)).collect();
        match fit_exponential(&points) {
            Ok(fit) => {
                summary = summary
                    .aux("kappa", fit.kappa)
                    .aux("r_squared", fit.r_squared)
                    .aux("fit_points", fit.points_used);
            }
            Err(e) => summary = summary.with_status(Status::Error, format!("exponential fit failed: {e}")),
        }
    }
    summary = match fixed {
        Some(fp) => summary
            .with_concurrence(fp.concurrence)
            .aux("fixed_point_residual", fp.residual)
            .aux("fixed_point_iterations", fp.iterations_to_converge)
            .aux("fixed_point_cross_check", fp.cross_check_distance),
        None => summary.with_concurrence(curve.last().expect("steps ≥ 1").concurrence),
    };
    records.push(summary);
    Ok(records)
}

fn cmd_spinstar(chain_len: usize, n: usize, lambda: f64, times: &[f64]) -> Result<Vec<SweepRecord>, CliError> {
    finite("lambda", lambda)?;
    if chain_len > MAX_CLI_STAR_CHAIN {
        return Err(config(format!("--L = {chain_len} exceeds {MAX_CLI_STAR_CHAIN}")));
    }
    let outcomes = spin_star_sweep(chain_len, n, lambda, times)?;
    Ok(outcomes
        .into_iter()
        .map(|o| {
            let rec = SweepRecord::new()
                .input("L", chain_len)
                .input("N", n)
                .input("j_tau", o.j_tau)
                .input("lambda", lambda)
                .with_concurrence(o.numeric);
            match o.analytic {
                None => rec,
                Some(a) if (a - o.numeric).abs() > STAR_MISMATCH_TOL => rec
                    .aux("analytic", a)
                    .with_status(Status::Error, format!("numeric and closed form differ by {:.3e}", (a - o.numeric).abs())),
                Some(a) => rec.aux("analytic", a),
            }
        })
        .collect())
}

fn cmd_groundstate(lambda: f64, lens: &[usize], boundary: Boundary) -> Result<Vec<SweepRecord>, CliError> {
    finite("lambda", lambda)?;
    if let Some(l) = lens.iter().find(|&&l| l % 2 != 0) {
        return Err(config(format!("chain length L = {l} must be even (the ground state needs an even number of sites)")));
    }
    let states = lens.par_iter().map(|&l| ground_state(lambda, l, boundary)).collect::<Result<Vec<_>, _>>()?;
    lens.iter()
        .zip(states)
        .map(|(&l, gs)| {
            let c = concurrence(&pair_state(&gs.correlations))?.value;
            Ok(SweepRecord::new()
                .input("L", l)
                .input("boundary", boundary.to_string())
                .input("lambda", lambda)
                .with_concurrence(c)
                .aux("energy", gs.energy)
                .aux("g_xx", gs.correlations.g_xx())
                .aux("g_zz", gs.correlations.g_zz())
                .aux("gap", gs.gap))
        })
        .collect()
}

fn cmd_wstate(n: usize, times: &[f64]) -> Result<Vec<SweepRecord>, CliError> {
    // surface size and time errors before any evolution
    w_extraction_expected(n, 0.0)?;
    if let Some(t) = times.iter().find(|t| !t.is_finite()) {
        return Err(config(format!("--j-tau must be finite, got {t}")));
    }
    let rows = times
        .par_iter()
        .map(|&t| -> Result<SweepRecord, CliError> {
            let rho = w_extraction(n, t)?;
            let deviation = rho.matrix().max_abs_diff(w_extraction_expected(n, t)?.matrix());
            let rec = SweepRecord::new()
                .input("j_tau", t)
                .input("n", n)
                .with_concurrence(pairwise_concurrence(&rho, 0, 1)?)
                .aux("deviation", deviation);
            Ok(if deviation > W_MISMATCH_TOL {
                rec.with_status(Status::Error, format!("reduced state deviates from the closed form by {deviation:.3e}"))
            } else {
                rec
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rows)
}

fn cmd_thresholds(lambda: f64, times: &[f64]) -> Result<Vec<SweepRecord>, CliError> {
    finite("lambda", lambda)?;
    let th = threshold_scan(lambda, times)?;
    let mut rec = SweepRecord::new().input("lambda", lambda).input("grid_points", times.len());
    let mut missing = Vec::new();
    match th.g_boundary {
        Some(g) => rec = rec.aux("g_boundary", g),
        None => missing.push("g_boundary"),
    }
    match th.g_always {
        Some(g) => rec = rec.aux("g_always", g),
        None => missing.push("g_always"),
    }
    if !missing.is_empty() {
        rec = rec.with_status(Status::Error, format!("no extraction even at g = -1/4 for {}", missing.join(", ")));
    }
    Ok(vec![rec])
}
