//! Command-line front end for the `sumsets` library.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! status with the rendered report: `0` when every check holds, `2` when a
//! mathematical check fails, `1` on usage or input errors.

mod input;
mod render;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sumsets::maxconv::{check_prop21, lambda_of_p, max_convolve, verify_pl_continuous, verify_star1};
use sumsets::quasicube::{
    contained_in_quasicube, contained_in_quasicube_up_to_permutation, enumerate_canonical_quasicubes,
    enumerate_quasicubes, is_quasicube, is_quasicube_up_to_permutation, PermutedWitness,
};
use sumsets::verifier::{check_theorem, exhaustive_scan, extremal_search, proof_trace, ScanSpec, SearchSpec, USource};
use sumsets::{BoxBounds, Config, PointSet, Witness};

use render::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(sumsets::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Library(e) => write!(f, "{e}"),
        }
    }
}

impl From<sumsets::Error> for CliError {
    fn from(e: sumsets::Error) -> Self {
        CliError::Library(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "sumsets", version, about = "Sumsets, quasicubes and max-convolution checks")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Config file of `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the effective configuration and exit.
    #[arg(long, global = true)]
    print_config: bool,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Grid points per unit cell for the continuous checks.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Maximum number of instances a scan may evaluate.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    steps: Option<u64>,
    #[arg(long, global = true)]
    restarts: Option<usize>,
    /// Cap on instances recorded per category in scan summaries.
    #[arg(long, global = true)]
    max_recorded: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
    Csv,
}

#[derive(Args, Debug)]
struct Triple {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute A + B (+ U).
    Sumset {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        /// Translate the result so its minimum corner is the origin.
        #[arg(long)]
        canonical: bool,
    },
    /// Max-convolution of two weight functions on Z.
    Maxconv {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Weighted discrete Prekopa-Leindler check.
    CheckPl {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        p: f64,
        /// Also run the grid checks on the piecewise-exponential lifts.
        #[arg(long)]
        continuous: bool,
    },
    /// Exact check of |A+B+U|^2 >= |A||B||U|^2.
    CheckTheorem {
        #[command(flatten)]
        sets: Triple,
        #[arg(long, overrides_with = "no_require_quasicube")]
        require_quasicube: bool,
        #[arg(long)]
        no_require_quasicube: bool,
    },
    /// Replay the proof on one instance.
    Trace {
        #[command(flatten)]
        sets: Triple,
        /// Levels of child traces shown in text output.
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Exhaustive scan over a box.
    Scan {
        #[arg(long = "box")]
        bounds: String,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        max_a: Option<usize>,
        #[arg(long)]
        max_b: Option<usize>,
        /// Scan the nonempty subsets of this set as U.
        #[arg(long, conflicts_with = "u_box", allow_hyphen_values = true)]
        u: Option<String>,
        /// Scan the quasicube subsets of this box as U (default: --box).
        #[arg(long)]
        u_box: Option<String>,
        #[arg(long)]
        max_u: Option<usize>,
    },
    /// Randomized search for small ratios.
    Search {
        #[arg(long = "box")]
        bounds: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Quasicube recognition and enumeration.
    #[command(subcommand)]
    Quasicube(QuasicubeCommand),
}

#[derive(Subcommand, Debug)]
enum QuasicubeCommand {
    /// Is the set itself a quasicube?
    Is {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Also try every permutation of the axes.
        #[arg(long)]
        permute: bool,
    },
    /// Is the set contained in some quasicube?
    Contains {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        permute: bool,
    },
    /// List every quasicube inside a box.
    Enumerate {
        #[arg(long = "box")]
        bounds: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Only quasicubes whose minimum corner is the origin.
        #[arg(long)]
        canonical: bool,
    },
}

/// Exit status and what the process prints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    body: String,
    ok: bool,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(cli) {
        Ok((report, out)) => {
            let code = if report.ok { EXIT_OK } else { EXIT_CHECK_FAILED };
            let stderr = if report.ok { String::new() } else { "check failed\n".to_string() };
            match out {
                None => Outcome { code, stdout: report.body, stderr },
                Some(path) => match fs::write(&path, &report.body) {
                    Ok(()) => Outcome { code, stdout: String::new(), stderr },
                    Err(e) => Outcome {
                        code: EXIT_USAGE,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    },
                },
            }
        }
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn effective_config(g: &GlobalArgs) -> Result<Config, CliError> {
    let mut config = match &g.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            Config::from_kv_text(&text)?
        }
        None => Config::default(),
    };
    if let Some(v) = g.rel_tol {
        config.rel_tol = v;
    }
    if let Some(v) = g.grid {
        config.grid_per_cell = v;
    }
    if let Some(v) = g.budget {
        config.budget = v;
    }
    if let Some(v) = g.workers {
        config.workers = v;
    }
    if let Some(v) = g.seed {
        config.seed = v;
    }
    if let Some(v) = g.steps {
        config.steps = v;
    }
    if let Some(v) = g.restarts {
        config.restarts = v;
    }
    if let Some(v) = g.max_recorded {
        config.max_recorded = v;
    }
    config.validate()?;
    Ok(config)
}

fn execute(cli: Cli) -> Result<(Report, Option<PathBuf>), CliError> {
    let config = effective_config(&cli.global)?;
    let format = match cli.global.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
        FormatArg::Csv => Format::Csv,
    };
    let out = cli.global.out.clone();
    if cli.global.print_config {
        let body = match format {
            Format::Json => render::json(&config),
            Format::Text => config.to_kv_text(),
            Format::Csv => render::csv_record(&config)?,
        };
        return Ok((Report { body, ok: true }, out));
    }
    let Some(command) = cli.command else {
        return Err(CliError::Usage("no subcommand given; see --help".into()));
    };
    let report = match command {
        Command::Sumset { a, b, u, dim, canonical } => {
            let a = input::point_set("--a", &a, dim)?;
            let b = input::point_set("--b", &b, Some(a.dim()))?;
            let mut s = a.sumset(&b)?;
            if let Some(u) = u {
                s = s.sumset(&input::point_set("--u", &u, Some(a.dim()))?)?;
            }
            if canonical && !s.is_empty() {
                s = s.canonicalize()?;
            }
            Report { body: render::point_set(&s, format)?, ok: true }
        }
        Command::Maxconv { a, b } => {
            let a = input::weight("--a", &a)?;
            let b = input::weight("--b", &b)?;
            Report { body: render::weight(&max_convolve(&a, &b), format)?, ok: true }
        }
        Command::CheckPl { a, b, p, continuous } => {
            let a = input::weight("--a", &a)?;
            let b = input::weight("--b", &b)?;
            let pl = check_prop21(&a, &b, p, config.rel_tol)?;
            if continuous {
                let star1 = verify_star1(&a, &b, p, config.grid_per_cell, config.rel_tol)?;
                let lifted = verify_pl_continuous(&a, &b, lambda_of_p(p)?, config.grid_per_cell, config.rel_tol)?;
                let ok = pl.holds && star1.holds && lifted.holds;
                let body = render::continuous(&pl, &star1, &lifted, format)?;
                Report { body, ok }
            } else {
                Report { ok: pl.holds, body: render::record(&pl, format)? }
            }
        }
        Command::CheckTheorem { sets, no_require_quasicube, .. } => {
            let (a, b, u) = triple(&sets)?;
            let r = check_theorem(&a, &b, &u, !no_require_quasicube)?;
            Report { ok: r.holds, body: render::record(&r, format)? }
        }
        Command::Trace { sets, depth } => {
            let (a, b, u) = triple(&sets)?;
            let t = proof_trace(&a, &b, &u, config.rel_tol)?;
            Report { ok: t.valid && t.bound_respected(), body: render::trace(&t, depth, format)? }
        }
        Command::Scan { bounds, dim, max_a, max_b, u, u_box, max_u } => {
            let ab_box = BoxBounds::parse(&bounds, dim)?;
            let points = usize::try_from(ab_box.num_points()).unwrap_or(usize::MAX);
            let u_source = match (u, u_box) {
                (Some(u), _) => USource::SubsetsOf(input::point_set("--u", &u, Some(ab_box.dim()))?),
                (None, Some(ub)) => {
                    USource::InBox { bounds: BoxBounds::parse(&ub, Some(ab_box.dim()))?, max_size: max_u }
                }
                (None, None) => USource::InBox { bounds: ab_box.clone(), max_size: max_u },
            };
            let spec = ScanSpec { ab_box, max_a: max_a.unwrap_or(points), max_b: max_b.unwrap_or(points), u_source };
            let s = exhaustive_scan(&spec, config.budget, config.workers, config.max_recorded)?;
            Report { ok: s.violations == 0, body: render::scan(&s, format)? }
        }
        Command::Search { bounds, dim } => {
            let spec = SearchSpec {
                bounds: BoxBounds::parse(&bounds, dim)?,
                steps: config.steps,
                seed: config.seed,
                restarts: config.restarts,
            };
            let r = extremal_search(&spec, config.workers)?;
            Report { ok: !r.below_one, body: render::search(&r, format)? }
        }
        Command::Quasicube(q) => quasicube(q, format)?,
    };
    Ok((report, out))
}

fn triple(sets: &Triple) -> Result<(PointSet, PointSet, PointSet), CliError> {
    let a = input::point_set("--a", &sets.a, sets.dim)?;
    let b = input::point_set("--b", &sets.b, Some(a.dim()))?;
    let u = input::point_set("--u", &sets.u, Some(a.dim()))?;
    Ok((a, b, u))
}

#[derive(Serialize)]
struct Membership {
    query: &'static str,
    result: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    perm: Option<Vec<usize>>,
    witness: Option<Witness>,
}

impl Membership {
    fn plain(query: &'static str, w: Option<Witness>) -> Self {
        Membership { query, result: w.is_some(), perm: None, witness: w }
    }

    fn permuted(query: &'static str, pw: Option<PermutedWitness>) -> Self {
        match pw {
            Some(pw) => Membership { query, result: true, perm: Some(pw.perm), witness: Some(pw.witness) },
            None => Membership { query, result: false, perm: None, witness: None },
        }
    }
}

const MAX_ENUMERATE: u128 = 1_000_000;

/// Number of quasicubes in a box: `C(side, 2)` height pairs per level, each
/// with two independent children.
fn quasicube_count(b: &BoxBounds) -> u128 {
    let mut count: u128 = 1;
    for axis in 0..b.dim() {
        let side = b.side(axis).max(0) as u128;
        let pairs = side * side.saturating_sub(1) / 2;
        count = pairs.saturating_mul(count.saturating_mul(count));
    }
    count
}

fn quasicube(cmd: QuasicubeCommand, format: Format) -> Result<Report, CliError> {
    let body = match cmd {
        QuasicubeCommand::Is { set, dim, permute } => {
            let s = input::point_set("--set", &set, dim)?;
            let m = if permute {
                Membership::permuted("is", is_quasicube_up_to_permutation(&s))
            } else {
                Membership::plain("is", is_quasicube(&s))
            };
            render::membership(&m, format)?
        }
        QuasicubeCommand::Contains { set, dim, permute } => {
            let s = input::point_set("--set", &set, dim)?;
            let m = if permute {
                Membership::permuted("contains", contained_in_quasicube_up_to_permutation(&s)?)
            } else {
                Membership::plain("contains", contained_in_quasicube(&s)?)
            };
            render::membership(&m, format)?
        }
        QuasicubeCommand::Enumerate { bounds, dim, canonical } => {
            let b = BoxBounds::parse(&bounds, dim)?;
            let count = quasicube_count(&b);
            if count > MAX_ENUMERATE {
                return Err(CliError::Usage(format!(
                    "box {b} holds about {count} quasicubes, more than the limit of {MAX_ENUMERATE}"
                )));
            }
            let list: Vec<Witness> = if canonical {
                enumerate_canonical_quasicubes(&b).collect()
            } else {
                enumerate_quasicubes(&b).collect()
            };
            render::witnesses(&list, format)?
        }
    };
    Ok(Report { body, ok: true })
}
