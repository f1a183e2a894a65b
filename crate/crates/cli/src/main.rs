//! `hopfo`: exact computations in stable module categories of Hopf and
//! comodule algebras.

mod check;
mod commands;
mod examples;
mod field;
mod pretty;
mod report;
mod workspace;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand};

use crate::check::{Params, Suite};
use crate::field::with_field;
use crate::report::Report;
use crate::workspace::{builtin_in_args, locate, natural_characteristic, WorkspaceFile};

#[derive(Parser)]
#[command(name = "hopfo", version, about, long_about = None)]
struct Cli {
    /// Workspace file (JSON). Relative paths are also looked up in
    /// $HOPFO_WORKSPACE_DIR, whose workspace.json is the default.
    #[arg(short, long, global = true)]
    workspace: Option<PathBuf>,

    /// Characteristic when no workspace fixes it (0 for the rationals).
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,

    /// Print witnesses (maps, representatives, counterexamples).
    #[arg(long, global = true)]
    witness: bool,

    /// Also write the results as JSON to this file.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a Hopf algebra, (co)module algebra, module,
    /// morphism or complex.
    Verify {
        /// A workspace name, `builtin:<spec>`, `<base>/<kind>` or `<op>:<module>`.
        object: String,
    },
    /// The stable category: Hom, zero objects, shifts, cones, triangles.
    #[command(subcommand)]
    Stable(StableCmd),
    /// Complexes, resolutions and Ext.
    #[command(subcommand)]
    Derived(DerivedCmd),
    /// Run seeded property suites over the corpus and the workspace.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest dimension of randomly generated modules.
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// Random cases per corpus entry and property.
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// Number of maps in the long exact sequences.
        #[arg(long, default_value_t = 5)]
        window: usize,
        /// Ext degrees, e.g. `1..3`.
        #[arg(long = "i", default_value = "1..3", value_parser = parse_degrees)]
        degrees: RangeInclusive<usize>,
    },
    /// The shipped example workspaces.
    #[command(subcommand)]
    Examples(ExamplesCmd),
}

#[derive(Subcommand)]
enum StableCmd {
    /// Stable Hom(M, N).
    Hom { m: String, n: String },
    /// Whether M is zero in the stable category.
    Zero { m: String },
    /// M[n]; negative n shifts down.
    Shift {
        m: String,
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// The cone of a morphism.
    Cone { f: String },
    /// The standard triangle of a morphism and its long exact sequences.
    Triangle {
        f: String,
        #[arg(long, default_value_t = 5)]
        window: usize,
        /// Test objects X for sHom(X, −) (default: source and target).
        #[arg(long)]
        against: Vec<String>,
    },
}

#[derive(Subcommand)]
enum DerivedCmd {
    /// Morphisms in the homotopy category between two complexes.
    Hom { c: String, d: String },
    /// Ext^i(M, N) for i ≥ 1.
    Ext { m: String, n: String, degree: usize },
    /// Whether a complex is perfect.
    Perfect { c: String },
    /// The standard E-projective resolution of M.
    Resolve {
        m: String,
        #[arg(long, default_value_t = 2)]
        length: usize,
    },
    /// Compare dim Ext^i(M, N) with dim sHom(M, N[i]).
    Rickard {
        m: String,
        n: String,
        #[arg(long = "i", default_value = "1..3", value_parser = parse_degrees)]
        degrees: RangeInclusive<usize>,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    /// List the example workspaces.
    List,
    /// Write an example workspace (or `all`) to stdout or a directory.
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// `3` or `1..3` (inclusive).
fn parse_degrees(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("`{x}` is not a degree"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => (parse(s)?, parse(s)?),
    };
    if a == 0 || a > b {
        return Err(format!("degree range `{s}` must be nonempty and start at 1 or later"));
    }
    Ok(a..=b)
}

/// The workspace (or an empty one) and the characteristic to work in.
fn context(cli: &Cli, args: &[String]) -> Result<(Option<WorkspaceFile>, u64)> {
    let file = match locate(cli.workspace.as_deref())? {
        Some(p) => Some(WorkspaceFile::load(&p)?),
        None => None,
    };
    let p = match (&file, cli.characteristic) {
        (Some(f), Some(c)) if f.characteristic != c => {
            bail!("--char {c} conflicts with the workspace characteristic {}", f.characteristic)
        }
        (Some(f), _) => f.characteristic,
        (None, Some(c)) => c,
        (None, None) => builtin_in_args(args.iter().map(String::as_str)).map_or(2, |b| natural_characteristic(&b)),
    };
    Ok((file, p))
}

fn run(cli: Cli) -> Result<bool> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let Command::Examples(cmd) = &cli.command {
        match cmd {
            ExamplesCmd::List => examples::list(),
            ExamplesCmd::Emit { name, out } => examples::emit(name, out.as_deref())?,
        }
        return Ok(true);
    }
    let (file, p) = context(&cli, &args)?;
    let mut report = Report::new(args, Some(p));
    let ws = file.clone().unwrap_or(WorkspaceFile { characteristic: p, ..Default::default() });
    let r = &mut report;
    with_field!(p, F => {
        match &cli.command {
            Command::Verify { object } => commands::verify::<F>(&ws, object, r),
            Command::Stable(cmd) => match cmd {
                StableCmd::Hom { m, n } => commands::stable_hom_cmd::<F>(&ws, m, n, r),
                StableCmd::Zero { m } => commands::stable_zero_cmd::<F>(&ws, m, r),
                StableCmd::Shift { m, n } => commands::stable_shift_cmd::<F>(&ws, m, *n, r),
                StableCmd::Cone { f } => commands::stable_cone_cmd::<F>(&ws, f, r),
                StableCmd::Triangle { f, window, against } => commands::stable_triangle_cmd::<F>(&ws, f, *window, against, r),
            },
            Command::Derived(cmd) => match cmd {
                DerivedCmd::Hom { c, d } => commands::derived_hom_cmd::<F>(&ws, c, d, r),
                DerivedCmd::Ext { m, n, degree } => commands::derived_ext_cmd::<F>(&ws, m, n, *degree, r),
                DerivedCmd::Perfect { c } => commands::derived_perfect_cmd::<F>(&ws, c, r),
                DerivedCmd::Resolve { m, length } => commands::derived_resolve_cmd::<F>(&ws, m, *length, r),
                DerivedCmd::Rickard { m, n, degrees } => commands::derived_rickard_cmd::<F>(&ws, m, n, degrees.clone(), r),
            },
            Command::Check { suite, seed, max_dim, count, window, degrees } => {
                let params = Params { seed: *seed, max_dim: *max_dim, count: *count, window: *window, degrees: degrees.clone() };
                check::run::<F>(file.as_ref(), *suite, &params, r)
            }
            Command::Examples(_) => Err(anyhow!("handled above")),
        }
    })?;
    report.print(cli.witness);
    if let Some(path) = &cli.report {
        report.write(path)?;
    }
    if !report.passed {
        for row in report.checks.iter().filter(|r| r.status == report::Status::Fail) {
            eprintln!("failed: {}{}", row.name, row.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default());
        }
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
