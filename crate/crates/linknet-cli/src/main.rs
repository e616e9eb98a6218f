//! Command-line interface over the linknet library: validation, hulls
//! and shadows, minimal generating polygons, the five-type classifier,
//! linked-projective-space computations and monomial smoothings.
//!
//! Every command prints a header recording the field, n and the window
//! radius actually used, so bounded verification is always explicit.
//! Outputs are deterministic: identical inputs produce identical bytes.

mod commands;
mod output;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_PARSE_ERROR: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "linknet", version, about = "Linked nets over Z^n-quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom checks (weakly linked, linked, exact, pure,
    /// locally finite) on a net document.
    Validate {
        path: PathBuf,
        /// Window radius override (default n+2).
        #[arg(long)]
        radius: Option<usize>,
        /// Bound for the local finiteness check (default: the window's
        /// admissible diameter).
        #[arg(long)]
        finiteness_bound: Option<usize>,
        /// Comma-separated subset of checks to run and gate on
        /// (weakly-linked,linked,exact,pure,locally-finite; default all).
        #[arg(long)]
        checks: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Minimal 1-generating set of the net.
    MinGens {
        path: PathBuf,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Classify a simple net over a Z^2-quiver into Exact or I..V.
    Classify2 {
        path: PathBuf,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Hull P(H) of the vertex set of a document (or a bare JSON array
    /// of vertices).
    Hull {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Shadow of a vertex in the document's hull-closed generator set.
    Shadow {
        path: PathBuf,
        /// The vertex, as comma-separated coordinates, e.g. "1,0,2".
        vertex: String,
        #[arg(long)]
        json: bool,
    },
    /// Render the net as DOT (red = zero arrows, blue = nonzero,
    /// orange = minimal generators).
    Render {
        path: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Linked projective space computations.
    Lp {
        #[command(subcommand)]
        sub: LpCommand,
    },
    /// Monomial smoothings over Q(t).
    Smooth {
        #[command(subcommand)]
        sub: SmoothCommand,
    },
}

#[derive(Subcommand)]
enum LpCommand {
    /// The minor equations of LP_H(V) for the document's hull H.
    Eqs {
        path: PathBuf,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Count the F_q points (the document must be over a prime field).
    Count {
        path: PathBuf,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = 1 << 22)]
        budget: u128,
        #[arg(long)]
        json: bool,
    },
    /// Stratify the F_q points by minimal generating polygon.
    Strata {
        path: PathBuf,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = 1 << 22)]
        budget: u128,
        #[arg(long)]
        json: bool,
    },
    /// Local complete-intersection charts of a polygon-generated net.
    Charts {
        path: PathBuf,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Jacobian rank classification of every F_q point.
    Jacobian {
        path: PathBuf,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = 1 << 22)]
        budget: u128,
        #[arg(long)]
        json: bool,
    },
    /// Multigraded Hilbert table of the coordinate ring of LP_H(V).
    Hilbert {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
        /// Emit CSV instead of the aligned table.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Subcommand)]
enum SmoothCommand {
    /// Construct the monomial smoothing and write it as a Q(t) document.
    Build {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Construct the smoothing and report the validation flags.
    Check {
        path: PathBuf,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert-table comparison with the small diagonal.
    Degeneration {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
        /// Emit CSV instead of the aligned table.
        #[arg(long)]
        csv: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate {
            path,
            radius,
            finiteness_bound,
            checks,
            json,
        } => commands::validate(&path, radius, finiteness_bound, checks.as_deref(), json),
        Command::MinGens { path, radius, json } => commands::min_gens(&path, radius, json),
        Command::Classify2 { path, radius, json } => commands::classify2(&path, radius, json),
        Command::Hull { path, json } => commands::hull(&path, json),
        Command::Shadow { path, vertex, json } => commands::shadow(&path, &vertex, json),
        Command::Render { path, out, radius } => commands::render(&path, out.as_deref(), radius),
        Command::Lp { sub } => match sub {
            LpCommand::Eqs { path, radius, json } => commands::lp_eqs(&path, radius, json),
            LpCommand::Count {
                path,
                radius,
                budget,
                json,
            } => commands::lp_count(&path, radius, budget, json),
            LpCommand::Strata {
                path,
                radius,
                budget,
                json,
            } => commands::lp_strata(&path, radius, budget, json),
            LpCommand::Charts { path, radius, json } => commands::lp_charts(&path, radius, json),
            LpCommand::Jacobian {
                path,
                radius,
                budget,
                json,
            } => commands::lp_jacobian(&path, radius, budget, json),
            LpCommand::Hilbert {
                path,
                bound,
                radius,
                budget,
                csv,
            } => commands::lp_hilbert(&path, bound, radius, budget, csv),
        },
        Command::Smooth { sub } => match sub {
            SmoothCommand::Build { path, out, radius } => {
                commands::smooth_build(&path, out.as_deref(), radius)
            }
            SmoothCommand::Check { path, radius, json } => {
                commands::smooth_check(&path, radius, json)
            }
            SmoothCommand::Degeneration {
                path,
                bound,
                radius,
                budget,
                csv,
            } => commands::smooth_degeneration(&path, bound, radius, budget, csv),
        },
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
