//! `copos`: certify or refute copositivity of quadratic functions and run
//! the planar cone operations behind the certificate.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use copositive::cone2d::AngleUnit;

/// Exit status for malformed input or usage (sysexits `EX_USAGE`).
pub const EXIT_USAGE: u8 = 64;
/// No strictly feasible point for `h` was found.
pub const EXIT_SLATER: u8 = 65;
/// Input file could not be read (`EX_NOINPUT`).
pub const EXIT_NOINPUT: u8 = 66;
/// Numerical failure inside the solver (`EX_SOFTWARE`).
pub const EXIT_NUMERIC: u8 = 70;

#[derive(Parser, Debug)]
#[command(name = "copos", version, about = "Copositivity certificates for quadratic functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether h(x) >= 0 implies g(x) >= 0 and print a JSON verdict.
    Certify(CertifyArgs),
    /// Print the lifted matrices and the single-variable LMI as JSON.
    Lift {
        path: PathBuf,
    },
    /// Planar cone operations.
    Cone {
        #[command(subcommand)]
        op: ConeOp,
        #[command(flatten)]
        units: Units,
    },
    /// Sample the joint-range curve t -> (g(x(t)), h(x(t))) as CSV.
    Curve(CurveArgs),
    /// Random line search for a point with h(x) >= 0 > g(x).
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = copositive::quadform::DEFAULT_ORACLE_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the built-in acceptance suites.
    Selftest {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args, Debug)]
struct CertifyArgs {
    path: PathBuf,
    /// Relative PSD tolerance for accepting a certificate.
    #[arg(long)]
    tol: Option<f64>,
    /// Relative margin band reported as indeterminate.
    #[arg(long)]
    band: Option<f64>,
    /// Oracle line-search budget.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Continue without a strictly feasible point for h.
    #[arg(long)]
    force: bool,
    /// Strictly feasible point, overriding "x0" from the file.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    /// Record wall time in the report (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum ConeOp {
    Dual {
        #[arg(allow_hyphen_values = true)]
        cone: String,
    },
    Intersect {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Sum {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Compare (a ∩ b)* with a* + b*.
    Check {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Units {
    /// Angles in radians, for input and output.
    #[arg(long, global = true, conflicts_with = "deg")]
    rad: bool,
    /// Angles in degrees (the default).
    #[arg(long, global = true)]
    deg: bool,
}

impl Units {
    fn unit(self) -> AngleUnit {
        if self.rad {
            AngleUnit::Radians
        } else {
            AngleUnit::Degrees
        }
    }
}

#[derive(Args, Debug)]
struct CurveArgs {
    path: PathBuf,
    /// Point at t = 1.
    #[arg(long, allow_hyphen_values = true)]
    x1: String,
    /// Point at t = 0.
    #[arg(long, allow_hyphen_values = true)]
    x2: String,
    #[arg(long, default_value_t = 201)]
    samples: usize,
    /// Either R for [-R, R] or "lo,hi".
    #[arg(long, default_value = "5", allow_hyphen_values = true)]
    range: String,
    /// Append a homogenization-convexity check of the samples.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    units: Units,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut out = std::io::stdout().lock();
    let result = match cli.command {
        Command::Certify(args) => commands::certify(&args, &mut out),
        Command::Lift { path } => commands::lift(&path, &mut out),
        Command::Cone { op, units } => commands::cone(&op, units.unit(), &mut out),
        Command::Curve(args) => commands::curve(&args, &mut out),
        Command::Oracle { path, budget, seed } => commands::oracle(&path, budget, seed, &mut out),
        Command::Selftest { full, .. } => commands::selftest(full, &mut out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("copos: {e}");
            ExitCode::from(e.code)
        }
    }
}
