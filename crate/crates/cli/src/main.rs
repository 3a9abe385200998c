//! `unruh-otto`: point evaluations, figure sweeps and oracle checks for the
//! Unruh quantum Otto engine.

mod axis;
mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use axis::Axis;
use table::Format;

#[derive(Parser, Debug)]
#[command(
    name = "unruh-otto",
    version,
    about = "Unruh quantum Otto engine calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; stdout when omitted. Written atomically.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Coupling {
    /// Coupling constant.
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    /// Required ratio a / (g^2 artanh v) for the perturbative verdict.
    #[arg(long, default_value_t = unruh_otto::engine::DEFAULT_MARGIN)]
    pub margin: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Population shift after one vacuum contact.
    DeltaP {
        /// Reduced acceleration alpha / omega.
        #[arg(long)]
        a: f64,
        /// Initial excited-state population.
        #[arg(long)]
        p: f64,
        /// Contact endpoint speed.
        #[arg(long)]
        v: f64,
        #[command(flatten)]
        coupling: Coupling,
        #[command(flatten)]
        output: Output,
    },
    /// Closed-form response J(x, y) with its individual terms.
    JFn {
        /// omega / alpha, signed and nonzero.
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        /// alpha T in (0, 2 pi).
        #[arg(long)]
        y: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Sampled hyperbolic worldline of one contact.
    Trajectory {
        /// Proper acceleration.
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        v: f64,
        /// Number of samples, endpoints included.
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Population shift against reduced acceleration.
    SweepA(SweepArgs),
    /// Population shift against initial population.
    SweepP(SweepArgs),
    /// Critical population and hot-contact shift over (a_H, a_C, v).
    SolveGrid {
        #[arg(long)]
        a_hot: Axis,
        #[arg(long)]
        a_cold: Axis,
        #[arg(long)]
        v: Axis,
        #[command(flatten)]
        coupling: Coupling,
        /// Compute rows on one thread.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Extracted work against the classical thermal-bath engine.
    CompareClassical {
        #[arg(long)]
        a_hot: f64,
        #[arg(long)]
        a_cold: f64,
        #[arg(long)]
        v: Axis,
        /// omega2 - omega1.
        #[arg(long, default_value_t = 1.0)]
        gap_diff: f64,
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Closed form against brute-force quadrature of the vacuum integral.
    OracleCheck(OracleArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[arg(long)]
    pub a: Axis,
    #[arg(long)]
    pub p: Axis,
    #[arg(long)]
    pub v: Axis,
    #[command(flatten)]
    pub coupling: Coupling,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    /// Proper acceleration. Without alpha, omega and t the default grid runs.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Switching width T.
    #[arg(long)]
    pub t: Option<f64>,
    /// sinh2d, imagesum1d or both.
    #[arg(long, default_value = "both")]
    pub representation: String,
    /// Regulators in units of min(1/alpha, T), strictly decreasing.
    #[arg(long, value_delimiter = ',')]
    pub epsilons: Option<Vec<f64>>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Integration window in units of T.
    #[arg(long)]
    pub window: Option<f64>,
    /// Relative agreement required with the closed form.
    #[arg(long, default_value_t = 1e-3)]
    pub tol_rel: f64,
    /// Absolute agreement required with the closed form.
    #[arg(long, default_value_t = 1e-6)]
    pub tol_abs: f64,
    /// Compare J with the raw integral instead of 2 (I - 1/16).
    #[arg(long)]
    pub raw: bool,
    /// Flip the sign of omega on the closed-form side; a sound oracle then
    /// reports a mismatch (exit 1).
    #[arg(long)]
    pub expect_fail: bool,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
