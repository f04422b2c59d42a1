//! `gausscat`: coefficient tables, state descriptors, wavefunction samples
//! and the verification suite for Gauss-sum kitten states.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gausscat::fock::DEFAULT_DIM;

#[derive(Parser, Debug)]
#[command(
    name = "gausscat",
    version,
    about = "Gauss-sum superpositions of coherent states"
)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct FractionArgs {
    /// Numerator M, with 0 < M < N.
    #[arg(value_name = "M", allow_negative_numbers = true)]
    pub m: i64,
    /// Denominator N, coprime to M.
    #[arg(value_name = "N", allow_negative_numbers = true)]
    pub n: i64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GridArgs {
    /// Fock-space truncation.
    #[arg(long, default_value_t = DEFAULT_DIM)]
    pub dim: usize,
    /// Grid spans [-half_width, half_width].
    #[arg(long, default_value_t = 12.0)]
    pub half_width: f64,
    /// Number of grid points (odd).
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients c_k by the closed form, direct summation and inverse DFT.
    Coeffs {
        #[command(flatten)]
        fraction: FractionArgs,
    },
    /// Superposition descriptor of the kitten state.
    State {
        #[command(flatten)]
        fraction: FractionArgs,
        /// Replace alpha by -i alpha in every component.
        #[arg(long)]
        yurke_stoler: bool,
        /// Text output only: list components by rotation angle instead of k.
        #[arg(long)]
        by_angle: bool,
    },
    /// Sample the coordinate wavefunction on a grid.
    Wavefunction {
        #[command(flatten)]
        fraction: FractionArgs,
        /// Coherent amplitude as "re,im".
        #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true, default_value = "1,0")]
        alpha: (f64, f64),
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Run the verification suite.
    Verify {
        /// Restrict to one group: gauss, dft, fock, operators, kernel, integral, wavefunc.
        #[arg(long, value_parser = parse_group)]
        only: Option<gausscat::verify::Group>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Fidelity of free evolution against the rotated kitten state.
    Evolve {
        #[command(flatten)]
        fraction: FractionArgs,
        #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true, default_value = "1,0")]
        alpha: (f64, f64),
        /// Final time.
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        t: f64,
        /// Number of intervals between 0 and t.
        #[arg(long, default_value_t = 16)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_DIM)]
        dim: usize,
    },
}

fn parse_alpha(s: &str) -> Result<(f64, f64), String> {
    let parse = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|e| format!("bad number {p:?}: {e}"))
    };
    match s.split_once(',') {
        Some((re, im)) => Ok((parse(re)?, parse(im)?)),
        None => Ok((parse(s)?, 0.0)),
    }
}

fn parse_group(s: &str) -> Result<gausscat::verify::Group, String> {
    gausscat::verify::Group::parse(s).ok_or_else(|| {
        let names: Vec<_> = gausscat::verify::Group::ALL
            .iter()
            .map(|g| g.name())
            .collect();
        format!("unknown group {s:?}; expected one of {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Coeffs { fraction } => {
            commands::coeffs(fraction, cli.format.unwrap_or(Format::Text))
        }
        Command::State {
            fraction,
            yurke_stoler,
            by_angle,
        } => commands::state(
            fraction,
            yurke_stoler,
            by_angle,
            cli.format.unwrap_or(Format::Json),
        ),
        Command::Wavefunction {
            fraction,
            alpha,
            grid,
        } => commands::wavefunction(fraction, alpha, grid, cli.format.unwrap_or(Format::Csv)),
        Command::Verify { only, grid } => {
            commands::verify(only, grid, cli.format.unwrap_or(Format::Text))
        }
        Command::Evolve {
            fraction,
            alpha,
            t,
            steps,
            dim,
        } => commands::evolve(
            fraction,
            alpha,
            t,
            steps,
            dim,
            cli.format.unwrap_or(Format::Csv),
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("gausscat: {e}");
            ExitCode::from(e.code())
        }
    }
}
