use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gausstail::cli::{
    configure_threads, exit_code, parse_direction, parse_grid, run_eval, run_expand, run_verify,
    EvalSettings, Method,
};

/// Gaussian probabilities of tame sets: evaluation and asymptotic expansion.
#[derive(Parser)]
#[command(name = "gausstail", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand Φ_A as a log-Puiseux series at t -> 0 or t -> infinity.
    Expand {
        /// Builtin shorthand (e.g. ball:n=2,R=1) or a set-description file.
        input: String,
        /// Expansion direction: zero | infinity.
        #[arg(long = "at")]
        at: String,
        /// Truncation order (in units of the profile ramification).
        #[arg(short = 'K', long = "order")]
        order: u64,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate Φ_A(t) on a time grid by quadrature or Monte Carlo.
    Eval {
        input: String,
        /// Grid: single value, comma list, or log range like 1e-2..1e-6.
        #[arg(long = "t")]
        grid: String,
        /// Grid size override for log ranges.
        #[arg(long)]
        points: Option<usize>,
        /// quad | mc.
        #[arg(long, default_value = "quad")]
        method: String,
        /// Quadrature tolerance.
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Monte Carlo seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand, then check the remainder decay along a grid.
    Verify {
        input: String,
        #[arg(long = "at")]
        at: String,
        /// Partial-sum order N for the remainder check.
        #[arg(short = 'N', long = "order")]
        order: u64,
        #[arg(long)]
        grid: String,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(data: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, data),
        None => std::io::stdout().write_all(data.as_bytes()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Err(e) = configure_threads() {
        eprintln!("{e}");
        return ExitCode::from(2);
    }
    let outcome = (|| -> gausstail::Result<ExitCode> {
        match &args.command {
            Command::Expand {
                input,
                at,
                order,
                out,
            } => {
                let direction = parse_direction(at)?;
                let text = run_expand(input, direction, *order)?;
                emit(&text, out.as_ref()).map_err(io_error)?;
                Ok(ExitCode::SUCCESS)
            }
            Command::Eval {
                input,
                grid,
                points,
                method,
                tol,
                samples,
                seed,
                out,
            } => {
                let grid = parse_grid(grid, *points)?;
                let settings = EvalSettings {
                    method: method.parse::<Method>()?,
                    tol: *tol,
                    samples: *samples,
                    seed: *seed,
                };
                let text = run_eval(input, &grid, settings)?;
                emit(&text, out.as_ref()).map_err(io_error)?;
                Ok(ExitCode::SUCCESS)
            }
            Command::Verify {
                input,
                at,
                order,
                grid,
                points,
                out,
            } => {
                let direction = parse_direction(at)?;
                let grid = parse_grid(grid, *points)?;
                let (text, pass) = run_verify(input, direction, *order, &grid)?;
                emit(&text, out.as_ref()).map_err(io_error)?;
                if pass {
                    Ok(ExitCode::SUCCESS)
                } else {
                    eprintln!("remainder verification failed");
                    Ok(ExitCode::from(1))
                }
            }
        }
    })();
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

fn io_error(e: std::io::Error) -> gausstail::Error {
    gausstail::Error::Usage(format!("cannot write output: {e}"))
}
