use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use podles_cli::{cmd_pair, cmd_verify, CliError, Format, Outcome, RunConfig, Suite};

#[derive(Parser)]
#[command(
    name = "podles",
    version,
    about = "Verify the generic Podleś sphere constructions and tabulate index pairings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report every check with its residual.
    Verify(Common),
    /// Tabulate both index pairings for N = -n_max..n_max.
    Pair(Common),
}

#[derive(Args)]
struct Common {
    /// Deformation parameter in (0, 1), as `p/r` or a decimal.
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    q: String,
    /// Sphere parameter s > 0, as `p/r` or a decimal.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    s: String,
    #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
    n_max: i64,
    /// Truncation dimension for the direct Fredholm count.
    #[arg(long, default_value_t = 256)]
    trunc: usize,
    /// Trace tolerance for the ρ pairing.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Comma-separated subset of suites; all by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    suites: Vec<Suite>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let (c, pair) = match cli.command {
        Command::Verify(c) => (c, false),
        Command::Pair(c) => (c, true),
    };
    let cfg = RunConfig::new(&c.q, &c.s, c.n_max, c.trunc, c.tol, c.format, &c.suites)?;
    for conv in &cfg.conversions {
        eprintln!("note: {conv}");
    }
    let outcome = if pair {
        cmd_pair(&cfg)?
    } else {
        cmd_verify(&cfg)?
    };
    match &c.out {
        Some(path) => std::fs::write(path, &outcome.output)?,
        None => print!("{}", outcome.output),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    let status = match run(Cli::parse()) {
        Ok(o) => {
            if o.status != podles_cli::Status::Ok {
                eprintln!("some checks failed");
            }
            o.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.status()
        }
    };
    ExitCode::from(status.code())
}
