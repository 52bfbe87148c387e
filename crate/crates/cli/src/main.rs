use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use trace_goppa::CodeKind;
use trace_goppa_cli::{parse_checks, parse_modulus, CliError, Format, RunConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    /// Parameters, dimensions and bound formulas.
    Params,
    /// Run the check suite; exit 2 if an applicable check fails.
    Verify,
    /// Longest run of consecutive dual memberships per code.
    Window,
    /// Exact or searched minimum distance, reconciled against the bounds.
    Distance,
    /// Parity-check matrix as text.
    Export,
}

/// Trace Goppa codes: verification, windows, distances, exports.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    command: Command,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    m: u32,
    /// Monic irreducible of degree s*m, comma-separated digits, constant term first.
    #[arg(long)]
    modulus: Option<String>,
    /// Comma-separated check names, or "all".
    #[arg(long, default_value = "all")]
    checks: String,
    /// Window start (default -b).
    #[arg(long, allow_hyphen_values = true)]
    jmin: Option<i64>,
    /// Window end (default 4b).
    #[arg(long, allow_hyphen_values = true)]
    jmax: Option<i64>,
    /// Enumerate exhaustively when p^dim <= 2^limit.
    #[arg(long, default_value_t = trace_goppa::distance::DEFAULT_EXACT_LIMIT)]
    exact_limit: u32,
    #[arg(long, default_value_t = trace_goppa::distance::DEFAULT_ITERATIONS)]
    iterations: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV snapshot of best-known codes (columns n,k,d and optionally p).
    #[arg(long)]
    bkc: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// L, M, L2 or M2.
    #[arg(long)]
    code: Option<String>,
}

fn config(args: &Args) -> Result<RunConfig, CliError> {
    let mut c = RunConfig::new(args.p, args.s, args.m);
    c.modulus = args.modulus.as_deref().map(parse_modulus).transpose()?;
    c.checks = parse_checks(&args.checks)?;
    c.jmin = args.jmin;
    c.jmax = args.jmax;
    c.exact_limit = args.exact_limit;
    c.iterations = args.iterations;
    c.seed = args.seed;
    c.bkc = args.bkc.clone();
    c.out = args.out.clone();
    c.format = args.format;
    c.code =
        args.code.as_deref().map(|s| s.parse::<CodeKind>().map_err(|e| CliError::Config(e.to_string()))).transpose()?;
    Ok(c)
}

fn run(args: &Args) -> Result<i32, CliError> {
    let c = config(args)?;
    let outcome = match args.command {
        Command::Params => trace_goppa_cli::cmd_params(&c)?,
        Command::Verify => trace_goppa_cli::cmd_verify(&c)?,
        Command::Window => trace_goppa_cli::cmd_window(&c)?,
        Command::Distance => trace_goppa_cli::cmd_distance(&c)?,
        Command::Export => trace_goppa_cli::cmd_export(&c)?,
    };
    if let Some(body) = trace_goppa_cli::emit(&c, &outcome)? {
        print!("{body}");
    }
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
