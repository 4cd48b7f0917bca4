use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use transcend_kit::lang::{commands::COMMANDS, parse, run_command, Overrides};
use transcend_kit::{guard, Error, Result};

/// Generic hyperplane members, charts and regularity checks over purely
/// transcendental extensions.
#[derive(Parser, Debug)]
#[command(name = "transcend-kit", version)]
struct Cli {
    /// One of generic-member, universal-member, member-at, chart, specialize,
    /// avoid, check-smooth, check-reduced, check-regular, survey,
    /// mixed-witness, local-order2, verify-examples, run.
    command: String,
    /// Script file; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    chart: Option<usize>,
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long)]
    field_size: Option<u64>,
    /// Exit with status 1 on a negative verdict.
    #[arg(long)]
    assert: bool,
    /// Total-degree guardrail; takes precedence over TRANSCEND_MAX_DEGREE.
    #[arg(long)]
    max_degree: Option<u32>,
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Io(e.to_string()))?;
            Ok(s)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    if !COMMANDS.contains(&cli.command.as_str()) {
        return Err(Error::UnknownIdentifier(format!("command {}", cli.command)));
    }
    if let Some(d) = cli.max_degree {
        guard::set_max_degree(d);
    }
    let script = if cli.command == "verify-examples" && cli.input.is_none() {
        parse("(ring Q Q)")?
    } else {
        parse(&read_input(&cli.input)?)?
    };
    let ov = Overrides { chart: cli.chart, prime: cli.prime, field_size: cli.field_size };
    let report = run_command(&script, &cli.command, &ov)?;
    print!("{report}");
    Ok(report.negative)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) if cli.assert => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
