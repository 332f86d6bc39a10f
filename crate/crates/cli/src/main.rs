use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Failure;

const EXIT_DOMAIN: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Primitive n-th roots of unity from arithmetic and square roots alone.
#[derive(Debug, Parser)]
#[command(name = "primroot", version)]
struct Cli {
    /// Working precision in bits (at least 32).
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// All n-th roots of unity.
    Roots {
        #[arg(long)]
        n: usize,
    },
    /// The root nearest 1 in the upper half plane.
    Zeta {
        #[arg(long)]
        n: usize,
        /// Attach the descent certificate (even n >= 6).
        #[arg(long)]
        certificate: bool,
    },
    /// Solve, select, certify and compare against the trigonometric value.
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Multiplicative order of zeta(n)^m.
    Order {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// All n-th roots of c = c_re + i c_im.
    RootsOf {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        c_re: String,
        #[arg(long, allow_hyphen_values = true)]
        c_im: String,
    },
    /// Forward DFT of a vector read from a JSON file.
    Dft {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = commands::run(&cli.command, cli.precision);
    let (payload, failure) = match outcome {
        Ok(done) => (Some(done.payload), done.failure),
        Err(failure) => (None, Some(failure)),
    };
    if let Some(payload) = payload {
        if let Err(failure) = emit(&payload, cli.format, cli.output.as_ref()) {
            return report_failure(&failure, cli.format);
        }
    }
    match failure {
        Some(failure) => report_failure(&failure, cli.format),
        None => ExitCode::SUCCESS,
    }
}

fn emit(payload: &serde_json::Value, format: Format, output: Option<&PathBuf>) -> Result<(), Failure> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(payload).expect("plain JSON values") + "\n",
        Format::Text => report::to_text(payload),
    };
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::io(path, &e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_failure(failure: &Failure, format: Format) -> ExitCode {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&failure.payload()).expect("plain JSON values");
            eprintln!("{text}");
        }
        Format::Text => {
            eprintln!("error: {}", failure.message);
            if !failure.failed_checks.is_empty() {
                eprintln!("failed checks: {}", failure.failed_checks.join(", "));
            }
        }
    }
    ExitCode::from(if failure.domain { EXIT_DOMAIN } else { EXIT_NUMERICAL })
}
