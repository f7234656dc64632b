use std::path::PathBuf;
use std::process::ExitCode;

use blockcheck_cli::report::render;
use blockcheck_cli::{blocks_command, census_command, max_order_from_env, table_command, verify_command, CliError, VerifyFlags};
use clap::{Parser, Subcommand};

/// Character tables, p-blocks and real-conjecture verification for finite
/// permutation groups.
///
/// Exit status: 0 success, 1 a verdict or check failed, 2 bad input,
/// 3 capacity exceeded, 4 internal inconsistency.
#[derive(Parser)]
#[command(name = "blockcheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the character table in the stable text format.
    Table { file: PathBuf },
    /// Print one summary record per p-block.
    Blocks {
        #[arg(short = 'p', long = "prime")]
        prime: u64,
        file: PathBuf,
    },
    /// Evaluate the conjectures and theorem checks; print the report.
    Verify {
        #[arg(short = 'p', long = "prime")]
        prime: u64,
        /// Evaluate the conjectures at an odd prime.
        #[arg(long)]
        force_odd_prime: bool,
        /// With --force-odd-prime: exit 0 exactly when a violation is found.
        #[arg(long)]
        expect_violation: bool,
        /// Largest n for the height-stratified conjecture.
        #[arg(long)]
        max_n: Option<usize>,
        /// Write the report here instead of standard output.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        file: PathBuf,
    },
    /// Verify every entry of a manifest and write the merged report.
    Census {
        manifest: PathBuf,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let max_order = max_order_from_env()?;
    match cli.command {
        Command::Table { file } => {
            write_out(None, &table_command(&file, max_order)?)?;
            Ok(true)
        }
        Command::Blocks { prime, file } => {
            write_out(None, &render(&blocks_command(&file, prime, max_order)?))?;
            Ok(true)
        }
        Command::Verify { prime, force_odd_prime, expect_violation, max_n, output, file } => {
            if expect_violation && !force_odd_prime {
                return Err(CliError::Usage("--expect-violation requires --force-odd-prime".into()));
            }
            let flags = VerifyFlags { prime, force_odd_prime, expect_violation, max_n, max_order };
            let (report, pass) = verify_command(&file, &flags)?;
            write_out(output.as_ref(), &render(&report))?;
            Ok(pass)
        }
        Command::Census { manifest, output } => {
            let (report, pass) = census_command(&manifest, max_order)?;
            write_out(Some(&output), &render(&report))?;
            let s = &report["summary"];
            eprintln!(
                "census: {} jobs, {} unexpected, {} conjecture violations, {} failed checks, {} highlight mismatches, {} errors",
                s["jobs"].as_str().unwrap_or("?"),
                s["unexpected"].as_str().unwrap_or("?"),
                s["conjecture_violations"].as_str().unwrap_or("?"),
                s["failed_theorem_checks"].as_str().unwrap_or("?"),
                s["highlight_mismatches"].as_str().unwrap_or("?"),
                s["errors"].as_str().unwrap_or("?"),
            );
            Ok(pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("blockcheck: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
