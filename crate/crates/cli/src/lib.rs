//! The `mqw` command-line tool as a library, so that it can be driven from tests.

use std::ffi::OsString;

use clap::Parser;
use serde_json::json;

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;

use args::{Cli, Command, VerifyArgs};
use config::RunConfig;
use error::{exit, CliError, Result};

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::VALIDATION } else { exit::SUCCESS };
        }
    };
    match dispatch(&cli) {
        Ok(()) => exit::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    let cfg = RunConfig::resolve(&cli.common)?;
    let artifact = match &cli.command {
        Command::Evolve => commands::cmd_evolve(&cfg)?,
        Command::Limdist => commands::cmd_limdist(&cfg)?,
        Command::Spectrum => commands::cmd_spectrum(&cfg)?,
        Command::Mixing => commands::cmd_mixing(&cfg)?,
        Command::Verify(v) => return run_verify(&cfg, v),
    };
    output::emit(&artifact, cfg.format, cfg.out.as_deref())
}

fn run_verify(cfg: &RunConfig, args: &VerifyArgs) -> Result<()> {
    if args.corrupt_coin {
        verify::corrupted_params(cfg.nodes, cfg.alpha)?;
        return Err(CliError::invalid("coin", "corrupted coin was accepted"));
    }
    let scale = match cfg.steps {
        Some(t) => verify::Scale {
            average_steps: t,
            ..verify::Scale::REDUCED
        },
        None => verify::Scale::REDUCED,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::invalid("threads", e.to_string()))?;
    let checks = pool.install(|| verify::run_suite(scale, cfg.seed));
    let failed = checks.iter().filter(|c| !c.passed).count();
    let report = json!({
        "scale": scale,
        "seed": cfg.seed,
        "checks": checks,
        "passed": checks.len() - failed,
        "failed": failed,
        "all_passed": failed == 0,
    });
    output::emit_json(&report, cfg.out.as_deref())?;
    if failed > 0 {
        return Err(CliError::VerificationFailed {
            failed,
            total: checks.len(),
        });
    }
    Ok(())
}
