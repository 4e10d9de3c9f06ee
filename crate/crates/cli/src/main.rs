//! `antimorph`: JSON reports on skew polynomial quotients and their monomial
//! (anti-)automorphisms.
//!
//! Exit codes: 0 valid or success, 1 mathematically invalid, 2 usage or
//! schema error, 3 resource cap or unsupported backend operation.

mod codec;
mod commands;
mod config;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use antimorph_core::{Error, FrobeniusTower, FunctionField};

use commands::{Outcome, Settings};
use config::{ContextSpec, ModeSpec, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "antimorph", version, about = "Reports on monomial anti-automorphisms of cyclic algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeSpec>,
    /// Seed for sampled checks, in hex.
    #[arg(long, global = true, value_parser = config::parse_seed)]
    seed: Option<u64>,
    /// Largest number of elements a scan may touch.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Iteration bound for orders and degree witnesses.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Associativity, nuclei and semifield test for (K, σ, a) of degree m.
    Info,
    /// All monomial anti-automorphisms extending τ.
    Classify,
    /// Check one map against its closed-form conditions and directly.
    Verify,
    /// Anti-automorphisms of the twisted Laurent polynomial ring.
    Laurent,
    /// Anti-automorphisms of a generalized cyclic algebra (D, σ, d).
    Gen,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Classify => "classify",
            Command::Verify => "verify",
            Command::Laurent => "laurent",
            Command::Gen => "gen",
        }
    }
}

fn load(cli: &Cli) -> Result<(RunConfig, Settings)> {
    let cfg: RunConfig = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => RunConfig::default(),
    };
    let seed = match (cli.seed, &cfg.seed) {
        (Some(s), _) => s,
        (None, Some(s)) => config::parse_seed(s).map_err(anyhow::Error::msg)?,
        (None, None) => config::DEFAULT_SEED,
    };
    let settings = Settings {
        mode: cli.mode.or(cfg.mode),
        seed,
        cap: cli.cap.or(cfg.cap).unwrap_or(config::DEFAULT_CAP),
        bound: cli.bound.or(cfg.bound).unwrap_or(config::DEFAULT_BOUND),
        samples: cfg.samples.unwrap_or(config::DEFAULT_SAMPLES),
        dim_cap: cfg.dim_cap.unwrap_or(config::DEFAULT_DIM_CAP),
    };
    Ok((cfg, settings))
}

fn dispatch(command: Command, cfg: &RunConfig, s: &Settings) -> Result<Outcome> {
    let Some(context) = &cfg.context else { bail!("the configuration needs a \"context\" section") };
    match *context {
        ContextSpec::Frobenius { p, d, n } => {
            let ctx = Arc::new(FrobeniusTower::new(p, d, n, s.cap)?);
            match command {
                Command::Info => commands::info(ctx, cfg, s),
                Command::Classify => commands::classify_cmd(ctx, cfg, s),
                Command::Verify => commands::verify(ctx, cfg, s),
                Command::Laurent => commands::laurent(ctx, cfg, s),
                Command::Gen => commands::gen(&ctx, cfg, s),
            }
        }
        ContextSpec::FunctionField { q, zeta, n } => {
            let ctx = Arc::new(FunctionField::new(q, zeta, n, s.cap)?);
            match command {
                Command::Info => commands::info(ctx, cfg, s),
                Command::Classify => commands::classify_cmd(ctx, cfg, s),
                Command::Verify => commands::verify(ctx, cfg, s),
                Command::Laurent => commands::laurent(ctx, cfg, s),
                Command::Gen => bail!("gen needs a frobenius context"),
            }
        }
    }
}

/// 3 for resource caps and operations the backend cannot perform, 2 otherwise.
fn error_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. } | Error::NoIteration | Error::StrategyMismatch(_)) => 3,
        _ => 2,
    }
}

fn write_report(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = load(&cli).and_then(|(cfg, s)| {
        let outcome = dispatch(cli.command, &cfg, &s)?;
        let report = json!({
            "command": cli.command.name(),
            "configured": {
                "context": cfg.context,
                "algebra": cfg.algebra,
                "map": cfg.map,
                "search": cfg.search,
                "laurent": cfg.laurent,
                "gen": cfg.gen,
                "settings": s.to_json(),
            },
            "computed": outcome.computed,
            "exit_code": outcome.code,
        });
        let text = serde_json::to_string_pretty(&report)? + "\n";
        write_report(cli.out.as_ref(), &text)?;
        Ok(outcome.code)
    });
    match run {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
