use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use evfuse::{Check, CliError, OutputFormat, RunOptions, Scenario, VerifyOptions};
use evfuse_core::RuleId;

/// Belief-function fusion over scenario files.
#[derive(Debug, Parser)]
#[command(name = "evfuse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fuse every source, then apply the rule once.
    Fuse(RunArgs),
    /// Print the rule's snapshot after each source.
    Stream(RunArgs),
    /// Check order invariance, the stored-state identity, VBF neutrality and
    /// the two-source SDLi formula on the scenario's sources.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct Common {
    scenario: PathBuf,
    /// Overrides the scenario's rule.
    #[arg(long, value_parser = parse_rule)]
    rule: Option<RuleId>,
    /// Drop accumulator terms below this mass after every step (approximate).
    #[arg(long)]
    prune: Option<f64>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "table")]
    output: OutputFormat,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "permutation,markov,vbf,eq7"
    )]
    checks: Vec<Check>,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_rule(s: &str) -> Result<RuleId, String> {
    s.parse().map_err(|e: evfuse_core::Error| e.to_string())
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    match cli.command {
        Command::Fuse(args) => {
            let scenario = Scenario::load(&args.common.scenario)?;
            let opts = run_options(&args);
            Ok((evfuse::cmd_fuse(&scenario, &opts)?, true))
        }
        Command::Stream(args) => {
            let scenario = Scenario::load(&args.common.scenario)?;
            let opts = run_options(&args);
            Ok((evfuse::cmd_stream(&scenario, &opts)?, true))
        }
        Command::Verify(args) => {
            let scenario = Scenario::load(&args.common.scenario)?;
            let opts = VerifyOptions {
                rule: evfuse::resolve_rule(&scenario, args.common.rule)?,
                checks: args.checks,
                trials: args.trials as usize,
                seed: args.seed,
                prune: args.common.prune,
            };
            evfuse::cmd_verify(&scenario, &opts)
        }
    }
}

fn run_options(args: &RunArgs) -> RunOptions {
    RunOptions {
        rule: args.common.rule,
        format: args.output,
        prune: args.common.prune,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("evfuse: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
