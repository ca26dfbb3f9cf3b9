//! Command-line front end. Every command returns its exit code and output
//! instead of printing, so the binary is a thin wrapper and the commands
//! can be driven from tests.
//!
//! Exit codes: 0 success, 1 infeasible instance, invalid certificate or
//! campaign defect, 2 usage or parse error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::format::{parse_certificate, parse_instance, write_certificate, CertificateFile};
use crate::routing::{solve, verify, Instance, Outcome};
use crate::verifier::{pairability_check, verify_lemma, LemmaId, LemmaReport, PairabilityStrategy, Strategy};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> CommandOutput {
        CommandOutput {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: String) -> CommandOutput {
        CommandOutput {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "gridlink",
    version,
    about = "Edge-disjoint routing and lemma campaigns on small grids"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Route an instance file and print a certificate
    Solve { instance: PathBuf },
    /// Check a certificate file against an instance file
    Verify { instance: PathBuf, certificate: PathBuf },
    /// Run the verification campaign for one lemma id (L1..L10, L5i, P1-matching)
    Lemma {
        id: LemmaId,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
        /// Instances to draw with `--strategy random`
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Four-pair linkage check on the 6x6 grid
    Pairability {
        #[arg(
            long,
            required_unless_present = "exhaustive_reduced",
            conflicts_with = "exhaustive_reduced"
        )]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0, conflicts_with = "exhaustive_reduced")]
        seed: u64,
        /// Every pair set up to the symmetries of the square (very long)
        #[arg(long)]
        exhaustive_reduced: bool,
        /// Stop the exhaustive run after this many pair sets
        #[arg(long, requires = "exhaustive_reduced")]
        limit: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    pub workers: Option<usize>,
    /// Also write the report to this file
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    Reduced,
    Random,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                CommandOutput::usage(text)
            } else {
                CommandOutput::ok(text)
            }
        }
    }
}

pub fn execute(command: Command) -> CommandOutput {
    match command {
        Command::Solve { instance } => cmd_solve(&instance),
        Command::Verify { instance, certificate } => cmd_verify(&instance, &certificate),
        Command::Lemma {
            id,
            strategy,
            samples,
            seed,
            run,
        } => {
            let strategy = match (strategy, samples) {
                (StrategyArg::Exhaustive, None) => Strategy::Exhaustive,
                (StrategyArg::Reduced, None) => Strategy::Reduced,
                (StrategyArg::Random, Some(n)) if n >= 1 => Strategy::Random { samples: n, seed },
                (StrategyArg::Random, _) => {
                    return CommandOutput::usage("--strategy random needs --samples N with N >= 1\n".into())
                }
                (_, Some(_)) => return CommandOutput::usage("--samples only applies to --strategy random\n".into()),
            };
            cmd_lemma(id, strategy, workers(run.workers), run.report.as_deref())
        }
        Command::Pairability {
            samples,
            seed,
            exhaustive_reduced,
            limit,
            run,
        } => {
            let strategy = if exhaustive_reduced {
                PairabilityStrategy::ExhaustiveReduced { limit }
            } else {
                match samples {
                    Some(n) if n >= 1 => PairabilityStrategy::Random { samples: n, seed },
                    _ => return CommandOutput::usage("--samples must be at least 1\n".into()),
                }
            };
            cmd_pairability(strategy, workers(run.workers), run.report.as_deref())
        }
    }
}

fn workers(requested: Option<usize>) -> usize {
    requested
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

fn read(path: &Path) -> Result<String, CommandOutput> {
    fs::read_to_string(path).map_err(|e| CommandOutput::usage(format!("{}: {e}\n", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, CommandOutput> {
    let text = read(path)?;
    parse_instance(&text).map_err(|e| CommandOutput::usage(format!("{}: {e}\n", path.display())))
}

/// Routes the instance: exit 0 with the certificate, or exit 1 with
/// `infeasible`.
pub fn cmd_solve(instance: &Path) -> CommandOutput {
    let inst = match load_instance(instance) {
        Ok(i) => i,
        Err(out) => return out,
    };
    match solve(&inst) {
        Ok(Outcome::Routed(paths)) => CommandOutput::ok(write_certificate(&CertificateFile::Paths(paths))),
        Ok(Outcome::Infeasible) => CommandOutput {
            code: 1,
            stdout: write_certificate(&CertificateFile::Infeasible),
            stderr: String::new(),
        },
        Err(e) => CommandOutput::usage(format!("{}: {e}\n", instance.display())),
    }
}

/// Checks the certificate. An `infeasible` certificate is accepted when
/// the solver also finds no routing.
pub fn cmd_verify(instance: &Path, certificate: &Path) -> CommandOutput {
    let inst = match load_instance(instance) {
        Ok(i) => i,
        Err(out) => return out,
    };
    let cert = match read(certificate).and_then(|text| {
        parse_certificate(&text).map_err(|e| CommandOutput::usage(format!("{}: {e}\n", certificate.display())))
    }) {
        Ok(c) => c,
        Err(out) => return out,
    };
    let failure = |msg: String| CommandOutput {
        code: 1,
        stdout: String::new(),
        stderr: msg,
    };
    match cert {
        CertificateFile::Paths(paths) => match verify(&inst, &paths) {
            Ok(()) => CommandOutput::ok("valid\n".into()),
            Err(v) => failure(format!("invalid certificate: {v}\n")),
        },
        CertificateFile::Infeasible => match solve(&inst) {
            Ok(Outcome::Infeasible) => CommandOutput::ok("valid: no routing exists\n".into()),
            Ok(Outcome::Routed(_)) => failure("invalid certificate: the instance is routable\n".into()),
            Err(e) => CommandOutput::usage(format!("{}: {e}\n", instance.display())),
        },
    }
}

fn report_output(report: &LemmaReport, path: Option<&Path>) -> CommandOutput {
    let text = report.render();
    if let Some(p) = path {
        if let Err(e) = fs::write(p, &text) {
            return CommandOutput::usage(format!("{}: {e}\n", p.display()));
        }
    }
    CommandOutput {
        code: if report.is_clean() { 0 } else { 1 },
        stdout: text,
        stderr: String::new(),
    }
}

/// Runs a lemma campaign; exit 0 iff it found no defects.
pub fn cmd_lemma(id: LemmaId, strategy: Strategy, workers: usize, report: Option<&Path>) -> CommandOutput {
    report_output(&verify_lemma(id, strategy, workers), report)
}

/// Runs the pairability campaign; exit 0 iff every pair set was linked.
pub fn cmd_pairability(strategy: PairabilityStrategy, workers: usize, report: Option<&Path>) -> CommandOutput {
    report_output(&pairability_check(strategy, workers), report)
}
