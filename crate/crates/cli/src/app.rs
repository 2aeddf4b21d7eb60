use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use towerlim_core::delta::DIRECT_SUM;
use towerlim_core::prufer::ClassLiteral;

use crate::commands::{delta, prufer, six_term, tower};
use crate::error::CliError;
use crate::report::{to_json, to_text, Report};
use crate::repro::{self, Fault};
use crate::scenario::{builtin, Scenario};

#[derive(Debug, Parser)]
#[command(
    name = "towerlim",
    version,
    about = "Inverse limits, lim¹ and Prüfer-sum arithmetic"
)]
pub struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Towers of abelian groups.
    #[command(subcommand)]
    Tower(TowerCommand),
    /// Classes in the sum of Prüfer groups modulo the diagonal.
    #[command(subcommand)]
    Prufer(PruferCommand),
    /// Tabulate δ_n(k) and check it against the Stirling oracle.
    DeltaTable(DeltaArgs),
    /// Short exact sequences of towers.
    #[command(name = "six-term", subcommand)]
    SixTerm(SixTermCommand),
    /// Run every verification check at its fixed scale.
    PaperRepro(ReproArgs),
}

#[derive(Debug, Subcommand)]
pub enum TowerCommand {
    /// Image filtration, Mittag-Leffler status, lim and lim¹ of a tower.
    Analyze {
        /// Tower name from the scenario, or a built-in tower.
        name: String,
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Truncate the tower to this many stages.
        #[arg(long)]
        horizon: Option<usize>,
        /// Also report the derived tower of kernel levels at K.
        #[arg(long, value_name = "K")]
        gray: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    /// A class literal such as `2:1,3:2`, or a class name from `--scenario`.
    #[arg(long)]
    pub class: String,
    #[arg(long)]
    pub scenario: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum PruferCommand {
    /// Reduce a class into A_0^(n) by an integer multiple of the diagonal.
    Reduce {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        n: usize,
        /// Number of primes to work over; defaults to the scenario window.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Decide membership of a class in A_0^(n).
    Membership {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Minimal reducers of a single coordinate over growing windows.
    Witness {
        /// A class literal, typically a single coordinate such as `2:1`.
        #[arg(long)]
        coord: String,
        /// Window sizes as `A..B`, inclusive.
        #[arg(long, default_value = "2..12", value_parser = parse_range)]
        windows: RangeInclusive<usize>,
    },
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub max_k: Option<usize>,
    /// Take default bounds from the scenario's `delta` line.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Subcommand)]
pub enum SixTermCommand {
    /// Check exactness of the induced sequence of limits.
    Check {
        scenario: PathBuf,
        /// Only check this sequence.
        #[arg(long)]
        ses: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    #[arg(long)]
    pub parallel: bool,
    #[arg(long, hide = true)]
    pub inject_fault: Option<Fault>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let a = a.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let b = b
        .trim()
        .trim_start_matches('=')
        .parse::<usize>()
        .map_err(|e| e.to_string())?;
    Ok(a..=b)
}

/// A rendered report plus whether its checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

impl Outcome {
    fn of<R: Report>(report: &R, json: bool) -> Self {
        Outcome {
            output: if json {
                to_json(report)
            } else {
                to_text(report)
            },
            passed: report.passed(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn emit(&self, path: Option<&Path>) -> Result<(), CliError> {
        match path {
            Some(p) => fs::write(p, &self.output).map_err(|source| CliError::Write {
                path: p.to_path_buf(),
                source,
            }),
            None => {
                print!("{}", self.output);
                Ok(())
            }
        }
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    text.parse().map_err(|source| CliError::Scenario {
        path: path.to_path_buf(),
        source,
    })
}

fn load_optional(path: Option<&Path>) -> Result<Option<Scenario>, CliError> {
    path.map(load_scenario).transpose()
}

fn resolve_class(args: &ClassArgs) -> Result<(ClassLiteral, Option<usize>), CliError> {
    let scenario = load_optional(args.scenario.as_deref())?;
    if let Some(s) = &scenario {
        if let Some(lit) = s.class(&args.class) {
            return Ok((lit.clone(), s.window));
        }
    }
    let lit = args.class.parse::<ClassLiteral>().map_err(|e| {
        CliError::Input(format!(
            "`{}` is neither a class name nor a literal: {e}",
            args.class
        ))
    })?;
    Ok((lit, scenario.and_then(|s| s.window)))
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Tower(TowerCommand::Analyze {
            name,
            scenario,
            horizon,
            gray,
        }) => {
            let from_file = load_optional(scenario.as_deref())?;
            let source = match from_file {
                Some(s) if s.tower_spec(name).is_some() => s,
                _ => builtin(),
            };
            if source.tower_spec(name).is_none() {
                return Err(CliError::Input(format!("unknown tower `{name}`")));
            }
            let t = source.tower(name, *horizon)?;
            Ok(Outcome::of(&tower::analyze(name, &t, *gray)?, json))
        }
        Command::Prufer(PruferCommand::Reduce { class, n, window }) => {
            let (lit, default) = resolve_class(class)?;
            Ok(Outcome::of(
                &prufer::reduce(&lit, *n, window.or(default))?,
                json,
            ))
        }
        Command::Prufer(PruferCommand::Membership { class, n, window }) => {
            let (lit, default) = resolve_class(class)?;
            Ok(Outcome::of(
                &prufer::membership(&lit, *n, window.or(default))?,
                json,
            ))
        }
        Command::Prufer(PruferCommand::Witness { coord, windows }) => {
            let lit = coord
                .parse::<ClassLiteral>()
                .map_err(|e| CliError::Input(format!("bad coordinate `{coord}`: {e}")))?;
            Ok(Outcome::of(&prufer::witness(&lit, windows.clone())?, json))
        }
        Command::DeltaTable(args) => {
            let bounds = load_optional(args.scenario.as_deref())?.and_then(|s| s.delta);
            let (dn, dk) = bounds.unwrap_or((30, 30));
            let report = delta::table(
                args.max_n.unwrap_or(dn),
                args.max_k.unwrap_or(dk),
                DIRECT_SUM,
                args.parallel,
            )?;
            Ok(Outcome::of(&report, json))
        }
        Command::SixTerm(SixTermCommand::Check { scenario, ses }) => {
            let s = load_scenario(scenario)?;
            Ok(Outcome::of(&six_term::check(&s, ses.as_deref())?, json))
        }
        Command::PaperRepro(args) => {
            let report = repro::run(repro::Options {
                parallel: args.parallel,
                fault: args.inject_fault,
            });
            Ok(Outcome::of(&report, json))
        }
    }
}
