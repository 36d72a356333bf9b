use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pact_cli::commands::{self, MetricMode};
use pact_cli::load::{load, CliError};
use pact_cli::report::{ErrorBody, ErrorReport, Report, SCHEMA_VERSION};
use pact_core::fixture::FixtureError;
use pact_core::Checks;

/// Verify partial actions of finite groups on finite spaces.
#[derive(Parser)]
#[command(name = "pact", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Fixture file path or embedded fixture name.
    fixture: String,
    /// Emit the machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the partial-action axioms.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Skip the topological checks (open domains, homeomorphisms, continuity).
        #[arg(long)]
        set_theoretic: bool,
    },
    /// Build the enveloping space.
    Globalize {
        #[command(flatten)]
        common: Common,
    },
    /// Compute the orbit space.
    Orbits {
        #[command(flatten)]
        common: Common,
    },
    /// Build the quotient action by a normal subgroup.
    Quotient {
        #[command(flatten)]
        common: Common,
        /// Comma-separated element names, e.g. `0,3`.
        #[arg(long)]
        subgroup: String,
    },
    /// Invariant metrics and the Hausdorff metric.
    Metric {
        #[command(flatten)]
        common: Common,
        /// Check invariance of the fixture metric (the default).
        #[arg(long, group = "mode")]
        invariant_check: bool,
        /// Build an invariant metric by averaging over the envelope.
        #[arg(long, group = "mode")]
        construct: bool,
        /// Lift the action to the hyperspace with the Hausdorff metric.
        #[arg(long, group = "mode")]
        hyperspace: bool,
    },
    /// Inverse limit of orbit spaces along a subgroup chain.
    Invlimit {
        #[command(flatten)]
        common: Common,
        /// Subgroups largest first, `;`-separated, e.g. `0,1,2,3,4,5;0,3;0`.
        #[arg(long)]
        chain: Option<String>,
    },
    /// Run every applicable check.
    Theorems {
        #[command(flatten)]
        common: Common,
        /// Comma-separated check ids; an id without `:suffix` selects all its instances.
        #[arg(long)]
        only: Option<String>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Validate { common, .. }
            | Command::Globalize { common }
            | Command::Orbits { common }
            | Command::Quotient { common, .. }
            | Command::Metric { common, .. }
            | Command::Invlimit { common, .. }
            | Command::Theorems { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Globalize { .. } => "globalize",
            Command::Orbits { .. } => "orbits",
            Command::Quotient { .. } => "quotient",
            Command::Metric { .. } => "metric",
            Command::Invlimit { .. } => "invlimit",
            Command::Theorems { .. } => "theorems",
        }
    }
}

fn execute(command: &Command) -> Result<Report, CliError> {
    let checks = match command {
        Command::Validate { set_theoretic: true, .. } => Checks::SetTheoretic,
        _ => Checks::Topological,
    };
    let fixture = load(&command.common().fixture, checks)?;
    match command {
        Command::Validate { .. } => Ok(commands::validate(&fixture, checks)),
        Command::Globalize { .. } => commands::globalize_cmd(&fixture),
        Command::Orbits { .. } => commands::orbits(&fixture),
        Command::Quotient { subgroup, .. } => commands::quotient(&fixture, subgroup),
        Command::Metric { construct, hyperspace, .. } => {
            let mode = if *construct {
                MetricMode::Construct
            } else if *hyperspace {
                MetricMode::Hyperspace
            } else {
                MetricMode::InvariantCheck
            };
            commands::metric(&fixture, mode)
        }
        Command::Invlimit { chain, .. } => commands::invlimit(&fixture, chain.as_deref()),
        Command::Theorems { only, .. } => Ok(commands::theorems(&fixture, only.as_deref())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.command.common().json;
    let code = match execute(&cli.command) {
        Ok(report) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            report.exit_code
        }
        Err(e) => {
            let code = e.exit_code();
            if json {
                let (line, column) = match &e {
                    CliError::Fixture(FixtureError::Parse { line, column, .. }) => (Some(*line), Some(*column)),
                    _ => (None, None),
                };
                let report = ErrorReport {
                    schema_version: SCHEMA_VERSION,
                    command: cli.command.name().to_string(),
                    error: ErrorBody { kind: e.kind(), message: e.to_string(), line, column },
                    exit_code: code,
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                eprintln!("pact {}: {e}", cli.command.name());
            }
            code
        }
    };
    ExitCode::from(code as u8)
}
