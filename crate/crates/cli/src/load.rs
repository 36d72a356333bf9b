//! Fixture lookup: explicit path, then `PACT_FIXTURE_PATH`, then the embedded library.

use std::path::{Path, PathBuf};

use pact_core::fixture::{embedded, parse, Fixture, FixtureError};
use pact_core::{Checks, Error, TheoremViolation};

pub const FIXTURE_PATH_VAR: &str = "PACT_FIXTURE_PATH";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl From<TheoremViolation> for CliError {
    fn from(v: TheoremViolation) -> Self {
        CliError::Core(v.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 3,
            CliError::Core(Error::Violation(_) | Error::RouteMismatch { .. }) => 2,
            CliError::Fixture(FixtureError::Validation(Error::Violation(_))) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Fixture(FixtureError::Parse { .. }) => "parse",
            CliError::Fixture(_) => "validation",
            CliError::Usage(_) => "usage",
            CliError::Core(_) if self.exit_code() == 2 => "theorem-violation",
            CliError::Core(_) => "validation",
        }
    }
}

/// Where a fixture's text came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Path(PathBuf),
    Embedded(&'static str),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Resolves `arg` to fixture text; `extra_dir` stands in for `PACT_FIXTURE_PATH`.
pub fn resolve(arg: &str, extra_dir: Option<&Path>) -> Result<(Source, String), CliError> {
    let direct = Path::new(arg);
    if direct.is_file() {
        return Ok((Source::Path(direct.to_path_buf()), read(direct)?));
    }
    if let Some(dir) = extra_dir {
        for candidate in [dir.join(arg), dir.join(format!("{arg}.json"))] {
            if candidate.is_file() {
                let text = read(&candidate)?;
                return Ok((Source::Path(candidate), text));
            }
        }
    }
    if let Some(json) = embedded(arg) {
        let name = pact_core::fixture::embedded_names().find(|n| *n == arg).expect("embedded");
        return Ok((Source::Embedded(name), json.to_string()));
    }
    Err(CliError::Io(format!("no fixture file or embedded fixture named {arg:?}")))
}

/// Loads and validates a fixture, naming it after the argument when the file has no name.
pub fn load(arg: &str, checks: Checks) -> Result<Fixture, CliError> {
    let extra = std::env::var_os(FIXTURE_PATH_VAR).map(PathBuf::from);
    let (source, text) = resolve(arg, extra.as_deref())?;
    let mut fixture = parse(&text, checks)?;
    if fixture.name.is_empty() {
        fixture.name = match source {
            Source::Path(p) => p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
            Source::Embedded(n) => n.to_string(),
        };
    }
    Ok(fixture)
}
