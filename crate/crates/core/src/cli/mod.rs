//! Batch runs behind the `hyperkirwan` binary: a [`RunConfig`] goes in, a
//! [`Report`] and an exit status come out.
//!
//! Exit statuses: 0 all checks passed, 1 a check failed, 2 usage or parse
//! error, 3 non-generic edge lengths, 4 Groebner budget exhausted, 5 i/o
//! error, 6 internal error.

mod report;
mod run;
mod text;

use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperpolygon::EdgeLengths;
use crate::ideal::Budget;

pub use report::{canonical_json, InstanceEcho, Report, SCHEMA, SCHEMA_ID, TIMING_FIELDS};
pub use run::run;
pub use text::render_text;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Shorts,
    Present,
    Verify,
    Certify,
    Betti,
    LocalizeDemo,
    Report,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Shorts,
        Command::Present,
        Command::Verify,
        Command::Certify,
        Command::Betti,
        Command::LocalizeDemo,
        Command::Report,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Shorts => "shorts",
            Command::Present => "present",
            Command::Verify => "verify",
            Command::Certify => "certify",
            Command::Betti => "betti",
            Command::LocalizeDemo => "localize-demo",
            Command::Report => "report",
        }
    }

    pub fn needs_xi(self) -> bool {
        self != Command::LocalizeDemo
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown command `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::InvalidInput(format!("unknown format `{s}` (expected json or text)"))),
        }
    }
}

/// One invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub xi: Option<EdgeLengths>,
    /// Built-in fixture name or JSON path, for `localize-demo`.
    pub fixture: Option<String>,
    pub budget: Budget,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, xi: None, fixture: None, budget: Budget::from_env(), format: Format::Json, out: None }
    }

    pub fn with_xi(mut self, xi: EdgeLengths) -> Self {
        self.xi = Some(xi);
        self
    }

    pub fn with_fixture(mut self, fixture: impl Into<String>) -> Self {
        self.fixture = Some(fixture.into());
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget.max_basis == 0 || self.budget.max_degree == 0 {
            return Err(Error::InvalidInput("budgets must be positive".into()));
        }
        if self.command.needs_xi() && self.xi.is_none() {
            return Err(Error::InvalidInput(format!("`{}` needs --xi", self.command.name())));
        }
        if self.command == Command::LocalizeDemo && self.fixture.is_none() {
            return Err(Error::InvalidInput("`localize-demo` needs --fixture".into()));
        }
        Ok(())
    }

    /// Renders `report` in the configured format.
    pub fn render(&self, report: &Report) -> String {
        match self.format {
            Format::Json => report.to_json(),
            Format::Text => render_text(report),
        }
    }
}
