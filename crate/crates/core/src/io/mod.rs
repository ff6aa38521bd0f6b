//! Text formats: instance files, merge scripts, savings tables, reports,
//! DOT diagrams and the errata audit.

mod dot;
mod errata;
mod instance_file;
mod report;
mod savings_table;
mod script;

use std::fmt;

use thiserror::Error;

use crate::fixed::FixedParseError;
use crate::model::ValidationReport;

pub use dot::render_dot;
pub use errata::{
    emit_errata, Classification, ErrataError, ErrataRecord, ErrataReport, RecordKind, Unit,
};
pub use instance_file::{parse_instance, write_instance};
pub use report::{parse_solution_routes, ReplayReport, RouteLine, SolutionReport, TraceSummary};
pub use savings_table::emit_savings_table;
pub use script::{parse_merge_script, write_merge_script};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Number(FixedParseError),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("no front warehouses")]
    NoWarehouses,
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("self-connect on {0}")]
    SelfConnect(String),
    #[error("{0}")]
    Invalid(ValidationReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// 1-based; `None` for whole-document problems.
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{} at line {line}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}
