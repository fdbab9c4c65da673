use thiserror::Error;

use crate::model::Violation;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("invalid variable: {0}")]
    InvalidVariable(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("structure contains a directed cycle")]
    CyclicStructure,
    #[error("invalid network: {}", format_violations(.0))]
    InvalidNetwork(Vec<Violation>),
    #[error("incomplete case {case}: {reason}")]
    IncompleteDatabase { case: usize, reason: String },
    #[error("database has no cases")]
    EmptyDatabase,
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("variables do not match: {0}")]
    VariableMismatch(String),
    #[error("assignment is incomplete: variable {0} has no value")]
    IncompleteAssignment(usize),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("evidence has zero probability")]
    ZeroProbabilityEvidence,
    #[error("enumeration over {n} variables exceeds the limit of {max}")]
    TooManyVariables { n: usize, max: usize },
    #[error("{what} for n = {n} exceeds the limit of {max}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error("list of structures is empty")]
    EmptyList,
    #[error("duplicate structure at position {0}")]
    DuplicateStructure(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
