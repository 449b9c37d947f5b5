//! Declarative front end: a JSON problem description in, a deterministic report out.

pub mod commands;
pub mod report;
pub mod schema;

use clap::ValueEnum;
use gradedproj_core::verdict::Verdict;

pub use commands::run;
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Semantic { path: String, message: String },
    #[error("{0}")]
    Io(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    CheckRelevance,
    PotionEq,
    Magic2,
    Magic4,
    Atlas,
    Functorial,
    ClosedImmersion,
    ProductCheck,
    Twist,
    Negligible,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckRelevance => "check-relevance",
            Command::PotionEq => "potion-eq",
            Command::Magic2 => "magic2",
            Command::Magic4 => "magic4",
            Command::Atlas => "atlas",
            Command::Functorial => "functorial",
            Command::ClosedImmersion => "closed-immersion",
            Command::ProductCheck => "product-check",
            Command::Twist => "twist",
            Command::Negligible => "negligible",
        }
    }
}

pub const EXIT_INPUT_ERROR: i32 = 3;

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 2,
    }
}
