use std::fmt;

use crate::sample::{DEFAULT_SAMPLES, DEFAULT_SEED};

/// Outcome of a check. `Inconclusive` means a bounded search ran out of budget;
/// it never claims the checked statement is false.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// The worse of two verdicts: `Fail` over `Inconclusive` over `Pass`.
    pub fn and(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn all(vs: impl IntoIterator<Item = Verdict>) -> Verdict {
        vs.into_iter().fold(Verdict::Pass, Verdict::and)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Knobs shared by sampled checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub seed: u64,
    pub samples: usize,
    /// Total-degree bound for lifting searches.
    pub degree_bound: u32,
}

pub const DEFAULT_DEGREE_BOUND: u32 = 12;

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            degree_bound: DEFAULT_DEGREE_BOUND,
        }
    }
}
