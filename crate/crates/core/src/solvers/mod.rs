//! Decision procedures for recampaigning.
//!
//! Every solver returns a [`SolveResult`]; a `Yes` always carries an
//! assignment that [`crate::model::verify`] accepts.

mod brute;
mod cover;
mod crc1;
mod special;
mod trivial;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::election::{ElectionError, Rule};
use crate::matching::MatchingError;
use crate::model::{
    lift_to_priced, verify, Assignment, ModelError, RecampaignInstance, WinnerBound,
};

pub use brute::{solve_brute, BruteOptions, DEFAULT_NODE_BUDGET};
pub use cover::{build_exact_cover_system, solve_fpt, CoverSet, CoverSystem, UniverseElement};
pub use crc1::solve_crc1;
pub use special::{solve_e1_bound3, solve_e2_unbounded};
pub use trivial::solve_trivial_scoring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{0}")]
    WrongVariant(String),
    #[error("search space of {needed} exceeds the node budget of {budget}")]
    Resource { needed: String, budget: u64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("internal error: solver witness rejected by verification")]
    UnsoundWitness,
}

impl From<ElectionError> for SolveError {
    fn from(e: ElectionError) -> Self {
        SolveError::Model(ModelError::Election(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Yes(Assignment),
    No,
}

impl Answer {
    pub fn is_yes(&self) -> bool {
        matches!(self, Answer::Yes(_))
    }

    pub fn assignment(&self) -> Option<&Assignment> {
        match self {
            Answer::Yes(a) => Some(a),
            Answer::No => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Crc1Matching,
    BMatching,
    FptCover,
    Brute,
    E1Slack,
    E2Unbounded,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Crc1Matching => "crc1-matching",
            Algorithm::BMatching => "b-matching",
            Algorithm::FptCover => "fpt-cover",
            Algorithm::Brute => "brute",
            Algorithm::E1Slack => "e1-slack",
            Algorithm::E2Unbounded => "e2-unbounded",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Per-call counters. Fields that do not apply to an algorithm stay zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    /// Complete placements (brute force) or candidate checks performed.
    pub nodes_explored: u64,
    pub graph_vertices: usize,
    pub graph_edges: usize,
    pub cover_sets: usize,
    pub cover_nodes: u64,
    /// Set when the FPT size guard (`n > kℓ`) rejected the instance.
    pub guard_rejected: bool,
    /// Cost of the witness on priced instances.
    pub cost: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub answer: Answer,
    pub algorithm: Algorithm,
    pub stats: SolveStats,
}

impl SolveResult {
    fn no(algorithm: Algorithm, stats: SolveStats) -> Self {
        SolveResult {
            answer: Answer::No,
            algorithm,
            stats,
        }
    }

    /// Re-checks a witness against `inst` and records its cost.
    fn yes(
        inst: &RecampaignInstance,
        asg: Assignment,
        algorithm: Algorithm,
        mut stats: SolveStats,
    ) -> Result<Self, SolveError> {
        let report = verify(inst, &asg)?;
        if !report.valid {
            return Err(SolveError::UnsoundWitness);
        }
        stats.cost = report.total_cost;
        Ok(SolveResult {
            answer: Answer::Yes(asg),
            algorithm,
            stats,
        })
    }
}

/// Which procedure `solve` should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmChoice {
    Auto,
    Crc1,
    BMatch,
    Fpt,
    E1,
    E2,
    Brute,
}

impl FromStr for AlgorithmChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "auto" => AlgorithmChoice::Auto,
            "crc1" => AlgorithmChoice::Crc1,
            "bmatch" => AlgorithmChoice::BMatch,
            "fpt" => AlgorithmChoice::Fpt,
            "e1" => AlgorithmChoice::E1,
            "e2" => AlgorithmChoice::E2,
            "brute" => AlgorithmChoice::Brute,
            other => return Err(format!("unknown algorithm {other:?}")),
        })
    }
}

pub fn solve(
    inst: &RecampaignInstance,
    choice: AlgorithmChoice,
    options: &BruteOptions,
) -> Result<SolveResult, SolveError> {
    match choice {
        AlgorithmChoice::Auto => solve_auto(inst, options),
        AlgorithmChoice::Crc1 => solve_crc1(inst),
        AlgorithmChoice::BMatch => solve_trivial_scoring(inst),
        AlgorithmChoice::Fpt => solve_fpt(inst),
        AlgorithmChoice::E1 => solve_e1_bound3(inst),
        AlgorithmChoice::E2 => solve_e2_unbounded(inst),
        AlgorithmChoice::Brute => solve_brute(inst, options),
    }
}

/// Dispatches to the most specific applicable procedure: the E1/E2
/// special cases, then the trivial-rule b-matching, then the ℓ = 1
/// matching, then the cover search for any bound, then brute force.
pub fn solve_auto(
    inst: &RecampaignInstance,
    options: &BruteOptions,
) -> Result<SolveResult, SolveError> {
    let unpriced = inst.pricing().is_none();
    match (inst.rule(), inst.bound()) {
        (Rule::E1, WinnerBound::AtMost(3)) if unpriced => solve_e1_bound3(inst),
        (Rule::E2, WinnerBound::Unbounded) if unpriced => solve_e2_unbounded(inst),
        (Rule::TrivialScoring, _) => solve_trivial_scoring(inst),
        (_, WinnerBound::AtMost(1)) => solve_crc1(inst),
        (_, WinnerBound::AtMost(_)) => solve_fpt(inst),
        (_, WinnerBound::Unbounded) => solve_brute(inst, options),
    }
}

/// Unpriced instances go through priced machinery with `π ≡ 1, B = |A|`.
fn priced_view(
    inst: &RecampaignInstance,
) -> Result<std::borrow::Cow<'_, RecampaignInstance>, SolveError> {
    Ok(match inst.pricing() {
        Some(_) => std::borrow::Cow::Borrowed(inst),
        None => std::borrow::Cow::Owned(lift_to_priced(inst)?),
    })
}
