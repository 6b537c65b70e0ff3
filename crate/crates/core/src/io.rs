//! JSON documents for instances, assignments, elections, and run reports.
//!
//! Every rendered document is pretty-printed JSON followed by one newline, and
//! rendering is deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::election::{
    Ballot, Candidate, Election, ElectionError, Rule, ScoringFamily, ScoringVector,
};
use crate::model::{Assignment, District, ModelError, Pricing, RecampaignInstance, WinnerBound};
use crate::solvers::{Answer, SolveResult, SolveStats};

pub const FORMAT: &str = "recamp/1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Election(#[from] ElectionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDocument {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<Vec<i64>>>,
}

impl From<&Rule> for RuleDocument {
    fn from(rule: &Rule) -> Self {
        let plain = |family: &str| RuleDocument {
            family: family.into(),
            t: None,
            vectors: None,
        };
        match rule {
            Rule::TApproval(t) => RuleDocument {
                t: Some(*t),
                ..plain("t-approval")
            },
            Rule::TVeto(t) => RuleDocument {
                t: Some(*t),
                ..plain("t-veto")
            },
            Rule::Borda => plain("borda"),
            Rule::TrivialScoring => plain("trivial"),
            Rule::Explicit(f) => RuleDocument {
                vectors: Some(f.vectors().iter().map(|v| v.0.clone()).collect()),
                ..plain("explicit")
            },
            Rule::Condorcet => plain("condorcet"),
            Rule::E1 => plain("e1"),
            Rule::E2 => plain("e2"),
        }
    }
}

impl TryFrom<&RuleDocument> for Rule {
    type Error = DocumentError;
    fn try_from(doc: &RuleDocument) -> Result<Self, DocumentError> {
        let t = || {
            doc.t.ok_or_else(|| {
                DocumentError::Format(format!("rule family {} needs a \"t\" field", doc.family))
            })
        };
        let rule = match doc.family.as_str() {
            "t-approval" => Rule::TApproval(t()?),
            "t-veto" => Rule::TVeto(t()?),
            "borda" => Rule::Borda,
            "trivial" => Rule::TrivialScoring,
            "condorcet" => Rule::Condorcet,
            "e1" => Rule::E1,
            "e2" => Rule::E2,
            "explicit" => {
                let vectors = doc.vectors.as_ref().ok_or_else(|| {
                    DocumentError::Format("explicit rule needs a \"vectors\" field".into())
                })?;
                Rule::Explicit(ScoringFamily::new(
                    vectors.iter().cloned().map(ScoringVector).collect(),
                )?)
            }
            other => {
                return Err(DocumentError::Format(format!(
                    "unknown rule family {other:?}"
                )))
            }
        };
        rule.validate()?;
        Ok(rule)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistrictDocument {
    pub candidates: Vec<Candidate>,
    pub votes: Vec<Ballot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundDocument {
    AtMost {
        #[serde(rename = "atMost")]
        at_most: usize,
    },
    Keyword(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PricingDocument {
    /// `[district (1-based), candidate, price]` triples.
    pub prices: Vec<(usize, Candidate, u64)>,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub format: String,
    pub rule: RuleDocument,
    pub districts: Vec<DistrictDocument>,
    pub additional: Vec<Candidate>,
    pub bound: BoundDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pricing: Option<PricingDocument>,
}

impl From<&RecampaignInstance> for InstanceDocument {
    fn from(inst: &RecampaignInstance) -> Self {
        InstanceDocument {
            format: FORMAT.into(),
            rule: inst.rule().into(),
            districts: inst
                .districts()
                .iter()
                .map(|d| DistrictDocument {
                    candidates: d.candidates.clone(),
                    votes: d.votes.clone(),
                })
                .collect(),
            additional: inst.additional().to_vec(),
            bound: match inst.bound() {
                WinnerBound::AtMost(l) => BoundDocument::AtMost { at_most: l },
                WinnerBound::Unbounded => BoundDocument::Keyword("unbounded".into()),
            },
            pricing: inst.pricing().map(|p| PricingDocument {
                prices: p
                    .prices
                    .iter()
                    .map(|((i, a), &v)| (*i, a.clone(), v))
                    .collect(),
                budget: p.budget,
            }),
        }
    }
}

impl TryFrom<&InstanceDocument> for RecampaignInstance {
    type Error = DocumentError;
    fn try_from(doc: &InstanceDocument) -> Result<Self, DocumentError> {
        if doc.format != FORMAT {
            return Err(DocumentError::Format(format!(
                "unsupported format {:?}, expected {FORMAT:?}",
                doc.format
            )));
        }
        let bound = match &doc.bound {
            BoundDocument::AtMost { at_most } => WinnerBound::AtMost(*at_most),
            BoundDocument::Keyword(k) if k == "unbounded" => WinnerBound::Unbounded,
            BoundDocument::Keyword(k) => {
                return Err(DocumentError::Format(format!("unknown bound {k:?}")))
            }
        };
        let pricing = match &doc.pricing {
            None => None,
            Some(p) => {
                let mut prices = BTreeMap::new();
                for (i, a, v) in &p.prices {
                    if prices.insert((*i, a.clone()), *v).is_some() {
                        return Err(DocumentError::Format(format!(
                            "price for district {i} and {a} given twice"
                        )));
                    }
                }
                Some(Pricing {
                    prices,
                    budget: p.budget,
                })
            }
        };
        let districts = doc
            .districts
            .iter()
            .map(|d| District::new(d.candidates.clone(), d.votes.clone()))
            .collect();
        Ok(RecampaignInstance::new(
            Rule::try_from(&doc.rule)?,
            districts,
            doc.additional.clone(),
            bound,
            pricing,
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElectionDocument {
    pub candidates: Vec<Candidate>,
    pub votes: Vec<Ballot>,
}

/// Pretty JSON with a single trailing newline.
pub fn render<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn render_instance(inst: &RecampaignInstance) -> String {
    render(&InstanceDocument::from(inst))
}

pub fn parse_instance(text: &str) -> Result<RecampaignInstance, DocumentError> {
    let doc: InstanceDocument = serde_json::from_str(text)?;
    RecampaignInstance::try_from(&doc)
}

pub fn parse_assignment(text: &str) -> Result<Assignment, DocumentError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_election(text: &str) -> Result<Election, DocumentError> {
    let doc: ElectionDocument = serde_json::from_str(text)?;
    Ok(Election::new(doc.candidates, doc.votes)?)
}

pub fn render_election(e: &Election) -> String {
    render(&ElectionDocument {
        candidates: e.candidates().iter().cloned().collect(),
        votes: e.votes().to_vec(),
    })
}

/// Machine-readable outcome of a solver run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub answer: &'static str,
    pub algorithm: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Assignment>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<u64>,
    pub wall_time_ms: f64,
    pub stats: SolveStats,
}

impl RunReport {
    pub fn new(result: &SolveResult, wall_time_ms: f64) -> Self {
        RunReport {
            answer: if result.answer.is_yes() { "YES" } else { "NO" },
            algorithm: result.algorithm.tag(),
            assignment: match &result.answer {
                Answer::Yes(a) => Some(a.clone()),
                Answer::No => None,
            },
            cost: result.stats.cost,
            wall_time_ms,
            stats: result.stats.clone(),
        }
    }
}
