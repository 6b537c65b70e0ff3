//! NP-hard source problems, exhaustive deciders for them, and the reductions
//! from them to recampaigning.

mod reductions;
mod sources;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::election::{Candidate, ElectionError};
use crate::model::ModelError;

pub use reductions::{
    e33dm_to_1approval, e33dm_to_scoring, find_nontrivial_vector, r3dm_to_exactly3,
    sat_to_approval_unbounded, x3c_to_approval, x3c_to_e1_priced, x3c_to_veto, SCAN_CAP,
};
pub use sources::{
    decide_3dm, decide_e3sat, decide_x3c, E3SatFormula, Exactly3DmInstance, R3dmInstance,
    X3cInstance,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("malformed source instance: {0}")]
    Shape(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("scoring family is trivial for every size up to {0}")]
    Trivial(usize),
    #[error("search space of {needed} exceeds the node budget of {budget}")]
    Resource { needed: String, budget: u64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Election(#[from] ElectionError),
}

/// Mints candidate names that avoid every name already taken.
pub(crate) struct Namer {
    taken: BTreeSet<Candidate>,
}

impl Namer {
    pub(crate) fn new<'a>(taken: impl IntoIterator<Item = &'a Candidate>) -> Self {
        Namer {
            taken: taken.into_iter().cloned().collect(),
        }
    }

    /// `base`, primed until unused.
    pub(crate) fn fresh(&mut self, base: String) -> Result<Candidate, GadgetError> {
        let mut name = base;
        loop {
            let c = Candidate::new(name.clone())?;
            if self.taken.insert(c.clone()) {
                return Ok(c);
            }
            name.push('\'');
        }
    }
}
