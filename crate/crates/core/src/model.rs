//! Recampaigning instances, assignments, and verification.
//!
//! District ballots rank (or approve among) the district's own candidates
//! together with every additional candidate. Evaluating a district after a
//! placement restricts those ballots to the district's candidates plus the
//! additional candidates placed there.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::election::{Ballot, Candidate, Election, ElectionError, Profile, Rule, WinnerSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Election(#[from] ElectionError),
    #[error("an instance needs at least one district")]
    NoDistricts,
    #[error("winner bound must be at least 1")]
    ZeroBound,
    #[error("additional candidate {0} listed more than once")]
    DuplicateAdditional(Candidate),
    #[error("candidate {candidate} appears twice in district {district}")]
    DuplicateDistrictCandidate {
        district: usize,
        candidate: Candidate,
    },
    #[error("additional candidate {candidate} already stands in district {district}")]
    AdditionalInDistrict {
        district: usize,
        candidate: Candidate,
    },
    #[error("district {district}: {source}")]
    DistrictBallots {
        district: usize,
        #[source]
        source: ElectionError,
    },
    #[error("rule {0} does not accept approval ballots")]
    ApprovalNotAllowed(String),
    #[error("pricing: {0}")]
    Pricing(String),
    #[error("malformed assignment: {0}")]
    MalformedAssignment(String),
    #[error("instance is already priced")]
    AlreadyPriced,
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

/// One district `(C_i, V_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct District {
    pub candidates: Vec<Candidate>,
    pub votes: Vec<Ballot>,
}

impl District {
    pub fn new(candidates: Vec<Candidate>, votes: Vec<Ballot>) -> Self {
        District { candidates, votes }
    }

    /// A district with no candidates and no voters.
    pub fn empty() -> Self {
        District::new(Vec::new(), Vec::new())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WinnerBound {
    AtMost(usize),
    Unbounded,
}

impl WinnerBound {
    pub fn admits(self, winners: usize) -> bool {
        match self {
            WinnerBound::AtMost(l) => winners <= l,
            WinnerBound::Unbounded => true,
        }
    }
}

impl fmt::Display for WinnerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WinnerBound::AtMost(l) => write!(f, "at most {l}"),
            WinnerBound::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Placement prices `π(i, a)` (districts indexed from 1) and a budget.
/// Prices of 0 are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pricing {
    pub prices: BTreeMap<(usize, Candidate), u64>,
    pub budget: u64,
}

impl Pricing {
    /// Uniform price for every (district, candidate) pair.
    pub fn uniform(k: usize, additional: &[Candidate], price: u64, budget: u64) -> Self {
        let prices = (1..=k)
            .flat_map(|i| additional.iter().map(move |a| ((i, a.clone()), price)))
            .collect();
        Pricing { prices, budget }
    }
}

/// A placement of every additional candidate into a district (1-based).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub placement: BTreeMap<Candidate, usize>,
}

impl Assignment {
    pub fn new(placement: BTreeMap<Candidate, usize>) -> Self {
        Assignment { placement }
    }

    pub fn district_of(&self, c: &Candidate) -> Option<usize> {
        self.placement.get(c).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LosingCandidate {
        candidate: Candidate,
        district: usize,
    },
    WinnerBoundExceeded {
        district: usize,
        winners: usize,
        bound: usize,
    },
    BudgetExceeded {
        cost: u64,
        budget: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LosingCandidate {
                candidate,
                district,
            } => {
                write!(
                    f,
                    "losing candidate: {candidate} does not win district {district}"
                )
            }
            Violation::WinnerBoundExceeded {
                district,
                winners,
                bound,
            } => write!(
                f,
                "winner bound exceeded: district {district} has {winners} winners (bound {bound})"
            ),
            Violation::BudgetExceeded { cost, budget } => {
                write!(f, "budget exceeded: cost {cost} > budget {budget}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    /// Winner set of every district after placement, in district order.
    pub district_winners: Vec<WinnerSet>,
    pub violations: Vec<Violation>,
    pub total_cost: Option<u64>,
}

/// A recampaigning instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecampaignInstance {
    rule: Rule,
    districts: Vec<District>,
    additional: Vec<Candidate>,
    bound: WinnerBound,
    pricing: Option<Pricing>,
    // derived
    profiles: Vec<Profile>,
    costs: Option<Vec<Vec<u64>>>,
}

impl RecampaignInstance {
    pub fn new(
        rule: Rule,
        districts: Vec<District>,
        additional: Vec<Candidate>,
        bound: WinnerBound,
        pricing: Option<Pricing>,
    ) -> Result<Self, ModelError> {
        rule.validate()?;
        if districts.is_empty() {
            return Err(ModelError::NoDistricts);
        }
        if bound == WinnerBound::AtMost(0) {
            return Err(ModelError::ZeroBound);
        }
        let mut sorted = BTreeSet::new();
        for a in &additional {
            if !sorted.insert(a.clone()) {
                return Err(ModelError::DuplicateAdditional(a.clone()));
            }
        }
        let additional: Vec<Candidate> = sorted.into_iter().collect();

        let mut profiles = Vec::with_capacity(districts.len());
        for (d, district) in districts.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for c in &district.candidates {
                if !seen.insert(c) {
                    return Err(ModelError::DuplicateDistrictCandidate {
                        district: d + 1,
                        candidate: c.clone(),
                    });
                }
                if additional.binary_search(c).is_ok() {
                    return Err(ModelError::AdditionalInDistrict {
                        district: d + 1,
                        candidate: c.clone(),
                    });
                }
            }
            let pool: Vec<Candidate> = district
                .candidates
                .iter()
                .chain(additional.iter())
                .cloned()
                .collect();
            let profile = Profile::build(&pool, &district.votes).map_err(|source| {
                ModelError::DistrictBallots {
                    district: d + 1,
                    source,
                }
            })?;
            if profile.has_approval() && !rule.accepts_approval() {
                return Err(ModelError::ApprovalNotAllowed(rule.to_string()));
            }
            profiles.push(profile);
        }

        let costs = match &pricing {
            None => None,
            Some(p) => Some(dense_costs(p, districts.len(), &additional)?),
        };

        Ok(RecampaignInstance {
            rule,
            districts,
            additional,
            bound,
            pricing,
            profiles,
            costs,
        })
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn districts(&self) -> &[District] {
        &self.districts
    }

    /// Additional candidates in lexicographic order.
    pub fn additional(&self) -> &[Candidate] {
        &self.additional
    }

    pub fn bound(&self) -> WinnerBound {
        self.bound
    }

    pub fn pricing(&self) -> Option<&Pricing> {
        self.pricing.as_ref()
    }

    /// Number of districts.
    pub fn k(&self) -> usize {
        self.districts.len()
    }

    /// Number of additional candidates.
    pub fn n(&self) -> usize {
        self.additional.len()
    }

    /// Same districts and candidates under another bound.
    pub fn with_bound(&self, bound: WinnerBound) -> Result<Self, ModelError> {
        if bound == WinnerBound::AtMost(0) {
            return Err(ModelError::ZeroBound);
        }
        let mut out = self.clone();
        out.bound = bound;
        Ok(out)
    }

    pub(crate) fn budget(&self) -> Option<u64> {
        self.pricing.as_ref().map(|p| p.budget)
    }

    /// Price of placing additional candidate `a` (index into `additional`)
    /// into district `d` (0-based).
    pub(crate) fn cost(&self, d: usize, a: usize) -> Option<u64> {
        self.costs.as_ref().map(|c| c[d][a])
    }

    /// Winners of district `d` (0-based) when the additional candidates with
    /// indices `placed` stand there. Returned as pool indices: `0..|C_d|` are
    /// the district's own candidates, `|C_d| + j` is additional candidate `j`.
    pub(crate) fn district_winner_indices(
        &self,
        d: usize,
        placed: &[usize],
    ) -> Result<Vec<usize>, ElectionError> {
        let own = self.districts[d].candidates.len();
        let mut present = vec![false; own + self.additional.len()];
        present[..own].iter_mut().for_each(|p| *p = true);
        for &a in placed {
            present[own + a] = true;
        }
        self.profiles[d].winners(&self.rule, &present)
    }

    /// Whether placing exactly `placed` into district `d` makes every placed
    /// candidate win within the winner bound. Empty placements always pass.
    pub(crate) fn district_accepts(
        &self,
        d: usize,
        placed: &[usize],
    ) -> Result<bool, ElectionError> {
        if placed.is_empty() {
            return Ok(true);
        }
        let own = self.districts[d].candidates.len();
        let w = self.district_winner_indices(d, placed)?;
        Ok(self.bound.admits(w.len())
            && placed.iter().all(|&a| w.binary_search(&(own + a)).is_ok()))
    }

    pub(crate) fn district_winner_set(
        &self,
        d: usize,
        placed: &[usize],
    ) -> Result<WinnerSet, ElectionError> {
        let own = self.districts[d].candidates.len();
        let w = self.district_winner_indices(d, placed)?;
        Ok(WinnerSet(
            w.into_iter()
                .map(|i| {
                    if i < own {
                        self.districts[d].candidates[i].clone()
                    } else {
                        self.additional[i - own].clone()
                    }
                })
                .collect(),
        ))
    }

    /// Converts an assignment into 0-based district indices per additional
    /// candidate (in `additional` order).
    pub(crate) fn placement_vector(&self, asg: &Assignment) -> Result<Vec<usize>, ModelError> {
        if let Some(c) = asg
            .placement
            .keys()
            .find(|c| self.additional.binary_search(c).is_err())
        {
            return Err(ModelError::MalformedAssignment(format!(
                "{c} is not an additional candidate"
            )));
        }
        if asg.placement.len() != self.additional.len() {
            return Err(ModelError::MalformedAssignment(format!(
                "expected {} placements, found {}",
                self.additional.len(),
                asg.placement.len()
            )));
        }
        self.additional
            .iter()
            .map(|a| match asg.placement.get(a) {
                None => Err(ModelError::MalformedAssignment(format!(
                    "{a} is not placed"
                ))),
                Some(&i) if i == 0 || i > self.k() => {
                    Err(ModelError::MalformedAssignment(format!(
                        "{a} placed in district {i}, but districts are 1..={}",
                        self.k()
                    )))
                }
                Some(&i) => Ok(i - 1),
            })
            .collect()
    }

    pub(crate) fn assignment_from_vector(&self, districts: &[usize]) -> Assignment {
        Assignment::new(
            self.additional
                .iter()
                .cloned()
                .zip(districts.iter().map(|d| d + 1))
                .collect(),
        )
    }
}

fn dense_costs(
    p: &Pricing,
    k: usize,
    additional: &[Candidate],
) -> Result<Vec<Vec<u64>>, ModelError> {
    let mut costs = vec![vec![None; additional.len()]; k];
    for ((i, a), &price) in &p.prices {
        if *i == 0 || *i > k {
            return Err(ModelError::Pricing(format!(
                "district index {i} out of range 1..={k}"
            )));
        }
        let j = additional
            .binary_search(a)
            .map_err(|_| ModelError::Pricing(format!("{a} is not an additional candidate")))?;
        costs[i - 1][j] = Some(price);
    }
    costs
        .into_iter()
        .enumerate()
        .map(|(d, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, c)| {
                    c.ok_or_else(|| {
                        ModelError::Pricing(format!(
                            "missing price for district {} and {}",
                            d + 1,
                            additional[j]
                        ))
                    })
                })
                .collect()
        })
        .collect()
}

/// Checks an assignment against every requirement of the instance.
pub fn verify(
    inst: &RecampaignInstance,
    asg: &Assignment,
) -> Result<VerificationReport, ModelError> {
    let placement = inst.placement_vector(asg)?;
    let mut placed: Vec<Vec<usize>> = vec![Vec::new(); inst.k()];
    for (a, &d) in placement.iter().enumerate() {
        placed[d].push(a);
    }

    let mut violations = Vec::new();
    let mut district_winners = Vec::with_capacity(inst.k());
    for (d, members) in placed.iter().enumerate() {
        let w = inst.district_winner_set(d, members)?;
        if !members.is_empty() {
            for &a in members {
                let c = &inst.additional[a];
                if !w.contains(c) {
                    violations.push(Violation::LosingCandidate {
                        candidate: c.clone(),
                        district: d + 1,
                    });
                }
            }
            if let WinnerBound::AtMost(l) = inst.bound {
                if w.len() > l {
                    violations.push(Violation::WinnerBoundExceeded {
                        district: d + 1,
                        winners: w.len(),
                        bound: l,
                    });
                }
            }
        }
        district_winners.push(w);
    }

    let total_cost = inst.pricing.as_ref().map(|p| {
        let cost: u64 = placement
            .iter()
            .enumerate()
            .map(|(a, &d)| inst.cost(d, a).unwrap_or(0))
            .sum();
        if cost > p.budget {
            violations.push(Violation::BudgetExceeded {
                cost,
                budget: p.budget,
            });
        }
        cost
    });

    Ok(VerificationReport {
        valid: violations.is_empty(),
        district_winners,
        violations,
        total_cost,
    })
}

/// The instance asking whether `p` wins `election`: one district holding the
/// other candidates, `A = {p}`, no winner bound.
pub fn from_winner_problem(
    election: &Election,
    p: &Candidate,
    rule: Rule,
) -> Result<RecampaignInstance, ModelError> {
    if !election.candidates().contains(p) {
        return Err(ElectionError::UnknownCandidate(p.clone()).into());
    }
    let rest: Vec<Candidate> = election
        .candidates()
        .iter()
        .filter(|c| *c != p)
        .cloned()
        .collect();
    RecampaignInstance::new(
        rule,
        vec![District::new(rest, election.votes().to_vec())],
        vec![p.clone()],
        WinnerBound::Unbounded,
        None,
    )
}

/// Attaches `π ≡ 1` and `B = |A|`, under which every assignment costs exactly
/// the budget.
pub fn lift_to_priced(inst: &RecampaignInstance) -> Result<RecampaignInstance, ModelError> {
    if inst.pricing.is_some() {
        return Err(ModelError::AlreadyPriced);
    }
    let pricing = Pricing::uniform(inst.k(), &inst.additional, 1, inst.n() as u64);
    let mut out = inst.clone();
    out.costs = Some(dense_costs(&pricing, out.k(), &out.additional)?);
    out.pricing = Some(pricing);
    Ok(out)
}

/// Parameters for [`random_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    pub k: usize,
    pub n: usize,
    pub rule: Rule,
    pub min_candidates: usize,
    pub max_candidates: usize,
    pub max_votes: usize,
    pub bound: WinnerBound,
    pub priced: bool,
}

impl RandomParams {
    pub fn new(k: usize, n: usize, rule: Rule, bound: WinnerBound) -> Self {
        RandomParams {
            k,
            n,
            rule,
            min_candidates: 0,
            max_candidates: 3,
            max_votes: 4,
            bound,
            priced: false,
        }
    }
}

/// A seeded random instance. Districts get `c<d>_<j>` candidates, the
/// additional candidates are `a<j>`; ballots are uniform random rankings,
/// prices uniform in `[0, 10]`, and the budget uniform in `[0, 10n]`.
pub fn random_instance(params: &RandomParams, seed: u64) -> Result<RecampaignInstance, ModelError> {
    if params.k == 0 {
        return Err(ModelError::InvalidParams("k must be positive".into()));
    }
    if params.min_candidates > params.max_candidates {
        return Err(ModelError::InvalidParams(
            "min_candidates exceeds max_candidates".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let additional: Vec<Candidate> = (1..=params.n)
        .map(|j| Candidate::new(format!("a{j}")))
        .collect::<Result<_, _>>()?;
    let mut districts = Vec::with_capacity(params.k);
    for d in 1..=params.k {
        let c = rng.gen_range(params.min_candidates..=params.max_candidates);
        let candidates: Vec<Candidate> = (1..=c)
            .map(|j| Candidate::new(format!("c{d}_{j}")))
            .collect::<Result<_, _>>()?;
        let pool: Vec<Candidate> = candidates.iter().chain(&additional).cloned().collect();
        let votes = (0..rng.gen_range(0..=params.max_votes))
            .map(|_| {
                let mut order = pool.clone();
                order.shuffle(&mut rng);
                Ballot::Ranking(order)
            })
            .collect();
        districts.push(District::new(candidates, votes));
    }
    let pricing = params.priced.then(|| {
        let prices = (1..=params.k)
            .flat_map(|i| additional.iter().map(move |a| (i, a.clone())))
            .map(|key| (key, rng.gen_range(0..=10)))
            .collect();
        let budget = rng.gen_range(0..=10 * params.n as u64);
        Pricing { prices, budget }
    });
    RecampaignInstance::new(
        params.rule.clone(),
        districts,
        additional,
        params.bound,
        pricing,
    )
}
