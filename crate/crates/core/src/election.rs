//! Candidates, ballots, and winner determination.
//!
//! Every rule is evaluated over an indexed [`Profile`]: a pool of candidates
//! plus ballots over the pool. A `present` mask restricts the pool to a
//! sub-election, which is how districts are evaluated once additional
//! candidates have been placed into them: each stored ballot is restricted to
//! the present candidates, preserving relative order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElectionError {
    #[error(
        "invalid candidate name {0:?}: names must be non-empty and contain no whitespace or commas"
    )]
    InvalidName(String),
    #[error("candidate {0} listed more than once")]
    DuplicateCandidate(Candidate),
    #[error("unknown candidate {0}")]
    UnknownCandidate(Candidate),
    #[error("ranking ballot #{index} is not a linear order over the election's candidates")]
    MalformedRanking { index: usize },
    #[error("approval ballot #{index} names a candidate outside the election")]
    MalformedApproval { index: usize },
    #[error("rule {rule} requires ranking ballots, found an approval ballot")]
    BallotType { rule: String },
    #[error("rule {0} is not a scoring rule")]
    UnsupportedRule(String),
    #[error("scoring family defines no vector for {0} candidates")]
    MissingVector(usize),
    #[error("invalid rule parameter: {0}")]
    InvalidRule(String),
    #[error("score overflow")]
    Overflow,
}

/// A candidate name. Ordering is byte-wise lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Candidate(String);

impl Candidate {
    pub fn new(name: impl Into<String>) -> Result<Self, ElectionError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',') {
            return Err(ElectionError::InvalidName(name));
        }
        Ok(Candidate(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Candidate {
    type Error = ElectionError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Candidate::new(s)
    }
}

impl TryFrom<&str> for Candidate {
    type Error = ElectionError;
    fn try_from(s: &str) -> Result<Self, Self::Error> {
        Candidate::new(s)
    }
}

impl From<Candidate> for String {
    fn from(c: Candidate) -> String {
        c.0
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for building candidates from literals in tests and generators.
/// Panics on an invalid name.
pub fn cand(name: &str) -> Candidate {
    Candidate::new(name).expect("valid candidate name")
}

/// A single ballot: a full ranking or an approval set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ballot {
    Ranking(Vec<Candidate>),
    Approval { approve: BTreeSet<Candidate> },
}

impl Ballot {
    pub fn ranking<I, S>(names: I) -> Result<Self, ElectionError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(Ballot::Ranking(
            names
                .into_iter()
                .map(Candidate::new)
                .collect::<Result<_, _>>()?,
        ))
    }

    pub fn is_approval(&self) -> bool {
        matches!(self, Ballot::Approval { .. })
    }
}

/// An election `(C, V)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    candidates: BTreeSet<Candidate>,
    votes: Vec<Ballot>,
}

impl Election {
    pub fn new(
        candidates: impl IntoIterator<Item = Candidate>,
        votes: Vec<Ballot>,
    ) -> Result<Self, ElectionError> {
        let mut set = BTreeSet::new();
        for c in candidates {
            if !set.insert(c.clone()) {
                return Err(ElectionError::DuplicateCandidate(c));
            }
        }
        let pool: Vec<Candidate> = set.iter().cloned().collect();
        Profile::build(&pool, &votes)?;
        Ok(Election {
            candidates: set,
            votes,
        })
    }

    pub fn candidates(&self) -> &BTreeSet<Candidate> {
        &self.candidates
    }

    pub fn votes(&self) -> &[Ballot] {
        &self.votes
    }

    fn profile(&self) -> (Vec<Candidate>, Profile) {
        let pool: Vec<Candidate> = self.candidates.iter().cloned().collect();
        let profile = Profile::build(&pool, &self.votes).expect("validated at construction");
        (pool, profile)
    }
}

/// A scoring vector `(α_1, …, α_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScoringVector(pub Vec<i64>);

impl ScoringVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// True when at least two distinct values occur.
    pub fn is_nontrivial(&self) -> bool {
        self.0.windows(2).any(|w| w[0] != w[1])
    }
}

/// A pure scoring family given by an explicit table; `vectors[m - 1]` is the
/// vector for `m` candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringFamily {
    vectors: Vec<ScoringVector>,
}

impl ScoringFamily {
    pub fn new(vectors: Vec<ScoringVector>) -> Result<Self, ElectionError> {
        if !validate_purity(&vectors, vectors.len()) {
            return Err(ElectionError::InvalidRule(
                "explicit scoring table is not a pure nonincreasing family".into(),
            ));
        }
        Ok(ScoringFamily { vectors })
    }

    pub fn vectors(&self) -> &[ScoringVector] {
        &self.vectors
    }
}

/// The voting rules understood by this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    TApproval(u32),
    TVeto(u32),
    Borda,
    TrivialScoring,
    Explicit(ScoringFamily),
    Condorcet,
    /// Elects everyone when exactly three candidates stand, nobody otherwise.
    E1,
    /// Elects everyone when at least four candidates stand, else the
    /// 1-approval winners.
    E2,
}

impl Rule {
    pub fn validate(&self) -> Result<(), ElectionError> {
        match self {
            Rule::TApproval(0) | Rule::TVeto(0) => {
                Err(ElectionError::InvalidRule("t must be positive".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn is_scoring(&self) -> bool {
        matches!(
            self,
            Rule::TApproval(_)
                | Rule::TVeto(_)
                | Rule::Borda
                | Rule::TrivialScoring
                | Rule::Explicit(_)
        )
    }

    /// Whether approval ballots are meaningful under this rule. Only E1 ignores
    /// ballot content entirely.
    pub fn accepts_approval(&self) -> bool {
        matches!(self, Rule::E1)
    }

    /// Largest possible winner set, when the rule is resolute at some level.
    pub fn resoluteness(&self) -> Option<usize> {
        match self {
            Rule::Condorcet => Some(1),
            Rule::E1 => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::TApproval(t) => write!(f, "t-approval:{t}"),
            Rule::TVeto(t) => write!(f, "t-veto:{t}"),
            Rule::Borda => f.write_str("borda"),
            Rule::TrivialScoring => f.write_str("trivial"),
            Rule::Explicit(_) => f.write_str("explicit"),
            Rule::Condorcet => f.write_str("condorcet"),
            Rule::E1 => f.write_str("e1"),
            Rule::E2 => f.write_str("e2"),
        }
    }
}

impl std::str::FromStr for Rule {
    type Err = ElectionError;

    /// Parses `borda`, `trivial`, `condorcet`, `e1`, `e2`, `t-approval:T`,
    /// `t-veto:T`. Explicit tables only come from instance documents.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ElectionError::InvalidRule(format!("unrecognized rule {s:?}"));
        let (family, param) = match s.split_once(':') {
            Some((f, p)) => (f, Some(p)),
            None => (s, None),
        };
        let t = || -> Result<u32, ElectionError> {
            param.ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())
        };
        let rule = match (family, param) {
            ("borda", None) => Rule::Borda,
            ("trivial", None) => Rule::TrivialScoring,
            ("condorcet", None) => Rule::Condorcet,
            ("e1", None) => Rule::E1,
            ("e2", None) => Rule::E2,
            ("t-approval", Some(_)) => Rule::TApproval(t()?),
            ("t-veto", Some(_)) => Rule::TVeto(t()?),
            _ => return Err(bad()),
        };
        rule.validate()?;
        Ok(rule)
    }
}

/// The set of winners of an election. May be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WinnerSet(pub BTreeSet<Candidate>);

impl WinnerSet {
    pub fn contains(&self, c: &Candidate) -> bool {
        self.0.contains(c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Candidate> {
        self.0.iter()
    }
}

/// Scores of every candidate under a scoring rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreTable(pub BTreeMap<Candidate, i64>);

impl ScoreTable {
    pub fn get(&self, c: &Candidate) -> Option<i64> {
        self.0.get(c).copied()
    }
}

/// The scoring vector the rule uses for `m` candidates.
pub fn scoring_vector(rule: &Rule, m: usize) -> Result<ScoringVector, ElectionError> {
    rule.validate()?;
    let v = match rule {
        Rule::TApproval(t) => (0..m).map(|pos| i64::from(pos < *t as usize)).collect(),
        Rule::TVeto(t) => {
            let ones = m.saturating_sub(*t as usize);
            (0..m).map(|pos| i64::from(pos < ones)).collect()
        }
        Rule::Borda => (0..m).rev().map(|x| x as i64).collect(),
        Rule::TrivialScoring => vec![0; m],
        Rule::Explicit(family) => {
            if m == 0 {
                Vec::new()
            } else {
                family
                    .vectors
                    .get(m - 1)
                    .ok_or(ElectionError::MissingVector(m))?
                    .0
                    .clone()
            }
        }
        other => return Err(ElectionError::UnsupportedRule(other.to_string())),
    };
    Ok(ScoringVector(v))
}

/// Positional scores of every candidate.
pub fn tally(rule: &Rule, election: &Election) -> Result<ScoreTable, ElectionError> {
    let (pool, profile) = election.profile();
    let present = vec![true; pool.len()];
    let scores = profile.scores(rule, &present)?;
    Ok(ScoreTable(pool.into_iter().zip(scores).collect()))
}

pub fn winners(rule: &Rule, election: &Election) -> Result<WinnerSet, ElectionError> {
    let (pool, profile) = election.profile();
    let present = vec![true; pool.len()];
    let idx = profile.winners(rule, &present)?;
    Ok(WinnerSet(
        idx.into_iter().map(|i| pool[i].clone()).collect(),
    ))
}

/// Whether `p` wins and there are at most `k` winners.
pub fn is_k_winner(
    rule: &Rule,
    election: &Election,
    p: &Candidate,
    k: usize,
) -> Result<bool, ElectionError> {
    if !election.candidates.contains(p) {
        return Err(ElectionError::UnknownCandidate(p.clone()));
    }
    let w = winners(rule, election)?;
    Ok(w.contains(p) && w.len() <= k)
}

/// Checks that `table[0..m_max]` (vectors for 1..=m_max candidates) is a pure
/// scoring family: each vector is nonincreasing and each `s_{i+1}` is `s_i`
/// with exactly one value inserted.
pub fn validate_purity(table: &[ScoringVector], m_max: usize) -> bool {
    if table.len() < m_max {
        return false;
    }
    for (i, v) in table.iter().take(m_max).enumerate() {
        if v.len() != i + 1 || !v.is_nonincreasing() {
            return false;
        }
        if i > 0 && !is_single_insertion(&table[i - 1].0, &v.0) {
            return false;
        }
    }
    true
}

fn is_single_insertion(shorter: &[i64], longer: &[i64]) -> bool {
    longer.len() == shorter.len() + 1
        && (0..longer.len()).any(|skip| {
            longer
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, x)| x)
                .eq(shorter.iter())
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum IndexedBallot {
    Ranking(Vec<u32>),
    Approval(Vec<u32>),
}

/// Ballots over a fixed candidate pool, stored by pool index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Profile {
    size: usize,
    ballots: Vec<IndexedBallot>,
}

impl Profile {
    /// Indexes `votes` against `pool`. Rankings must be permutations of the
    /// whole pool; approval sets must be subsets of it.
    pub(crate) fn build(pool: &[Candidate], votes: &[Ballot]) -> Result<Profile, ElectionError> {
        let index: HashMap<&Candidate, u32> = pool
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i as u32))
            .collect();
        let mut ballots = Vec::with_capacity(votes.len());
        for (vi, vote) in votes.iter().enumerate() {
            match vote {
                Ballot::Ranking(order) => {
                    let mut seen = vec![false; pool.len()];
                    let mut idx = Vec::with_capacity(order.len());
                    for c in order {
                        let &j = index
                            .get(c)
                            .ok_or(ElectionError::MalformedRanking { index: vi })?;
                        if std::mem::replace(&mut seen[j as usize], true) {
                            return Err(ElectionError::MalformedRanking { index: vi });
                        }
                        idx.push(j);
                    }
                    if idx.len() != pool.len() {
                        return Err(ElectionError::MalformedRanking { index: vi });
                    }
                    ballots.push(IndexedBallot::Ranking(idx));
                }
                Ballot::Approval { approve } => {
                    let idx = approve
                        .iter()
                        .map(|c| {
                            index
                                .get(c)
                                .copied()
                                .ok_or(ElectionError::MalformedApproval { index: vi })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    ballots.push(IndexedBallot::Approval(idx));
                }
            }
        }
        Ok(Profile {
            size: pool.len(),
            ballots,
        })
    }

    pub(crate) fn has_approval(&self) -> bool {
        self.ballots
            .iter()
            .any(|b| matches!(b, IndexedBallot::Approval(_)))
    }

    fn rankings<'a>(
        &'a self,
        rule: &Rule,
    ) -> Result<impl Iterator<Item = &'a [u32]> + 'a, ElectionError> {
        if self.has_approval() {
            return Err(ElectionError::BallotType {
                rule: rule.to_string(),
            });
        }
        Ok(self.ballots.iter().map(|b| match b {
            IndexedBallot::Ranking(r) => r.as_slice(),
            IndexedBallot::Approval(_) => unreachable!(),
        }))
    }

    /// Scores under a scoring rule, indexed by pool position (absent
    /// candidates score 0).
    pub(crate) fn scores(&self, rule: &Rule, present: &[bool]) -> Result<Vec<i64>, ElectionError> {
        debug_assert_eq!(present.len(), self.size);
        let m = present.iter().filter(|&&p| p).count();
        let vector = scoring_vector(rule, m)?;
        let mut scores = vec![0i64; self.size];
        for ranking in self.rankings(rule)? {
            let mut pos = 0;
            for &c in ranking {
                let c = c as usize;
                if present[c] {
                    scores[c] = scores[c]
                        .checked_add(vector.0[pos])
                        .ok_or(ElectionError::Overflow)?;
                    pos += 1;
                }
            }
        }
        Ok(scores)
    }

    /// Winners of the sub-election on the present candidates, as sorted pool
    /// indices.
    pub(crate) fn winners(
        &self,
        rule: &Rule,
        present: &[bool],
    ) -> Result<Vec<usize>, ElectionError> {
        let members: Vec<usize> = (0..self.size).filter(|&i| present[i]).collect();
        match rule {
            Rule::E1 => Ok(if members.len() == 3 {
                members
            } else {
                Vec::new()
            }),
            Rule::E2 => {
                let _ = self.rankings(rule)?;
                if members.len() >= 4 {
                    Ok(members)
                } else {
                    self.winners(&Rule::TApproval(1), present)
                }
            }
            Rule::Condorcet => self.condorcet(rule, present, &members),
            _ => {
                let scores = self.scores(rule, present)?;
                let Some(best) = members.iter().map(|&i| scores[i]).max() else {
                    return Ok(Vec::new());
                };
                Ok(members.into_iter().filter(|&i| scores[i] == best).collect())
            }
        }
    }

    fn condorcet(
        &self,
        rule: &Rule,
        present: &[bool],
        members: &[usize],
    ) -> Result<Vec<usize>, ElectionError> {
        // wins[a][b] = number of ballots ranking a above b
        let n = self.size;
        let mut wins = vec![0u64; n * n];
        for ranking in self.rankings(rule)? {
            let order: Vec<usize> = ranking
                .iter()
                .map(|&c| c as usize)
                .filter(|&c| present[c])
                .collect();
            for (i, &a) in order.iter().enumerate() {
                for &b in &order[i + 1..] {
                    wins[a * n + b] += 1;
                }
            }
        }
        Ok(members
            .iter()
            .copied()
            .filter(|&a| {
                members
                    .iter()
                    .all(|&b| a == b || wins[a * n + b] > wins[b * n + a])
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank(names: &[&str]) -> Ballot {
        Ballot::ranking(names.iter().copied()).unwrap()
    }

    fn election(cands: &[&str], votes: Vec<Ballot>) -> Election {
        Election::new(cands.iter().map(|c| cand(c)), votes).unwrap()
    }

    fn names(w: &WinnerSet) -> Vec<&str> {
        w.iter().map(|c| c.as_str()).collect()
    }

    #[test]
    fn scoring_vectors() {
        assert_eq!(
            scoring_vector(&Rule::TApproval(2), 4).unwrap().0,
            vec![1, 1, 0, 0]
        );
        assert_eq!(scoring_vector(&Rule::TVeto(1), 3).unwrap().0, vec![1, 1, 0]);
        assert_eq!(
            scoring_vector(&Rule::TrivialScoring, 0).unwrap().0,
            Vec::<i64>::new()
        );
        assert_eq!(scoring_vector(&Rule::Borda, 3).unwrap().0, vec![2, 1, 0]);
        assert_eq!(scoring_vector(&Rule::TVeto(5), 3).unwrap().0, vec![0, 0, 0]);
        assert!(matches!(
            scoring_vector(&Rule::Condorcet, 3),
            Err(ElectionError::UnsupportedRule(_))
        ));
        let fam =
            ScoringFamily::new(vec![ScoringVector(vec![0]), ScoringVector(vec![1, 0])]).unwrap();
        assert!(matches!(
            scoring_vector(&Rule::Explicit(fam), 3),
            Err(ElectionError::MissingVector(3))
        ));
    }

    #[test]
    fn tally_examples() {
        let e = election(
            &["a", "b"],
            vec![rank(&["a", "b"]), rank(&["a", "b"]), rank(&["b", "a"])],
        );
        let t = tally(&Rule::TApproval(1), &e).unwrap();
        assert_eq!(t.get(&cand("a")), Some(2));
        assert_eq!(t.get(&cand("b")), Some(1));

        let e = election(&["a"], vec![]);
        assert_eq!(tally(&Rule::Borda, &e).unwrap().get(&cand("a")), Some(0));

        let e = election(
            &["a", "b", "c"],
            vec![rank(&["a", "b", "c"]), rank(&["c", "b", "a"])],
        );
        let t = tally(&Rule::Borda, &e).unwrap();
        assert!(t.0.values().all(|&s| s == 2));
    }

    #[test]
    fn approval_ballot_rejected_by_positional_rule() {
        let e = Election::new(
            [cand("a"), cand("b")],
            vec![Ballot::Approval {
                approve: [cand("a")].into(),
            }],
        )
        .unwrap();
        assert!(matches!(
            tally(&Rule::Borda, &e),
            Err(ElectionError::BallotType { .. })
        ));
        assert!(matches!(
            winners(&Rule::E2, &e),
            Err(ElectionError::BallotType { .. })
        ));
        assert_eq!(winners(&Rule::E1, &e).unwrap().len(), 0);
    }

    #[test]
    fn e1_and_e2() {
        let e3 = election(&["a", "b", "c"], vec![]);
        assert_eq!(
            names(&winners(&Rule::E1, &e3).unwrap()),
            vec!["a", "b", "c"]
        );
        let e2 = election(&["a", "b"], vec![]);
        assert!(winners(&Rule::E1, &e2).unwrap().is_empty());

        let e4 = election(&["a", "b", "c", "d"], vec![rank(&["a", "b", "c", "d"])]);
        assert_eq!(winners(&Rule::E2, &e4).unwrap().len(), 4);
        let small = election(&["a", "b"], vec![rank(&["b", "a"])]);
        assert_eq!(names(&winners(&Rule::E2, &small).unwrap()), vec!["b"]);
    }

    #[test]
    fn condorcet_winner_and_cycle() {
        // a beats b (2:1) and c (2:1).
        let e = election(
            &["a", "b", "c"],
            vec![
                rank(&["a", "b", "c"]),
                rank(&["a", "c", "b"]),
                rank(&["b", "c", "a"]),
            ],
        );
        assert_eq!(names(&winners(&Rule::Condorcet, &e).unwrap()), vec!["a"]);
        assert!(is_k_winner(&Rule::Condorcet, &e, &cand("a"), 1).unwrap());

        let cycle = election(
            &["a", "b", "c"],
            vec![
                rank(&["a", "b", "c"]),
                rank(&["b", "c", "a"]),
                rank(&["c", "a", "b"]),
            ],
        );
        assert!(winners(&Rule::Condorcet, &cycle).unwrap().is_empty());

        let lone = election(&["a"], vec![]);
        assert_eq!(names(&winners(&Rule::Condorcet, &lone).unwrap()), vec!["a"]);
    }

    #[test]
    fn k_winner() {
        let e = election(&["a", "b"], vec![]);
        assert!(!is_k_winner(&Rule::TrivialScoring, &e, &cand("a"), 1).unwrap());
        assert!(is_k_winner(&Rule::TrivialScoring, &e, &cand("a"), 2).unwrap());
        let e3 = election(&["a", "b", "c"], vec![]);
        assert!(is_k_winner(&Rule::E1, &e3, &cand("a"), 3).unwrap());
        assert!(matches!(
            is_k_winner(&Rule::E1, &e3, &cand("z"), 3),
            Err(ElectionError::UnknownCandidate(_))
        ));
    }

    #[test]
    fn empty_elections() {
        let empty = election(&[], vec![]);
        for rule in [
            Rule::TrivialScoring,
            Rule::Borda,
            Rule::Condorcet,
            Rule::E1,
            Rule::E2,
        ] {
            assert!(winners(&rule, &empty).unwrap().is_empty(), "{rule}");
        }
        let two = election(&["a", "b"], vec![]);
        assert_eq!(winners(&Rule::TApproval(1), &two).unwrap().len(), 2);
    }

    #[test]
    fn purity() {
        let borda: Vec<_> = (1..=4)
            .map(|m| scoring_vector(&Rule::Borda, m).unwrap())
            .collect();
        assert!(validate_purity(&borda, 4));
        let bad = vec![
            ScoringVector(vec![1]),
            ScoringVector(vec![1, 0]),
            ScoringVector(vec![2, 2, 0]),
        ];
        assert!(!validate_purity(&bad, 3));
        let prepended = vec![
            ScoringVector(vec![1]),
            ScoringVector(vec![1, 0]),
            ScoringVector(vec![2, 1, 0]),
        ];
        assert!(validate_purity(&prepended, 3));
        let two_approval: Vec<_> = (1..=5)
            .map(|m| scoring_vector(&Rule::TApproval(2), m).unwrap())
            .collect();
        assert!(validate_purity(&two_approval, 5));
        assert!(!validate_purity(&two_approval, 6));
        assert!(!validate_purity(&[ScoringVector(vec![0, 1])], 1));
    }

    #[test]
    fn election_validation() {
        assert!(Candidate::new("a b").is_err());
        assert!(Candidate::new("a,b").is_err());
        assert!(Candidate::new("").is_err());
        assert!(matches!(
            Election::new([cand("a"), cand("a")], vec![]),
            Err(ElectionError::DuplicateCandidate(_))
        ));
        assert!(matches!(
            Election::new([cand("a"), cand("b")], vec![rank(&["a"])]),
            Err(ElectionError::MalformedRanking { index: 0 })
        ));
        assert!(matches!(
            Election::new([cand("a"), cand("b")], vec![rank(&["a", "a"])]),
            Err(ElectionError::MalformedRanking { index: 0 })
        ));
    }

    #[test]
    fn rule_parsing() {
        assert_eq!("t-approval:2".parse::<Rule>().unwrap(), Rule::TApproval(2));
        assert_eq!("e1".parse::<Rule>().unwrap(), Rule::E1);
        assert!("t-veto:0".parse::<Rule>().is_err());
        assert!("t-veto".parse::<Rule>().is_err());
        assert!("plurality".parse::<Rule>().is_err());
    }
}
