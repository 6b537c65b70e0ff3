use std::collections::HashMap;
use std::fmt;

use crate::election::Candidate;
use crate::model::{RecampaignInstance, WinnerBound};

use super::{priced_view, Algorithm, SolveError, SolveResult, SolveStats};

/// Element of the cover universe `A ∪ [k]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UniverseElement {
    Candidate(Candidate),
    /// District tag, 1-based.
    District(usize),
}

impl fmt::Display for UniverseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniverseElement::Candidate(c) => write!(f, "{c}"),
            UniverseElement::District(i) => write!(f, "#{i}"),
        }
    }
}

/// A family member `A′ ∪ {i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSet {
    /// District tag `i`, 1-based.
    pub district: usize,
    /// `A′` as indices into the instance's additional candidates, ascending.
    pub members: Vec<usize>,
    pub weight: u64,
    mask: u64,
}

impl CoverSet {
    /// `A′` as a bitmask over the additional candidates.
    pub fn mask(&self) -> u64 {
        self.mask
    }
}

/// Universe `A ∪ [k]`, weighted family, and weight cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSystem {
    pub additional: Vec<Candidate>,
    pub k: usize,
    /// Members grouped by district tag: empty set first, then by size and
    /// lexicographic order of indices.
    pub sets: Vec<CoverSet>,
    pub cap: u64,
}

impl CoverSystem {
    pub fn universe(&self) -> Vec<UniverseElement> {
        self.additional
            .iter()
            .cloned()
            .map(UniverseElement::Candidate)
            .chain((1..=self.k).map(UniverseElement::District))
            .collect()
    }

    pub fn universe_size(&self) -> usize {
        self.additional.len() + self.k
    }

    /// Members carrying tag `district` (1-based).
    pub fn sets_for(&self, district: usize) -> impl Iterator<Item = &CoverSet> {
        self.sets.iter().filter(move |s| s.district == district)
    }
}

/// Builds the weighted exact-cover system. `A′ ∪ {i}` is a member when `A′`
/// is empty, or when `1 ≤ |A′| ≤ ℓ`, every candidate of `A′` wins district
/// `i` after placing exactly `A′` there, that district has at most `ℓ`
/// winners, and the placement costs at most `B`.
pub fn build_exact_cover_system(inst: &RecampaignInstance) -> Result<CoverSystem, SolveError> {
    let WinnerBound::AtMost(l) = inst.bound() else {
        return Err(SolveError::WrongVariant(
            "the cover system needs a bounded instance".into(),
        ));
    };
    let priced = priced_view(inst)?;
    let (n, k) = (inst.n(), inst.k());
    if n > 63 {
        return Err(SolveError::Resource {
            needed: format!("2^{n} subsets"),
            budget: 1 << 63,
        });
    }
    let cap = priced.budget().expect("priced view");
    let mut sets = Vec::new();
    for d in 0..k {
        sets.push(CoverSet {
            district: d + 1,
            members: Vec::new(),
            weight: 0,
            mask: 0,
        });
        for size in 1..=l.min(n) {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                let weight: u64 = combo
                    .iter()
                    .map(|&a| priced.cost(d, a).expect("priced view"))
                    .sum();
                if weight <= cap && inst.district_accepts(d, &combo)? {
                    sets.push(CoverSet {
                        district: d + 1,
                        mask: combo.iter().fold(0, |m, &a| m | 1 << a),
                        members: combo.clone(),
                        weight,
                    });
                }
                if !next_combination(&mut combo, n) {
                    break;
                }
            }
        }
    }
    Ok(CoverSystem {
        additional: inst.additional().to_vec(),
        k,
        sets,
        cap,
    })
}

/// Advances `combo` to the next `|combo|`-subset of `0..n` in lexicographic
/// order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let r = combo.len();
    for i in (0..r).rev() {
        if combo[i] < n - r + i {
            combo[i] += 1;
            for j in i + 1..r {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Search<'a> {
    by_district: Vec<Vec<&'a CoverSet>>,
    full: u64,
    cap: u64,
    l: usize,
    /// Lowest accumulated weight with which `(district, covered)` was reached.
    seen: HashMap<(usize, u64), u64>,
    nodes: u64,
    chosen: Vec<&'a CoverSet>,
}

impl Search<'_> {
    fn run(&mut self, d: usize, covered: u64, weight: u64) -> bool {
        self.nodes += 1;
        let k = self.by_district.len();
        if d == k {
            return covered == self.full;
        }
        let missing = (self.full & !covered).count_ones() as usize;
        if missing > (k - d) * self.l {
            return false;
        }
        match self.seen.get(&(d, covered)) {
            Some(&w) if w <= weight => return false,
            _ => {
                self.seen.insert((d, covered), weight);
            }
        }
        for i in 0..self.by_district[d].len() {
            let set = self.by_district[d][i];
            if set.mask & covered != 0 || weight + set.weight > self.cap {
                continue;
            }
            self.chosen.push(set);
            if self.run(d + 1, covered | set.mask, weight + set.weight) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

/// Fixed-parameter algorithm in the number of districts: rejects when
/// `n > kℓ`, otherwise picks one cover-system member per district so that
/// the chosen sets partition `A` within the budget.
pub fn solve_fpt(inst: &RecampaignInstance) -> Result<SolveResult, SolveError> {
    let WinnerBound::AtMost(l) = inst.bound() else {
        return Err(SolveError::WrongVariant(
            "the cover algorithm needs a bounded instance".into(),
        ));
    };
    let (n, k) = (inst.n(), inst.k());
    if n > k.saturating_mul(l) {
        let stats = SolveStats {
            guard_rejected: true,
            ..SolveStats::default()
        };
        return Ok(SolveResult::no(Algorithm::FptCover, stats));
    }
    let system = build_exact_cover_system(inst)?;
    let mut search = Search {
        by_district: (1..=k).map(|d| system.sets_for(d).collect()).collect(),
        full: if n == 0 { 0 } else { u64::MAX >> (64 - n) },
        cap: system.cap,
        l,
        seen: HashMap::new(),
        nodes: 0,
        chosen: Vec::new(),
    };
    let found = search.run(0, 0, 0);
    let mut stats = SolveStats {
        cover_sets: system.sets.len(),
        cover_nodes: search.nodes,
        graph_vertices: system.universe_size(),
        ..SolveStats::default()
    };
    if !found {
        return Ok(SolveResult::no(Algorithm::FptCover, stats));
    }
    let mut place = vec![0; n];
    for set in &search.chosen {
        for &a in &set.members {
            place[a] = set.district - 1;
        }
    }
    stats.nodes_explored = search.nodes;
    SolveResult::yes(
        inst,
        inst.assignment_from_vector(&place),
        Algorithm::FptCover,
        stats,
    )
}
