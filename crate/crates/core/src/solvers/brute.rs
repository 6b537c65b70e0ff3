use std::collections::HashMap;

use crate::model::{verify, Assignment, RecampaignInstance};

use super::{Algorithm, SolveError, SolveResult, SolveStats};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteOptions {
    /// Largest number of placements (`k^n`) the enumeration may visit.
    pub node_budget: u64,
}

impl Default for BruteOptions {
    fn default() -> Self {
        BruteOptions {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Per-district acceptance cache keyed by the bitmask of placed candidates.
enum Memo {
    Dense(Vec<Vec<u8>>),
    Sparse(HashMap<(usize, u64), bool>),
}

/// Enumerates all `k^n` placements in lexicographic order (first candidate
/// most significant, districts ascending) and returns the first valid one.
/// Exact for every variant; refuses when `k^n` exceeds the node budget.
pub fn solve_brute(
    inst: &RecampaignInstance,
    options: &BruteOptions,
) -> Result<SolveResult, SolveError> {
    let (n, k) = (inst.n(), inst.k());
    let space = u32::try_from(n)
        .ok()
        .and_then(|n| (k as u64).checked_pow(n));
    match space {
        Some(s) if s <= options.node_budget => {}
        _ => {
            return Err(SolveError::Resource {
                needed: format!("{k}^{n}"),
                budget: options.node_budget,
            })
        }
    }
    let mut stats = SolveStats::default();

    if n >= 64 {
        // only reachable with a single district: one placement
        stats.nodes_explored = 1;
        let asg = inst.assignment_from_vector(&vec![0; n]);
        return finish(inst, asg, stats);
    }

    let mut memo = if n <= 20 {
        Memo::Dense(vec![vec![0u8; 1 << n]; k])
    } else {
        Memo::Sparse(HashMap::new())
    };
    let mut accepts = |d: usize, mask: u64| -> Result<bool, SolveError> {
        let compute = || -> Result<bool, SolveError> {
            let members: Vec<usize> = (0..n).filter(|&a| mask >> a & 1 == 1).collect();
            Ok(inst.district_accepts(d, &members)?)
        };
        match &mut memo {
            Memo::Dense(table) => {
                let slot = &mut table[d][mask as usize];
                if *slot == 0 {
                    *slot = if compute()? { 1 } else { 2 };
                }
                Ok(*slot == 1)
            }
            Memo::Sparse(map) => {
                if let Some(&v) = map.get(&(d, mask)) {
                    return Ok(v);
                }
                let v = compute()?;
                map.insert((d, mask), v);
                Ok(v)
            }
        }
    };

    let budget = inst.budget();
    let mut place = vec![0usize; n];
    let mut masks = vec![0u64; k];
    masks[0] = if n == 0 { 0 } else { (1u64 << n) - 1 };
    'search: loop {
        stats.nodes_explored += 1;
        let mut ok = true;
        for (d, &mask) in masks.iter().enumerate() {
            if mask != 0 && !accepts(d, mask)? {
                ok = false;
                break;
            }
        }
        if ok {
            let within_budget = match budget {
                None => true,
                Some(b) => {
                    let cost: u64 = place
                        .iter()
                        .enumerate()
                        .map(|(a, &d)| inst.cost(d, a).expect("priced"))
                        .sum();
                    cost <= b
                }
            };
            if within_budget {
                let asg = inst.assignment_from_vector(&place);
                return finish(inst, asg, stats);
            }
        }
        // advance the odometer; the last candidate moves fastest
        let mut j = n;
        loop {
            if j == 0 {
                break 'search;
            }
            j -= 1;
            masks[place[j]] &= !(1u64 << j);
            place[j] += 1;
            if place[j] < k {
                masks[place[j]] |= 1u64 << j;
                break;
            }
            place[j] = 0;
            masks[0] |= 1u64 << j;
        }
    }
    Ok(SolveResult::no(Algorithm::Brute, stats))
}

fn finish(
    inst: &RecampaignInstance,
    asg: Assignment,
    stats: SolveStats,
) -> Result<SolveResult, SolveError> {
    if !verify(inst, &asg)?.valid {
        return Ok(SolveResult::no(Algorithm::Brute, stats));
    }
    SolveResult::yes(inst, asg, Algorithm::Brute, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{cand, Ballot, Election, Rule};
    use crate::model::{from_winner_problem, District, WinnerBound};

    #[test]
    fn empty_additional_set() {
        let inst = RecampaignInstance::new(
            Rule::Borda,
            vec![District::empty()],
            vec![],
            WinnerBound::AtMost(1),
            None,
        )
        .unwrap();
        let r = solve_brute(&inst, &BruteOptions::default()).unwrap();
        assert!(r.answer.is_yes());
        assert_eq!(r.stats.nodes_explored, 1);
    }

    #[test]
    fn losing_winner_problem() {
        let v = Ballot::ranking(["b", "a"]).unwrap();
        let e = Election::new([cand("a"), cand("b")], vec![v.clone(), v]).unwrap();
        let inst = from_winner_problem(&e, &cand("a"), Rule::TApproval(1)).unwrap();
        let r = solve_brute(&inst, &BruteOptions::default()).unwrap();
        assert_eq!(r.answer, crate::solvers::Answer::No);
        assert_eq!(r.stats.nodes_explored, 1);
    }

    #[test]
    fn first_valid_in_lexicographic_order() {
        let inst = RecampaignInstance::new(
            Rule::TrivialScoring,
            vec![District::empty(), District::empty()],
            vec![cand("a"), cand("b")],
            WinnerBound::AtMost(1),
            None,
        )
        .unwrap();
        let r = solve_brute(&inst, &BruteOptions::default()).unwrap();
        let asg = r.answer.assignment().unwrap();
        assert_eq!(asg.district_of(&cand("a")), Some(1));
        assert_eq!(asg.district_of(&cand("b")), Some(2));
        // (1,1) then (1,2)
        assert_eq!(r.stats.nodes_explored, 2);
    }

    #[test]
    fn budget_is_enforced() {
        let a: Vec<_> = (0..5).map(|i| cand(&format!("a{i}"))).collect();
        let inst = RecampaignInstance::new(
            Rule::TrivialScoring,
            vec![District::empty(); 4],
            a,
            WinnerBound::Unbounded,
            None,
        )
        .unwrap();
        let err = solve_brute(&inst, &BruteOptions { node_budget: 1000 }).unwrap_err();
        assert!(matches!(err, SolveError::Resource { budget: 1000, .. }));
        assert!(solve_brute(&inst, &BruteOptions { node_budget: 1024 }).is_ok());
    }
}
