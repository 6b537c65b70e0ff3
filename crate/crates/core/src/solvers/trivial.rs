use std::collections::BTreeMap;

use crate::election::Rule;
use crate::matching::{min_weight_perfect_b_matching, BipartiteMultigraph, DegreeConstraint};
use crate::model::{Assignment, RecampaignInstance, WinnerBound};

use super::{priced_view, Algorithm, SolveError, SolveResult, SolveStats};

/// Trivial scoring rule: everyone wins, so district `i` can take up to
/// `Δ_i = max(0, ℓ − |C_i|)` newcomers. Decided by a minimum-weight perfect
/// b-matching on candidates, district vertices, and one slack vertex that
/// absorbs unused district capacity.
pub fn solve_trivial_scoring(inst: &RecampaignInstance) -> Result<SolveResult, SolveError> {
    if *inst.rule() != Rule::TrivialScoring {
        return Err(SolveError::WrongVariant(format!(
            "the b-matching algorithm needs the trivial scoring rule, instance uses {}",
            inst.rule()
        )));
    }
    let priced = priced_view(inst)?;
    let (n, k) = (inst.n(), inst.k());
    let sizes: Vec<usize> = inst
        .districts()
        .iter()
        .map(|d| d.candidates.len())
        .collect();
    let limit = match inst.bound() {
        WinnerBound::AtMost(l) => l,
        // any limit with Δ_i ≥ n for every district leaves all placements open
        WinnerBound::Unbounded => n + sizes.iter().copied().max().unwrap_or(0),
    };
    let capacity: Vec<u64> = sizes
        .iter()
        .map(|&c| limit.saturating_sub(c) as u64)
        .collect();
    let slack_demand = capacity.iter().sum::<u64>().saturating_sub(n as u64);

    // left: candidates 0..n, slack vertex n; right: districts
    let slack = n;
    let mut graph = BipartiteMultigraph::new(n + 1, k);
    for a in 0..n {
        for d in 0..k {
            graph.add_edge(a, d, priced.cost(d, a).expect("priced view"), 1)?;
        }
    }
    for (d, &cap) in capacity.iter().enumerate() {
        if cap > 0 {
            let copies = u32::try_from(cap).map_err(|_| {
                SolveError::WrongVariant(format!("district capacity {cap} too large"))
            })?;
            graph.add_edge(slack, d, 0, copies)?;
        }
    }
    let mut left = vec![1u64; n];
    left.push(slack_demand);
    let b = DegreeConstraint {
        left,
        right: capacity,
    };
    let stats = SolveStats {
        graph_vertices: n + k + 1,
        graph_edges: graph.edges().len(),
        ..SolveStats::default()
    };

    let budget = priced.budget().expect("priced view");
    let Some(m) = min_weight_perfect_b_matching(&graph, &b, budget)? else {
        return Ok(SolveResult::no(Algorithm::BMatching, stats));
    };
    let placement: BTreeMap<_, _> = m
        .chosen
        .iter()
        .map(|&(e, _)| graph.edges()[e])
        .filter(|e| e.left != slack)
        .map(|e| (inst.additional()[e.left].clone(), e.right + 1))
        .collect();
    SolveResult::yes(
        inst,
        Assignment::new(placement),
        Algorithm::BMatching,
        stats,
    )
}
