use std::collections::BTreeMap;

use crate::matching::{min_cost_max_cardinality_matching, BipartiteMultigraph};
use crate::model::{Assignment, RecampaignInstance, WinnerBound};

use super::{priced_view, Algorithm, SolveError, SolveResult, SolveStats};

/// Winner bound 1: at most one additional candidate per district, so a
/// solution is a matching between candidates and the districts they win
/// alone. Decided by a minimum-cost maximum-cardinality matching.
pub fn solve_crc1(inst: &RecampaignInstance) -> Result<SolveResult, SolveError> {
    if inst.bound() != WinnerBound::AtMost(1) {
        return Err(SolveError::WrongVariant(format!(
            "the matching algorithm needs winner bound 1, instance has {}",
            inst.bound()
        )));
    }
    let priced = priced_view(inst)?;
    let (n, k) = (inst.n(), inst.k());

    let mut graph = BipartiteMultigraph::new(n, k);
    let mut edge_ends = Vec::new();
    let mut stats = SolveStats::default();
    for a in 0..n {
        for d in 0..k {
            stats.nodes_explored += 1;
            let own = inst.districts()[d].candidates.len();
            if inst.district_winner_indices(d, &[a])? == [own + a] {
                let w = priced.cost(d, a).expect("priced view");
                graph.add_edge(a, d, w, 1)?;
                edge_ends.push((a, d));
            }
        }
    }
    stats.graph_vertices = n + k;
    stats.graph_edges = edge_ends.len();

    let m = min_cost_max_cardinality_matching(&graph);
    let budget = priced.budget().expect("priced view");
    if m.cardinality as usize != n || m.weight > budget {
        return Ok(SolveResult::no(Algorithm::Crc1Matching, stats));
    }
    let placement: BTreeMap<_, _> = m
        .chosen
        .iter()
        .map(|&(e, _)| {
            let (a, d) = edge_ends[e];
            (inst.additional()[a].clone(), d + 1)
        })
        .collect();
    SolveResult::yes(
        inst,
        Assignment::new(placement),
        Algorithm::Crc1Matching,
        stats,
    )
}
