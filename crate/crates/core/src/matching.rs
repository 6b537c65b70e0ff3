//! Bipartite matching engines: minimum-cost maximum-cardinality matching and
//! minimum-weight perfect b-matching on multigraphs. Both run on the same
//! min-cost flow core; a parallel edge of multiplicity μ becomes one arc of
//! capacity μ.

use thiserror::Error;

use crate::flow::FlowNetwork;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edge endpoint ({left}, {right}) outside a {left_count}x{right_count} graph")]
    BadEndpoint {
        left: usize,
        right: usize,
        left_count: usize,
        right_count: usize,
    },
    #[error("edge multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("degree constraint covers {found} vertices on the {side} side, graph has {expected}")]
    DegreeShape {
        side: &'static str,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedEdge {
    pub left: usize,
    pub right: usize,
    pub weight: u64,
    pub multiplicity: u32,
}

/// A bipartite multigraph with vertices `0..left` and `0..right` on the two
/// sides.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    left: usize,
    right: usize,
    edges: Vec<WeightedEdge>,
}

impl BipartiteMultigraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteMultigraph {
            left,
            right,
            edges: Vec::new(),
        }
    }

    /// Adds an edge and returns its index.
    pub fn add_edge(
        &mut self,
        left: usize,
        right: usize,
        weight: u64,
        multiplicity: u32,
    ) -> Result<usize, MatchingError> {
        if left >= self.left || right >= self.right {
            return Err(MatchingError::BadEndpoint {
                left,
                right,
                left_count: self.left,
                right_count: self.right,
            });
        }
        if multiplicity == 0 {
            return Err(MatchingError::ZeroMultiplicity);
        }
        self.edges.push(WeightedEdge {
            left,
            right,
            weight,
            multiplicity,
        });
        Ok(self.edges.len() - 1)
    }

    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }
}

/// Required degree `b(v)` of every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeConstraint {
    pub left: Vec<u64>,
    pub right: Vec<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchingResult {
    /// `(edge index, copies used)`, copies ≥ 1, in edge order.
    pub chosen: Vec<(usize, u64)>,
    pub cardinality: u64,
    pub weight: u64,
}

impl MatchingResult {
    fn from_flow(g: &BipartiteMultigraph, net: &FlowNetwork, arcs: &[usize]) -> Self {
        let chosen: Vec<(usize, u64)> = arcs
            .iter()
            .enumerate()
            .map(|(e, &arc)| (e, net.flow(arc)))
            .filter(|&(_, f)| f > 0)
            .collect();
        let cardinality = chosen.iter().map(|&(_, f)| f).sum();
        let weight = chosen.iter().map(|&(e, f)| g.edges[e].weight * f).sum();
        MatchingResult {
            chosen,
            cardinality,
            weight,
        }
    }

    /// Degrees induced on each side.
    pub fn degrees(&self, g: &BipartiteMultigraph) -> (Vec<u64>, Vec<u64>) {
        let mut left = vec![0; g.left];
        let mut right = vec![0; g.right];
        for &(e, f) in &self.chosen {
            left[g.edges[e].left] += f;
            right[g.edges[e].right] += f;
        }
        (left, right)
    }
}

/// Layout: source, left vertices, right vertices, sink.
fn network(
    g: &BipartiteMultigraph,
    left_cap: impl Fn(usize) -> u64,
    right_cap: impl Fn(usize) -> u64,
    edge_cap: impl Fn(&WeightedEdge) -> u64,
) -> (FlowNetwork, Vec<usize>, usize, usize) {
    let source = 0;
    let sink = g.left + g.right + 1;
    let mut net = FlowNetwork::new(g.left + g.right + 2);
    for l in 0..g.left {
        net.add_arc(source, 1 + l, left_cap(l), 0);
    }
    let arcs = g
        .edges
        .iter()
        .map(|e| net.add_arc(1 + e.left, 1 + g.left + e.right, edge_cap(e), e.weight))
        .collect();
    for r in 0..g.right {
        net.add_arc(1 + g.left + r, sink, right_cap(r), 0);
    }
    (net, arcs, source, sink)
}

/// Among all maximum-cardinality matchings, one of minimum total weight.
/// Every edge is used at most once regardless of its multiplicity.
pub fn min_cost_max_cardinality_matching(g: &BipartiteMultigraph) -> MatchingResult {
    let (mut net, arcs, s, t) = network(g, |_| 1, |_| 1, |_| 1);
    net.min_cost_flow(s, t, u64::MAX);
    MatchingResult::from_flow(g, &net, &arcs)
}

/// A minimum-weight edge multiset in which every vertex `v` has degree exactly
/// `b(v)`, if one exists with weight at most `cap`.
pub fn min_weight_perfect_b_matching(
    g: &BipartiteMultigraph,
    b: &DegreeConstraint,
    cap: u64,
) -> Result<Option<MatchingResult>, MatchingError> {
    if b.left.len() != g.left {
        return Err(MatchingError::DegreeShape {
            side: "left",
            expected: g.left,
            found: b.left.len(),
        });
    }
    if b.right.len() != g.right {
        return Err(MatchingError::DegreeShape {
            side: "right",
            expected: g.right,
            found: b.right.len(),
        });
    }
    let demand: u64 = b.left.iter().sum();
    if demand != b.right.iter().sum::<u64>() {
        return Ok(None);
    }
    let (mut net, arcs, s, t) = network(
        g,
        |l| b.left[l],
        |r| b.right[r],
        |e| u64::from(e.multiplicity),
    );
    let (sent, _) = net.min_cost_flow(s, t, demand);
    if sent < demand {
        return Ok(None);
    }
    let result = MatchingResult::from_flow(g, &net, &arcs);
    Ok((result.weight <= cap).then_some(result))
}
