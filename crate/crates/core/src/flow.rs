//! Min-cost flow by successive shortest augmenting paths.
//!
//! Arc costs must be nonnegative, so zero initial potentials are feasible and
//! every round can use Dijkstra on reduced costs. Among equal-distance
//! vertices the lowest id is settled first, which fixes the augmenting paths
//! and makes witnesses reproducible.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
    cost: i128,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    /// Capacity each forward arc was created with.
    initial: Vec<u64>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
            initial: Vec::new(),
        }
    }

    /// Adds an arc and returns its id. The paired residual arc is `id ^ 1`.
    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: u64, cost: u64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to,
            cap,
            cost: cost as i128,
        });
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -(cost as i128),
        });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        self.initial.push(cap);
        self.initial.push(0);
        id
    }

    /// Flow currently routed through forward arc `id`.
    pub(crate) fn flow(&self, id: usize) -> u64 {
        self.initial[id] - self.arcs[id].cap
    }

    /// Pushes up to `limit` units from `s` to `t` at minimum cost. Returns
    /// the amount sent and its cost.
    pub(crate) fn min_cost_flow(&mut self, s: usize, t: usize, limit: u64) -> (u64, i128) {
        let n = self.adj.len();
        let mut potential = vec![0i128; n];
        let mut sent = 0u64;
        let mut total = 0i128;
        while sent < limit {
            let mut dist = vec![None::<i128>; n];
            let mut via = vec![usize::MAX; n];
            let mut heap = BinaryHeap::new();
            dist[s] = Some(0);
            heap.push(Reverse((0i128, s)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if dist[u] != Some(d) {
                    continue;
                }
                for &e in &self.adj[u] {
                    let arc = &self.arcs[e];
                    if arc.cap == 0 {
                        continue;
                    }
                    let nd = d + arc.cost + potential[u] - potential[arc.to];
                    if dist[arc.to].is_none_or(|old| nd < old) {
                        dist[arc.to] = Some(nd);
                        via[arc.to] = e;
                        heap.push(Reverse((nd, arc.to)));
                    }
                }
            }
            let Some(_) = dist[t] else { break };
            for v in 0..n {
                if let Some(d) = dist[v] {
                    potential[v] += d;
                }
            }
            let mut push = limit - sent;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.arcs[e].cap);
                v = self.arcs[e ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.arcs[e].cap -= push;
                self.arcs[e ^ 1].cap += push;
                total += self.arcs[e].cost * push as i128;
                v = self.arcs[e ^ 1].to;
            }
            sent += push;
        }
        (sent, total)
    }
}
