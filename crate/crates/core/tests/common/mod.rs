//! Reference implementations used as test oracles. Written from the rule
//! definitions directly and sharing no code with the library's evaluators.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use recamp_core::election::{
    cand, Ballot, Candidate, Election, Rule, ScoringFamily, ScoringVector,
};
use recamp_core::gadgets::{E3SatFormula, R3dmInstance, X3cInstance};
use recamp_core::matching::{BipartiteMultigraph, DegreeConstraint};
use recamp_core::model::{RecampaignInstance, WinnerBound};

/// Positional score of position `pos` (0 = top) among `m` candidates.
fn position_score(rule: &Rule, m: usize, pos: usize) -> i64 {
    match rule {
        Rule::TApproval(t) => i64::from(pos < *t as usize),
        Rule::TVeto(t) => i64::from(pos + (*t as usize) < m),
        Rule::Borda => (m - 1 - pos) as i64,
        Rule::TrivialScoring => 0,
        Rule::Explicit(f) => f.vectors()[m - 1].0[pos],
        _ => unreachable!("not positional"),
    }
}

/// Winner set of `(present, ballots)`; ballots are restricted to `present`
/// before evaluation. Approval ballots are only consulted by E1, which
/// ignores them.
pub fn oracle_winners(
    rule: &Rule,
    present: &BTreeSet<Candidate>,
    ballots: &[Ballot],
) -> BTreeSet<Candidate> {
    let m = present.len();
    let rankings: Vec<Vec<&Candidate>> = ballots
        .iter()
        .filter_map(|b| match b {
            Ballot::Ranking(r) => Some(r.iter().filter(|c| present.contains(*c)).collect()),
            Ballot::Approval { .. } => None,
        })
        .collect();
    match rule {
        Rule::E1 => {
            if m == 3 {
                present.clone()
            } else {
                BTreeSet::new()
            }
        }
        Rule::E2 => {
            if m >= 4 {
                present.clone()
            } else {
                oracle_winners(&Rule::TApproval(1), present, ballots)
            }
        }
        Rule::Condorcet => present
            .iter()
            .filter(|c| {
                present.iter().filter(|d| d != c).all(|d| {
                    let above = rankings
                        .iter()
                        .filter(|r| {
                            r.iter().position(|x| **x == **c) < r.iter().position(|x| **x == *d)
                        })
                        .count();
                    2 * above > rankings.len()
                })
            })
            .cloned()
            .collect(),
        _ => {
            let mut score: BTreeMap<&Candidate, i64> = present.iter().map(|c| (c, 0)).collect();
            for r in &rankings {
                for (pos, c) in r.iter().enumerate() {
                    *score.get_mut(*c).unwrap() += position_score(rule, m, pos);
                }
            }
            let best = score.values().copied().max();
            score
                .into_iter()
                .filter(|&(_, s)| Some(s) == best)
                .map(|(c, _)| c.clone())
                .collect()
        }
    }
}

pub fn election_winners(rule: &Rule, e: &Election) -> BTreeSet<Candidate> {
    oracle_winners(rule, e.candidates(), e.votes())
}

/// Winners of district `d` (0-based) with `placed` added.
pub fn district_winners(
    inst: &RecampaignInstance,
    d: usize,
    placed: &[Candidate],
) -> BTreeSet<Candidate> {
    let district = &inst.districts()[d];
    let present: BTreeSet<Candidate> = district.candidates.iter().chain(placed).cloned().collect();
    oracle_winners(inst.rule(), &present, &district.votes)
}

/// Minimum witness cost over all valid assignments (`Some(0)` for a Yes on
/// an unpriced instance), or `None` when no assignment is valid.
pub fn oracle_decide(inst: &RecampaignInstance) -> Option<u64> {
    let (k, n) = (inst.k(), inst.n());
    let a = inst.additional();
    let price = |d: usize, j: usize| -> u64 {
        inst.pricing()
            .map_or(0, |p| p.prices[&(d + 1, a[j].clone())])
    };
    let mut ok: BTreeMap<(usize, Vec<usize>), bool> = BTreeMap::new();
    let mut best = None;
    let mut placement = vec![0usize; n];
    loop {
        let cost: u64 = placement
            .iter()
            .enumerate()
            .map(|(j, &d)| price(d, j))
            .sum();
        let within = inst.pricing().is_none_or(|p| cost <= p.budget);
        if within && best.is_none_or(|b| cost < b) {
            let valid = (0..k).all(|d| {
                let members: Vec<usize> = (0..n).filter(|&j| placement[j] == d).collect();
                *ok.entry((d, members.clone())).or_insert_with(|| {
                    if members.is_empty() {
                        return true;
                    }
                    let placed: Vec<Candidate> = members.iter().map(|&j| a[j].clone()).collect();
                    let w = district_winners(inst, d, &placed);
                    placed.iter().all(|c| w.contains(c)) && inst.bound().admits(w.len())
                })
            });
            if valid {
                best = Some(cost);
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            placement[i] += 1;
            if placement[i] < k {
                break;
            }
            placement[i] = 0;
            i += 1;
        }
    }
}

/// Best (cardinality, weight) over all matchings, lexicographically
/// maximizing cardinality then minimizing weight. Each edge used at most once.
pub fn oracle_max_matching(g: &BipartiteMultigraph) -> (u64, u64) {
    let edges = g.edges();
    let mut best = (0u64, 0u64);
    for mask in 0u32..(1 << edges.len()) {
        let mut left = vec![false; g.left_count()];
        let mut right = vec![false; g.right_count()];
        let (mut card, mut weight) = (0, 0);
        let mut ok = true;
        for (e, edge) in edges.iter().enumerate() {
            if mask >> e & 1 == 1 {
                if left[edge.left] || right[edge.right] {
                    ok = false;
                    break;
                }
                left[edge.left] = true;
                right[edge.right] = true;
                card += 1;
                weight += edge.weight;
            }
        }
        if ok && (card > best.0 || (card == best.0 && weight < best.1)) {
            best = (card, weight);
        }
    }
    best
}

/// Minimum weight of a perfect b-matching, if any.
pub fn oracle_b_matching(g: &BipartiteMultigraph, b: &DegreeConstraint) -> Option<u64> {
    fn go(
        g: &BipartiteMultigraph,
        b: &DegreeConstraint,
        e: usize,
        left: &mut [u64],
        right: &mut [u64],
        weight: u64,
        best: &mut Option<u64>,
    ) {
        let edges = g.edges();
        if e == edges.len() {
            if left == b.left.as_slice()
                && right == b.right.as_slice()
                && best.is_none_or(|w| weight < w)
            {
                *best = Some(weight);
            }
            return;
        }
        let edge = edges[e];
        let room =
            (b.left[edge.left] - left[edge.left]).min(b.right[edge.right] - right[edge.right]);
        for copies in 0..=room.min(u64::from(edge.multiplicity)) {
            left[edge.left] += copies;
            right[edge.right] += copies;
            go(
                g,
                b,
                e + 1,
                left,
                right,
                weight + copies * edge.weight,
                best,
            );
            left[edge.left] -= copies;
            right[edge.right] -= copies;
        }
    }
    let mut best = None;
    let mut left = vec![0; g.left_count()];
    let mut right = vec![0; g.right_count()];
    go(g, b, 0, &mut left, &mut right, 0, &mut best);
    best
}

pub fn names(prefix: &str, n: usize) -> Vec<Candidate> {
    (1..=n).map(|i| cand(&format!("{prefix}{i}"))).collect()
}

/// A random election with `1..=max_c` candidates and `0..=max_v` rankings.
pub fn random_election(rng: &mut impl Rng, max_c: usize, max_v: usize) -> Election {
    let c = names("c", rng.gen_range(1..=max_c));
    let votes = (0..rng.gen_range(0..=max_v))
        .map(|_| {
            let mut r = c.clone();
            r.shuffle(rng);
            Ballot::Ranking(r)
        })
        .collect();
    Election::new(c, votes).unwrap()
}

/// A pure family built by repeated random insertion.
pub fn random_pure_family(rng: &mut impl Rng, m_max: usize) -> ScoringFamily {
    let mut v = vec![rng.gen_range(0..4)];
    let mut table = vec![ScoringVector(v.clone())];
    for _ in 1..m_max {
        let pos = rng.gen_range(0..=v.len());
        let hi = if pos == 0 { v[0] + 3 } else { v[pos - 1] };
        let lo = if pos == v.len() {
            0.min(v[v.len() - 1])
        } else {
            v[pos]
        };
        v.insert(pos, rng.gen_range(lo..=hi));
        table.push(ScoringVector(v.clone()));
    }
    ScoringFamily::new(table).unwrap()
}

/// Rules exercised by the randomized suites.
pub fn builtin_rules(rng: &mut impl Rng) -> Vec<Rule> {
    vec![
        Rule::TApproval(1),
        Rule::TApproval(2),
        Rule::TVeto(1),
        Rule::TVeto(2),
        Rule::Borda,
        Rule::TrivialScoring,
        Rule::Explicit(random_pure_family(rng, 12)),
        Rule::Condorcet,
        Rule::E1,
        Rule::E2,
    ]
}

pub fn bounds_up_to(l: usize) -> Vec<WinnerBound> {
    (1..=l)
        .map(WinnerBound::AtMost)
        .chain([WinnerBound::Unbounded])
        .collect()
}

pub fn c3(t: [&Candidate; 3]) -> [Candidate; 3] {
    [t[0].clone(), t[1].clone(), t[2].clone()]
}

/// A random R3DM instance over `W = w1..wk`, `X = x1..xk`, `Y = y1..yk` with
/// up to `max_triples` distinct triples and every element in at most three.
pub fn random_r3dm(rng: &mut impl Rng, k: usize, max_triples: usize) -> R3dmInstance {
    let (w, x, y) = (names("w", k), names("x", k), names("y", k));
    let mut count: BTreeMap<Candidate, usize> = BTreeMap::new();
    let mut triples: Vec<[Candidate; 3]> = Vec::new();
    for _ in 0..max_triples * 4 {
        if triples.len() == max_triples {
            break;
        }
        let t = c3([
            &w[rng.gen_range(0..k)],
            &x[rng.gen_range(0..k)],
            &y[rng.gen_range(0..k)],
        ]);
        if triples.contains(&t) || t.iter().any(|e| count.get(e).copied().unwrap_or(0) >= 3) {
            continue;
        }
        for e in &t {
            *count.entry(e.clone()).or_default() += 1;
        }
        triples.push(t);
    }
    R3dmInstance::new(w, x, y, triples).unwrap()
}

/// A random monotone formula with `n` variables and `n` clauses, each variable
/// in exactly three clauses.
pub fn random_e3sat(rng: &mut impl Rng, n: usize) -> E3SatFormula {
    let vars = names("v", n);
    loop {
        let mut slots: Vec<&Candidate> = vars.iter().flat_map(|v| [v, v, v]).collect();
        slots.shuffle(rng);
        let clauses: Vec<[Candidate; 3]> =
            slots.chunks(3).map(|c| c3([c[0], c[1], c[2]])).collect();
        if let Ok(f) = E3SatFormula::new(vars.clone(), clauses) {
            return f;
        }
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exact cover by enumerating every `m`-subset of triples.
pub fn oracle_x3c(inst: &X3cInstance) -> bool {
    let universe: BTreeSet<&Candidate> = inst.universe().iter().collect();
    subsets(inst.triples().len(), inst.m())
        .into_iter()
        .any(|pick| {
            let covered: BTreeSet<&Candidate> = pick
                .iter()
                .flat_map(|&i| inst.triples()[i].iter())
                .collect();
            covered == universe
        })
}

/// A perfect matching by enumerating every `k`-subset of triples.
pub fn oracle_3dm(inst: &R3dmInstance) -> bool {
    let k = inst.k();
    subsets(inst.triples().len(), k).into_iter().any(|pick| {
        let used: BTreeSet<&Candidate> = pick
            .iter()
            .flat_map(|&i| inst.triples()[i].iter())
            .collect();
        used.len() == 3 * k
    })
}

/// Exactly-one-true assignments by enumerating every truth table.
pub fn oracle_e3sat(f: &E3SatFormula) -> bool {
    let vars = f.variables();
    (0u64..1 << vars.len()).any(|truth| {
        f.clauses().iter().all(|c| {
            c.iter()
                .filter(|v| truth >> vars.iter().position(|u| u == *v).unwrap() & 1 == 1)
                .count()
                == 1
        })
    })
}
