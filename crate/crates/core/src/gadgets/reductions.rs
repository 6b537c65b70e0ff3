//! Reductions from the source problems to recampaigning.

use std::collections::{BTreeMap, BTreeSet};

use crate::election::{scoring_vector, Ballot, Candidate, ElectionError, Rule};
use crate::model::{District, Pricing, RecampaignInstance, WinnerBound};

use super::sources::{E3SatFormula, Exactly3DmInstance, R3dmInstance, X3cInstance};
use super::{GadgetError, Namer};

/// Largest election size inspected by [`find_nontrivial_vector`].
pub const SCAN_CAP: usize = 64;

/// One empty district per triple under E1 with `ℓ = 3`; `A = U`; placing an
/// element into a district costs 1 when the triple contains it and `3m + 1`
/// otherwise; budget `3m`.
pub fn x3c_to_e1_priced(inst: &X3cInstance) -> Result<RecampaignInstance, GadgetError> {
    let m = inst.m() as u64;
    let mut prices = BTreeMap::new();
    for (i, t) in inst.triples().iter().enumerate() {
        for a in inst.universe() {
            let price = if t.contains(a) { 1 } else { 3 * m + 1 };
            prices.insert((i + 1, a.clone()), price);
        }
    }
    Ok(RecampaignInstance::new(
        Rule::E1,
        vec![District::empty(); inst.triples().len()],
        inst.universe().to_vec(),
        WinnerBound::AtMost(3),
        Some(Pricing {
            prices,
            budget: 3 * m,
        }),
    )?)
}

/// Pads an R3DM instance until every element lies in exactly three triples.
/// Each round picks the first deficient `w`, `x`, `y`, mints `w^i`, `x^i`,
/// `y^i` with `i = |S′|`, and adds `(w, x^i, y^i)`, `(w^i, x, y^i)`,
/// `(w^i, x^i, y)`, `(w^i, x^i, y^i)`.
pub fn r3dm_to_exactly3(inst: &R3dmInstance) -> Result<Exactly3DmInstance, GadgetError> {
    let (mut w, mut x, mut y) = (inst.w().to_vec(), inst.x().to_vec(), inst.y().to_vec());
    let mut triples = inst.triples().to_vec();
    let mut count: BTreeMap<Candidate, usize> = w
        .iter()
        .chain(&x)
        .chain(&y)
        .map(|e| (e.clone(), 0))
        .collect();
    for t in &triples {
        for e in t {
            *count.get_mut(e).expect("validated") += 1;
        }
    }
    let mut namer = Namer::new(count.keys());
    while triples.len() < 3 * x.len() {
        let deficient = |side: &[Candidate]| {
            side.iter()
                .find(|e| count[*e] < 3)
                .cloned()
                .expect("some element has fewer than three triples")
        };
        let (dw, dx, dy) = (deficient(&w), deficient(&x), deficient(&y));
        let i = triples.len();
        let nw = namer.fresh(format!("w^{i}"))?;
        let nx = namer.fresh(format!("x^{i}"))?;
        let ny = namer.fresh(format!("y^{i}"))?;
        for e in [&dw, &dx, &dy] {
            *count.get_mut(e).expect("known element") += 1;
        }
        for e in [&nw, &nx, &ny] {
            count.insert(e.clone(), 3);
        }
        triples.push([dw, nx.clone(), ny.clone()]);
        triples.push([nw.clone(), dx, ny.clone()]);
        triples.push([nw.clone(), nx.clone(), dy]);
        triples.push([nw.clone(), nx.clone(), ny.clone()]);
        w.push(nw);
        x.push(nx);
        y.push(ny);
    }
    Exactly3DmInstance::new(R3dmInstance::new(w, x, y, triples)?)
}

/// Vote prefixes for district `y` built from the three `(w, x)` pairs of the
/// triples containing `y`, before the lexicographic tail.
fn pair_templates(
    pairs: [(&Candidate, &Candidate); 3],
) -> Result<Vec<Vec<Candidate>>, GadgetError> {
    let dw = pairs.iter().map(|p| p.0).collect::<BTreeSet<_>>().len();
    let dx = pairs.iter().map(|p| p.1).collect::<BTreeSet<_>>().len();
    let swapped = pairs.map(|(w, x)| (x, w));
    let votes: Vec<Vec<&Candidate>> = match (dw, dx) {
        (1, 3) => one_w(pairs),
        (3, 1) => one_w(swapped),
        (2, 2) => two_two(pairs),
        (2, 3) => two_w(pairs),
        (3, 2) => two_w(swapped),
        (3, 3) => all_distinct(pairs),
        _ => {
            return Err(GadgetError::Shape(
                "two triples agree on both W and X coordinates".into(),
            ))
        }
    };
    Ok(votes
        .into_iter()
        .map(|v| v.into_iter().cloned().collect())
        .collect())
}

/// `w_1 = w_2 = w_3`, distinct x's.
fn one_w<'a>(p: [(&'a Candidate, &'a Candidate); 3]) -> Vec<Vec<&'a Candidate>> {
    let (w1, x1, x2, x3) = (p[0].0, p[0].1, p[1].1, p[2].1);
    vec![vec![w1, x1, x2, x3], vec![x1, x2, x3, w1]]
}

/// `w_1 = w_2 ≠ w_3` and `x_1 = x_3 ≠ x_2` after relabeling.
fn two_two<'a>(p: [(&'a Candidate, &'a Candidate); 3]) -> Vec<Vec<&'a Candidate>> {
    let (i, j, r) = shared_pair(&p, |q| q.0);
    let (a, b) = if p[i].1 == p[r].1 { (i, j) } else { (j, i) };
    let (w1, w3, x1, x2) = (p[a].0, p[r].0, p[a].1, p[b].1);
    vec![
        vec![w3, x2, w1, x1],
        vec![w3, w1, x2, x1],
        vec![x1, w1, w3, x2],
        vec![x2, x1, w3, w1],
    ]
}

/// `w_1 = w_2 ≠ w_3`, distinct x's.
fn two_w<'a>(p: [(&'a Candidate, &'a Candidate); 3]) -> Vec<Vec<&'a Candidate>> {
    let (i, j, r) = shared_pair(&p, |q| q.0);
    let (w1, w3, x1, x2, x3) = (p[i].0, p[r].0, p[i].1, p[j].1, p[r].1);
    vec![
        vec![w3, w1, x3, x1, x2],
        vec![x3, w1, w3, x2, x1],
        vec![w3, x1, x2, x3, w1],
        vec![x3, x1, x2, w3, w1],
    ]
}

fn all_distinct<'a>(p: [(&'a Candidate, &'a Candidate); 3]) -> Vec<Vec<&'a Candidate>> {
    let (w1, w2, w3) = (p[0].0, p[1].0, p[2].0);
    let (x1, x2, x3) = (p[0].1, p[1].1, p[2].1);
    vec![
        vec![w1, w2, w3, x3, x2, x1],
        vec![w1, x2, x3, w3, w2, x1],
        vec![x1, w2, w3, x3, x2, w1],
        vec![x1, x2, x3, w3, w2, w1],
        vec![w2, w1, w3, x3, x2, x1],
        vec![w2, x1, x3, w3, x2, w1],
        vec![x2, w1, w3, x3, w2, x1],
        vec![x2, x1, x3, w3, w2, w1],
        vec![w3, w1, w2, x3, x2, x1],
        vec![w3, x1, x2, x3, w2, w1],
        vec![x3, w1, w2, w3, x2, x1],
        vec![x3, x1, x2, w3, w2, w1],
    ]
}

/// Indices `(i, j, r)` with `i < j` sharing the chosen coordinate.
fn shared_pair<'a>(
    p: &[(&'a Candidate, &'a Candidate); 3],
    coord: fn(&(&'a Candidate, &'a Candidate)) -> &'a Candidate,
) -> (usize, usize, usize) {
    if coord(&p[0]) == coord(&p[1]) {
        (0, 1, 2)
    } else if coord(&p[0]) == coord(&p[2]) {
        (0, 2, 1)
    } else {
        (1, 2, 0)
    }
}

/// Full rankings over `A = W ∪ X` for every `y`, in `Y` order.
fn approval_votes(
    inst: &Exactly3DmInstance,
) -> Result<(Vec<Candidate>, Vec<Vec<Vec<Candidate>>>), GadgetError> {
    let r = inst.inner();
    let mut additional: Vec<Candidate> = r.w().iter().chain(r.x()).cloned().collect();
    additional.sort();
    let mut per_y = Vec::with_capacity(r.k());
    for y in r.y() {
        let s_y: Vec<&[Candidate; 3]> = r.triples().iter().filter(|t| &t[2] == y).collect();
        let pairs = [0, 1, 2].map(|j| (&s_y[j][0], &s_y[j][1]));
        let named: BTreeSet<&Candidate> = pairs.iter().flat_map(|(w, x)| [*w, *x]).collect();
        let tail: Vec<Candidate> = additional
            .iter()
            .filter(|a| !named.contains(a))
            .cloned()
            .collect();
        let votes = pair_templates(pairs)?
            .into_iter()
            .map(|mut v| {
                v.extend(tail.iter().cloned());
                v
            })
            .collect();
        per_y.push(votes);
    }
    Ok((additional, per_y))
}

/// Exactly-3-3DM to 1-approval with `ℓ = 2`: `A = W ∪ X` and one empty
/// district per `y`, whose votes make `{a, b}` a tied winner pair exactly
/// when `(a, b, y)` is a triple.
pub fn e33dm_to_1approval(inst: &Exactly3DmInstance) -> Result<RecampaignInstance, GadgetError> {
    let (additional, per_y) = approval_votes(inst)?;
    let districts = per_y
        .into_iter()
        .map(|votes| District::new(Vec::new(), votes.into_iter().map(Ballot::Ranking).collect()))
        .collect();
    Ok(RecampaignInstance::new(
        Rule::TApproval(1),
        districts,
        additional,
        WinnerBound::AtMost(2),
        None,
    )?)
}

/// Smallest `m ≤ SCAN_CAP` whose scoring vector has two distinct values,
/// with `i` the number of leading entries equal to the first.
pub fn find_nontrivial_vector(rule: &Rule) -> Result<(usize, usize), GadgetError> {
    if !rule.is_scoring() {
        return Err(ElectionError::UnsupportedRule(rule.to_string()).into());
    }
    for m in 1..=SCAN_CAP {
        let v = match scoring_vector(rule, m) {
            Ok(v) => v,
            Err(ElectionError::MissingVector(_)) => return Err(GadgetError::Trivial(m - 1)),
            Err(e) => return Err(e.into()),
        };
        let i = v.0.iter().take_while(|&&s| s == v.0[0]).count();
        if i < m {
            return Ok((m, i));
        }
    }
    Err(GadgetError::Trivial(SCAN_CAP))
}

/// Exactly-3-3DM to any nontrivial scoring rule with `ℓ = 2`. Starts from the
/// 1-approval votes and pads each district with fillers so that the two
/// newcomers compete for positions `i` and `i + 1` of a vector splitting
/// after its `i`-th entry.
pub fn e33dm_to_scoring(
    inst: &Exactly3DmInstance,
    rule: &Rule,
) -> Result<RecampaignInstance, GadgetError> {
    let (m, i) = find_nontrivial_vector(rule)?;
    let (additional, per_y) = approval_votes(inst)?;
    let mut namer = Namer::new(&additional);
    let mut districts = Vec::with_capacity(per_y.len());
    for (y, base) in inst.inner().y().iter().zip(per_y) {
        // filler s_j for j in [1, i-1] ∪ [i+2, m], kept in index order
        let mut fillers: Vec<(usize, Candidate)> = Vec::new();
        for j in (1..i).chain(i + 2..=m) {
            fillers.push((j, namer.fresh(format!("s{j}@{y}"))?));
        }
        let (low, high): (Vec<_>, Vec<_>) = fillers.iter().partition(|(j, _)| *j < i);
        let mut votes = Vec::new();
        for v in &base {
            let mut vote: Vec<Candidate> = low.iter().map(|(_, s)| s.clone()).collect();
            vote.extend(v.iter().cloned());
            vote.extend(high.iter().map(|(_, s)| s.clone()));
            votes.push(Ballot::Ranking(vote));
        }
        for k in 1..i {
            for v in &base {
                let mut vote = v.clone();
                vote.extend(
                    fillers
                        .iter()
                        .filter(|(j, _)| *j != k)
                        .map(|(_, s)| s.clone()),
                );
                vote.push(fillers[k - 1].1.clone());
                votes.push(Ballot::Ranking(vote));
            }
        }
        let candidates = fillers.into_iter().map(|(_, s)| s).collect();
        districts.push(District::new(candidates, votes));
    }
    Ok(RecampaignInstance::new(
        rule.clone(),
        districts,
        additional,
        WinnerBound::AtMost(2),
        None,
    )?)
}

fn check_x3c_preconditions(
    inst: &X3cInstance,
    t: u32,
    bound: WinnerBound,
) -> Result<(), GadgetError> {
    if inst.m() <= 1 || inst.triples().len() <= 1 {
        return Err(GadgetError::Precondition(format!(
            "the construction assumes m > 1 and k > 1 without loss of generality, got m = {} and k = {}",
            inst.m(),
            inst.triples().len()
        )));
    }
    if t == 0 {
        return Err(GadgetError::Precondition("t must be positive".into()));
    }
    if let WinnerBound::AtMost(l) = bound {
        if l < 3 {
            return Err(GadgetError::Precondition(format!(
                "winner bound {l} is below 3"
            )));
        }
    }
    Ok(())
}

/// X3C to t-approval for any `ℓ ≥ 3` or unbounded: per triple `{x, y, z}`, a
/// district with candidate `s` and seven blocks of `t − 1` blockers, where
/// `{x, y, z}` is the only nonempty set of newcomers that wins alone.
pub fn x3c_to_approval(
    inst: &X3cInstance,
    t: u32,
    bound: WinnerBound,
) -> Result<RecampaignInstance, GadgetError> {
    check_x3c_preconditions(inst, t, bound)?;
    let additional = inst.universe().to_vec();
    let mut namer = Namer::new(&additional);
    let mut districts = Vec::new();
    for (d, triple) in inst.triples().iter().enumerate() {
        let d = d + 1;
        let s = namer.fresh(format!("s@{d}"))?;
        let mut blocks: Vec<Vec<Candidate>> = Vec::with_capacity(7);
        for j in 1..=7 {
            blocks.push(
                (1..t)
                    .map(|r| namer.fresh(format!("b{j}.{r}@{d}")))
                    .collect::<Result<_, _>>()?,
            );
        }
        let rest: Vec<Candidate> = additional
            .iter()
            .filter(|a| !triple.contains(a))
            .cloned()
            .collect();
        let [x, y, z] = triple.clone();
        let heads = [
            [x.clone(), s.clone(), y.clone(), z.clone()],
            [x.clone(), s.clone(), y.clone(), z.clone()],
            [y.clone(), s.clone(), z.clone(), x.clone()],
            [y.clone(), s.clone(), z.clone(), x.clone()],
            [z.clone(), s.clone(), x.clone(), y.clone()],
            [z.clone(), s.clone(), x.clone(), y.clone()],
            [s.clone(), x, y, z],
        ];
        let votes = heads
            .into_iter()
            .enumerate()
            .map(|(j, head)| {
                let mut vote = blocks[j].clone();
                vote.extend(head);
                vote.extend(rest.iter().cloned());
                for (other, block) in blocks.iter().enumerate() {
                    if other != j {
                        vote.extend(block.iter().cloned());
                    }
                }
                Ballot::Ranking(vote)
            })
            .collect();
        let candidates = std::iter::once(s)
            .chain(blocks.into_iter().flatten())
            .collect();
        districts.push(District::new(candidates, votes));
    }
    Ok(RecampaignInstance::new(
        Rule::TApproval(t),
        districts,
        additional,
        bound,
        None,
    )?)
}

/// X3C to t-veto for any `ℓ ≥ 3` or unbounded: per triple, candidate `s` plus
/// `t − 1` blockers that every vote ranks last.
pub fn x3c_to_veto(
    inst: &X3cInstance,
    t: u32,
    bound: WinnerBound,
) -> Result<RecampaignInstance, GadgetError> {
    check_x3c_preconditions(inst, t, bound)?;
    let additional = inst.universe().to_vec();
    let mut namer = Namer::new(&additional);
    let mut districts = Vec::new();
    for (d, triple) in inst.triples().iter().enumerate() {
        let d = d + 1;
        let s = namer.fresh(format!("s@{d}"))?;
        let alpha: Vec<Candidate> = (1..t)
            .map(|r| namer.fresh(format!("b{r}@{d}")))
            .collect::<Result<_, _>>()?;
        let rest: Vec<Candidate> = additional
            .iter()
            .filter(|a| !triple.contains(a))
            .cloned()
            .collect();
        let [x, y, z] = triple.clone();
        let heads = [
            [s.clone(), x.clone(), y.clone(), z.clone()],
            [s.clone(), y.clone(), z.clone(), x.clone()],
            [s.clone(), z.clone(), x.clone(), y.clone()],
            [x.clone(), y.clone(), z.clone(), s.clone()],
            [x, y, z, s.clone()],
        ];
        let votes = heads
            .into_iter()
            .map(|head| {
                Ballot::Ranking(
                    head.into_iter()
                        .chain(rest.iter().cloned())
                        .chain(alpha.iter().cloned())
                        .collect(),
                )
            })
            .collect();
        let candidates = std::iter::once(s).chain(alpha).collect();
        districts.push(District::new(candidates, votes));
    }
    Ok(RecampaignInstance::new(
        Rule::TVeto(t),
        districts,
        additional,
        bound,
        None,
    )?)
}

/// Monotone exactly-3 1-in-3 SAT to unbounded t-approval with two districts:
/// the variables placed into district 1 are the true ones. For `t > 1` every
/// candidate becomes `t` consecutive copies.
pub fn sat_to_approval_unbounded(
    f: &E3SatFormula,
    t: u32,
) -> Result<RecampaignInstance, GadgetError> {
    let (n, m) = (f.variables().len(), f.clauses().len());
    if m <= 3 || n <= 1 {
        return Err(GadgetError::Precondition(format!(
            "the construction assumes m > 3 clauses and n > 1 variables without loss of generality, got m = {m} and n = {n}"
        )));
    }
    if t == 0 {
        return Err(GadgetError::Precondition("t must be positive".into()));
    }
    let mut namer = Namer::new(&[]);
    let mut var_copies: BTreeMap<&Candidate, Vec<Candidate>> = BTreeMap::new();
    for v in f.variables() {
        let c = if t == 1 {
            vec![namer.fresh(v.to_string())?]
        } else {
            (1..=t)
                .map(|j| namer.fresh(format!("{v}.{j}")))
                .collect::<Result<_, _>>()?
        };
        var_copies.insert(v, c);
    }
    let mut additional: Vec<Candidate> = var_copies.values().flatten().cloned().collect();
    additional.sort();
    let mut district = |prefix: &str| -> Result<Vec<Vec<Candidate>>, GadgetError> {
        (1..=m)
            .map(|i| {
                (1..=t)
                    .map(|j| {
                        let base = if t == 1 {
                            format!("{prefix}{i}")
                        } else {
                            format!("{prefix}{i}.{j}")
                        };
                        namer.fresh(base)
                    })
                    .collect()
            })
            .collect()
    };
    let s = district("s")?;
    let tt = district("t")?;

    let vote = |head: Vec<&Candidate>, own: &[Vec<Candidate>], i: usize| -> Ballot {
        let mut v: Vec<Candidate> = head
            .iter()
            .flat_map(|x| var_copies[x].iter().cloned())
            .collect();
        v.extend(own[i].iter().cloned());
        let placed: BTreeSet<Candidate> = v.iter().cloned().collect();
        v.extend(additional.iter().filter(|a| !placed.contains(*a)).cloned());
        v.extend(
            own.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .flat_map(|(_, c)| c.iter().cloned()),
        );
        Ballot::Ranking(v)
    };
    let mut v1 = Vec::new();
    let mut v2 = Vec::new();
    for (i, clause) in f.clauses().iter().enumerate() {
        let forward: Vec<&Candidate> = clause.iter().collect();
        let backward: Vec<&Candidate> = clause.iter().rev().collect();
        v1.push(vote(forward.clone(), &s, i));
        v2.push(vote(forward, &tt, i));
        v2.push(vote(backward, &tt, i));
        for _ in 0..3 {
            v1.push(vote(Vec::new(), &s, i));
            v2.push(vote(Vec::new(), &tt, i));
        }
    }
    let districts = vec![
        District::new(s.into_iter().flatten().collect(), v1),
        District::new(tt.into_iter().flatten().collect(), v2),
    ];
    Ok(RecampaignInstance::new(
        Rule::TApproval(t),
        districts,
        additional,
        WinnerBound::Unbounded,
        None,
    )?)
}
