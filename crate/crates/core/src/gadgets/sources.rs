//! Source problems and exhaustive deciders for them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::election::Candidate;
use crate::solvers::DEFAULT_NODE_BUDGET;

use super::GadgetError;

/// Exact cover by 3-sets: a universe of `3m` elements and a list of 3-element
/// subsets. Triples may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "X3cDoc", into = "X3cDoc")]
pub struct X3cInstance {
    universe: Vec<Candidate>,
    triples: Vec<[Candidate; 3]>,
}

#[derive(Serialize, Deserialize)]
struct X3cDoc {
    universe: Vec<Candidate>,
    triples: Vec<Vec<Candidate>>,
}

impl TryFrom<X3cDoc> for X3cInstance {
    type Error = GadgetError;
    fn try_from(doc: X3cDoc) -> Result<Self, GadgetError> {
        let triples = doc
            .triples
            .into_iter()
            .map(|t| {
                <[Candidate; 3]>::try_from(t)
                    .map_err(|t| GadgetError::Shape(format!("triple with {} elements", t.len())))
            })
            .collect::<Result<_, _>>()?;
        X3cInstance::new(doc.universe, triples)
    }
}

impl From<X3cInstance> for X3cDoc {
    fn from(i: X3cInstance) -> Self {
        X3cDoc {
            universe: i.universe,
            triples: i.triples.into_iter().map(Vec::from).collect(),
        }
    }
}

impl X3cInstance {
    /// Universe is stored sorted; each triple is stored sorted.
    pub fn new(
        universe: Vec<Candidate>,
        triples: Vec<[Candidate; 3]>,
    ) -> Result<Self, GadgetError> {
        let set: BTreeSet<Candidate> = universe.iter().cloned().collect();
        if set.len() != universe.len() {
            return Err(GadgetError::Shape("repeated universe element".into()));
        }
        if set.is_empty() || set.len() % 3 != 0 {
            return Err(GadgetError::Shape(format!(
                "universe size {} is not a positive multiple of 3",
                set.len()
            )));
        }
        if triples.is_empty() {
            return Err(GadgetError::Shape("no triples".into()));
        }
        let mut sorted = Vec::with_capacity(triples.len());
        for mut t in triples {
            t.sort();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(GadgetError::Shape(format!(
                    "triple {{{}, {}, {}}} repeats an element",
                    t[0], t[1], t[2]
                )));
            }
            if let Some(e) = t.iter().find(|e| !set.contains(*e)) {
                return Err(GadgetError::Shape(format!("{e} is not in the universe")));
            }
            sorted.push(t);
        }
        Ok(X3cInstance {
            universe: set.into_iter().collect(),
            triples: sorted,
        })
    }

    pub fn universe(&self) -> &[Candidate] {
        &self.universe
    }

    pub fn triples(&self) -> &[[Candidate; 3]] {
        &self.triples
    }

    /// `m = |U| / 3`.
    pub fn m(&self) -> usize {
        self.universe.len() / 3
    }
}

/// Whether `m` pairwise disjoint triples cover the universe.
pub fn decide_x3c(inst: &X3cInstance) -> Result<bool, GadgetError> {
    let index: BTreeMap<&Candidate, usize> = inst
        .universe
        .iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let n = inst.universe.len();
    if n > 128 {
        return Err(GadgetError::Resource {
            needed: format!("{n} elements"),
            budget: 128,
        });
    }
    let masks: Vec<u128> = inst
        .triples
        .iter()
        .map(|t| t.iter().fold(0u128, |m, e| m | 1 << index[e]))
        .collect();
    let full = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    let mut nodes = 0u64;
    cover(&masks, 0, full, &mut nodes)
}

fn cover(masks: &[u128], covered: u128, full: u128, nodes: &mut u64) -> Result<bool, GadgetError> {
    *nodes += 1;
    if *nodes > DEFAULT_NODE_BUDGET {
        return Err(GadgetError::Resource {
            needed: "more cover nodes".into(),
            budget: DEFAULT_NODE_BUDGET,
        });
    }
    if covered == full {
        return Ok(true);
    }
    let first = (!covered & full).trailing_zeros();
    for &m in masks {
        if m >> first & 1 == 1 && m & covered == 0 && cover(masks, covered | m, full, nodes)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Three-dimensional matching with `|W| = |X| = |Y| = k` and every element in
/// at most three triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ThreeDmDoc", into = "ThreeDmDoc")]
pub struct R3dmInstance {
    w: Vec<Candidate>,
    x: Vec<Candidate>,
    y: Vec<Candidate>,
    triples: Vec<[Candidate; 3]>,
}

#[derive(Serialize, Deserialize)]
struct ThreeDmDoc {
    #[serde(rename = "W")]
    w: Vec<Candidate>,
    #[serde(rename = "X")]
    x: Vec<Candidate>,
    #[serde(rename = "Y")]
    y: Vec<Candidate>,
    #[serde(rename = "S")]
    triples: Vec<[Candidate; 3]>,
}

impl TryFrom<ThreeDmDoc> for R3dmInstance {
    type Error = GadgetError;
    fn try_from(d: ThreeDmDoc) -> Result<Self, GadgetError> {
        R3dmInstance::new(d.w, d.x, d.y, d.triples)
    }
}

impl From<R3dmInstance> for ThreeDmDoc {
    fn from(i: R3dmInstance) -> Self {
        ThreeDmDoc {
            w: i.w,
            x: i.x,
            y: i.y,
            triples: i.triples,
        }
    }
}

impl R3dmInstance {
    pub fn new(
        w: Vec<Candidate>,
        x: Vec<Candidate>,
        y: Vec<Candidate>,
        triples: Vec<[Candidate; 3]>,
    ) -> Result<Self, GadgetError> {
        let k = w.len();
        if x.len() != k || y.len() != k {
            return Err(GadgetError::Shape(format!(
                "W, X, Y have sizes {}, {}, {}",
                k,
                x.len(),
                y.len()
            )));
        }
        let mut all = BTreeSet::new();
        for e in w.iter().chain(&x).chain(&y) {
            if !all.insert(e) {
                return Err(GadgetError::Shape(format!("{e} appears twice in W, X, Y")));
            }
        }
        let sides: [BTreeSet<&Candidate>; 3] =
            [w.iter().collect(), x.iter().collect(), y.iter().collect()];
        let mut seen = BTreeSet::new();
        let mut count: BTreeMap<&Candidate, usize> = BTreeMap::new();
        for t in &triples {
            for (side, e) in sides.iter().zip(t) {
                if !side.contains(e) {
                    return Err(GadgetError::Shape(format!(
                        "triple ({}, {}, {}) is not in W x X x Y",
                        t[0], t[1], t[2]
                    )));
                }
                *count.entry(e).or_default() += 1;
            }
            if !seen.insert(t) {
                return Err(GadgetError::Shape(format!(
                    "triple ({}, {}, {}) listed twice",
                    t[0], t[1], t[2]
                )));
            }
        }
        if let Some((e, c)) = count.iter().find(|(_, &c)| c > 3) {
            return Err(GadgetError::Shape(format!("{e} appears in {c} triples")));
        }
        Ok(R3dmInstance { w, x, y, triples })
    }

    pub fn w(&self) -> &[Candidate] {
        &self.w
    }

    pub fn x(&self) -> &[Candidate] {
        &self.x
    }

    pub fn y(&self) -> &[Candidate] {
        &self.y
    }

    pub fn triples(&self) -> &[[Candidate; 3]] {
        &self.triples
    }

    pub fn k(&self) -> usize {
        self.w.len()
    }

    /// Number of triples containing `e`.
    pub fn occurrences(&self, e: &Candidate) -> usize {
        self.triples.iter().filter(|t| t.contains(e)).count()
    }
}

/// A 3DM instance in which every element lies in exactly three triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "R3dmInstance", into = "R3dmInstance")]
pub struct Exactly3DmInstance(R3dmInstance);

impl TryFrom<R3dmInstance> for Exactly3DmInstance {
    type Error = GadgetError;
    fn try_from(inner: R3dmInstance) -> Result<Self, GadgetError> {
        Exactly3DmInstance::new(inner)
    }
}

impl From<Exactly3DmInstance> for R3dmInstance {
    fn from(i: Exactly3DmInstance) -> Self {
        i.0
    }
}

impl Exactly3DmInstance {
    pub fn new(inner: R3dmInstance) -> Result<Self, GadgetError> {
        if inner.triples.len() != 3 * inner.k() {
            return Err(GadgetError::Shape(format!(
                "{} triples, expected {}",
                inner.triples.len(),
                3 * inner.k()
            )));
        }
        // with |S| = 3k and at most three occurrences each, every element
        // occurs exactly three times
        Ok(Exactly3DmInstance(inner))
    }

    pub fn inner(&self) -> &R3dmInstance {
        &self.0
    }
}

/// Whether `k` triples agree on no coordinate.
pub fn decide_3dm(inst: &R3dmInstance) -> Result<bool, GadgetError> {
    let pos =
        |side: &[Candidate], e: &Candidate| side.iter().position(|s| s == e).expect("validated");
    let mut by_w: Vec<Vec<(usize, usize)>> = vec![Vec::new(); inst.k()];
    for t in &inst.triples {
        by_w[pos(&inst.w, &t[0])].push((pos(&inst.x, &t[1]), pos(&inst.y, &t[2])));
    }
    let mut nodes = 0u64;
    matching(
        &by_w,
        0,
        &mut vec![false; inst.k()],
        &mut vec![false; inst.k()],
        &mut nodes,
    )
}

fn matching(
    by_w: &[Vec<(usize, usize)>],
    w: usize,
    x_used: &mut Vec<bool>,
    y_used: &mut Vec<bool>,
    nodes: &mut u64,
) -> Result<bool, GadgetError> {
    *nodes += 1;
    if *nodes > DEFAULT_NODE_BUDGET {
        return Err(GadgetError::Resource {
            needed: "more matching nodes".into(),
            budget: DEFAULT_NODE_BUDGET,
        });
    }
    if w == by_w.len() {
        return Ok(true);
    }
    for &(x, y) in &by_w[w] {
        if x_used[x] || y_used[y] {
            continue;
        }
        x_used[x] = true;
        y_used[y] = true;
        let found = matching(by_w, w + 1, x_used, y_used, nodes)?;
        x_used[x] = false;
        y_used[y] = false;
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A monotone 3-CNF formula in which every variable occurs in exactly three
/// clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SatDoc", into = "SatDoc")]
pub struct E3SatFormula {
    variables: Vec<Candidate>,
    clauses: Vec<[Candidate; 3]>,
}

#[derive(Serialize, Deserialize)]
struct SatDoc {
    variables: Vec<Candidate>,
    clauses: Vec<[Candidate; 3]>,
}

impl TryFrom<SatDoc> for E3SatFormula {
    type Error = GadgetError;
    fn try_from(d: SatDoc) -> Result<Self, GadgetError> {
        E3SatFormula::new(d.variables, d.clauses)
    }
}

impl From<E3SatFormula> for SatDoc {
    fn from(f: E3SatFormula) -> Self {
        SatDoc {
            variables: f.variables,
            clauses: f.clauses,
        }
    }
}

impl E3SatFormula {
    /// Variables are stored sorted; clause order and literal order are kept.
    pub fn new(
        variables: Vec<Candidate>,
        clauses: Vec<[Candidate; 3]>,
    ) -> Result<Self, GadgetError> {
        let mut count: BTreeMap<Candidate, usize> = BTreeMap::new();
        for v in &variables {
            if count.insert(v.clone(), 0).is_some() {
                return Err(GadgetError::Shape(format!("variable {v} listed twice")));
            }
        }
        for c in &clauses {
            if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                return Err(GadgetError::Shape(format!(
                    "clause ({}, {}, {}) repeats a variable",
                    c[0], c[1], c[2]
                )));
            }
            for v in c {
                *count
                    .get_mut(v)
                    .ok_or_else(|| GadgetError::Shape(format!("unknown variable {v}")))? += 1;
            }
        }
        if let Some((v, c)) = count.iter().find(|(_, &c)| c != 3) {
            return Err(GadgetError::Shape(format!(
                "variable {v} occurs in {c} clauses"
            )));
        }
        Ok(E3SatFormula {
            variables: count.into_keys().collect(),
            clauses,
        })
    }

    pub fn variables(&self) -> &[Candidate] {
        &self.variables
    }

    pub fn clauses(&self) -> &[[Candidate; 3]] {
        &self.clauses
    }
}

/// Whether some assignment makes exactly one variable of every clause true.
pub fn decide_e3sat(f: &E3SatFormula) -> Result<bool, GadgetError> {
    let n = f.variables.len();
    let space = 1u64
        .checked_shl(n as u32)
        .filter(|&s| n < 64 && s <= DEFAULT_NODE_BUDGET);
    let Some(space) = space else {
        return Err(GadgetError::Resource {
            needed: format!("2^{n}"),
            budget: DEFAULT_NODE_BUDGET,
        });
    };
    let pos = |v: &Candidate| f.variables.binary_search(v).expect("validated");
    let clauses: Vec<u64> = f
        .clauses
        .iter()
        .map(|c| c.iter().fold(0, |m, v| m | 1 << pos(v)))
        .collect();
    Ok((0..space).any(|truth| clauses.iter().all(|&c| (c & truth).count_ones() == 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::cand;

    fn c3(a: &str, b: &str, c: &str) -> [Candidate; 3] {
        [cand(a), cand(b), cand(c)]
    }

    fn names(v: &[&str]) -> Vec<Candidate> {
        v.iter().map(|s| cand(s)).collect()
    }

    #[test]
    fn x3c_examples() {
        let u = names(&["u1", "u2", "u3"]);
        let one = X3cInstance::new(u.clone(), vec![c3("u1", "u2", "u3")]).unwrap();
        assert!(decide_x3c(&one).unwrap());
        let twice = X3cInstance::new(u, vec![c3("u1", "u2", "u3"), c3("u3", "u2", "u1")]).unwrap();
        assert!(decide_x3c(&twice).unwrap());
        let u6 = names(&["u1", "u2", "u3", "u4", "u5", "u6"]);
        let overlapping = X3cInstance::new(
            u6,
            vec![
                c3("u1", "u2", "u3"),
                c3("u1", "u4", "u5"),
                c3("u1", "u5", "u6"),
            ],
        )
        .unwrap();
        assert!(!decide_x3c(&overlapping).unwrap());
    }

    #[test]
    fn x3c_shape_errors() {
        assert!(X3cInstance::new(names(&["a", "b"]), vec![]).is_err());
        assert!(X3cInstance::new(names(&["a", "b", "c"]), vec![]).is_err());
        assert!(X3cInstance::new(names(&["a", "b", "c"]), vec![c3("a", "a", "b")]).is_err());
        assert!(X3cInstance::new(names(&["a", "b", "c"]), vec![c3("a", "b", "d")]).is_err());
    }

    #[test]
    fn three_dm_examples() {
        let single = R3dmInstance::new(
            names(&["w"]),
            names(&["x"]),
            names(&["y"]),
            vec![c3("w", "x", "y")],
        )
        .unwrap();
        assert!(decide_3dm(&single).unwrap());
        let (w, x, y) = (
            names(&["w1", "w2"]),
            names(&["x1", "x2"]),
            names(&["y1", "y2"]),
        );
        let disjoint = R3dmInstance::new(
            w.clone(),
            x.clone(),
            y.clone(),
            vec![c3("w1", "x1", "y1"), c3("w2", "x2", "y2")],
        )
        .unwrap();
        assert!(decide_3dm(&disjoint).unwrap());
        let shared =
            R3dmInstance::new(w, x, y, vec![c3("w1", "x1", "y1"), c3("w1", "x2", "y2")]).unwrap();
        assert!(!decide_3dm(&shared).unwrap());
    }

    #[test]
    fn three_dm_shape_errors() {
        let (w, x, y) = (names(&["w"]), names(&["x"]), names(&["y"]));
        assert!(R3dmInstance::new(w.clone(), x.clone(), names(&["y", "z"]), vec![]).is_err());
        assert!(
            R3dmInstance::new(w.clone(), x.clone(), y.clone(), vec![c3("x", "w", "y")]).is_err()
        );
        assert!(
            R3dmInstance::new(w.clone(), x.clone(), y.clone(), vec![c3("w", "x", "y"); 2]).is_err()
        );
        assert!(R3dmInstance::new(w.clone(), w.clone(), y.clone(), vec![]).is_err());
        let r = R3dmInstance::new(w, x, y, vec![c3("w", "x", "y")]).unwrap();
        assert!(Exactly3DmInstance::new(r).is_err());
    }

    #[test]
    fn e3sat_examples() {
        let f =
            E3SatFormula::new(names(&["x1", "x2", "x3"]), vec![c3("x1", "x2", "x3"); 3]).unwrap();
        assert!(decide_e3sat(&f).unwrap());
        let empty = E3SatFormula::new(vec![], vec![]).unwrap();
        assert!(decide_e3sat(&empty).unwrap());
        assert!(E3SatFormula::new(names(&["x1", "x2", "x3"]), vec![c3("x1", "x2", "x3")]).is_err());
    }

    #[test]
    fn documents_round_trip() {
        let json = r#"{"universe":["c","a","b"],"triples":[["b","c","a"]]}"#;
        let x: X3cInstance = serde_json::from_str(json).unwrap();
        assert_eq!(x.triples()[0], c3("a", "b", "c"));
        let back: X3cInstance = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<X3cInstance>(
            r#"{"universe":["a","b","c"],"triples":[["a","b"]]}"#
        )
        .is_err());

        let json = r#"{"W":["w"],"X":["x"],"Y":["y"],"S":[["w","x","y"]]}"#;
        let r: R3dmInstance = serde_json::from_str(json).unwrap();
        assert_eq!(r.k(), 1);
        assert!(serde_json::from_str::<Exactly3DmInstance>(json).is_err());
    }
}
