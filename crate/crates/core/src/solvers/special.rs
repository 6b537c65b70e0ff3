use crate::election::Rule;
use crate::model::{RecampaignInstance, WinnerBound};

use super::{solve_brute, Algorithm, BruteOptions, SolveError, SolveResult, SolveStats};

fn require(inst: &RecampaignInstance, rule: Rule, bound: WinnerBound) -> Result<(), SolveError> {
    if *inst.rule() != rule || inst.bound() != bound || inst.pricing().is_some() {
        return Err(SolveError::WrongVariant(format!(
            "this algorithm needs rule {rule}, bound {bound} and no pricing; instance has rule {}, bound {}{}",
            inst.rule(),
            inst.bound(),
            if inst.pricing().is_some() { ", priced" } else { "" }
        )));
    }
    Ok(())
}

/// E1 with winner bound 3. A district with `3 − s` candidates takes exactly
/// `s` newcomers, so the instance is a Yes-instance iff `|A| = α + 2β + 3γ`
/// with `α, β, γ` at most the number of districts with 2, 1, 0 candidates.
pub fn solve_e1_bound3(inst: &RecampaignInstance) -> Result<SolveResult, SolveError> {
    require(inst, Rule::E1, WinnerBound::AtMost(3))?;
    let n = inst.n();
    let mut by_slack: [Vec<usize>; 4] = Default::default();
    for (d, district) in inst.districts().iter().enumerate() {
        let c = district.candidates.len();
        if c < 3 {
            by_slack[3 - c].push(d);
        }
    }
    let (n1, n2, n3) = (by_slack[1].len(), by_slack[2].len(), by_slack[3].len());
    let mut stats = SolveStats::default();
    for gamma in 0..=n3 {
        for beta in 0..=n2 {
            for alpha in 0..=n1 {
                stats.nodes_explored += 1;
                if alpha + 2 * beta + 3 * gamma != n {
                    continue;
                }
                let mut place = Vec::with_capacity(n);
                for (slack, used) in [(1, alpha), (2, beta), (3, gamma)] {
                    for &d in &by_slack[slack][..used] {
                        place.extend(std::iter::repeat(d).take(slack));
                    }
                }
                return SolveResult::yes(
                    inst,
                    inst.assignment_from_vector(&place),
                    Algorithm::E1Slack,
                    stats,
                );
            }
        }
    }
    Ok(SolveResult::no(Algorithm::E1Slack, stats))
}

/// E2 without a winner bound: with four or more newcomers, putting all of
/// them into district 1 makes everyone there win. Smaller `A` is exhausted.
pub fn solve_e2_unbounded(inst: &RecampaignInstance) -> Result<SolveResult, SolveError> {
    require(inst, Rule::E2, WinnerBound::Unbounded)?;
    let n = inst.n();
    if n >= 4 {
        let stats = SolveStats {
            nodes_explored: 1,
            ..SolveStats::default()
        };
        return SolveResult::yes(
            inst,
            inst.assignment_from_vector(&vec![0; n]),
            Algorithm::E2Unbounded,
            stats,
        );
    }
    let mut r = solve_brute(
        inst,
        &BruteOptions {
            node_budget: u64::MAX,
        },
    )?;
    r.algorithm = Algorithm::E2Unbounded;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{cand, Ballot};
    use crate::model::District;

    fn named(prefix: &str, n: usize) -> Vec<crate::election::Candidate> {
        (0..n).map(|i| cand(&format!("{prefix}{i}"))).collect()
    }

    fn e1(sizes: &[usize], n: usize) -> RecampaignInstance {
        let districts = sizes
            .iter()
            .enumerate()
            .map(|(d, &c)| District::new(named(&format!("c{d}_"), c), vec![]))
            .collect();
        RecampaignInstance::new(
            Rule::E1,
            districts,
            named("a", n),
            WinnerBound::AtMost(3),
            None,
        )
        .unwrap()
    }

    #[test]
    fn e1_slack_examples() {
        assert!(solve_e1_bound3(&e1(&[0], 3)).unwrap().answer.is_yes());
        assert!(!solve_e1_bound3(&e1(&[0], 2)).unwrap().answer.is_yes());
        let r = solve_e1_bound3(&e1(&[2, 1, 0], 6)).unwrap();
        assert!(r.answer.is_yes());
        assert_eq!(r.algorithm, Algorithm::E1Slack);
        assert!(!solve_e1_bound3(&e1(&[3, 4], 1)).unwrap().answer.is_yes());
        assert!(solve_e1_bound3(&e1(&[3, 4], 0)).unwrap().answer.is_yes());
    }

    #[test]
    fn e2_examples() {
        let inst = RecampaignInstance::new(
            Rule::E2,
            vec![District::empty(), District::empty()],
            named("a", 4),
            WinnerBound::Unbounded,
            None,
        )
        .unwrap();
        let r = solve_e2_unbounded(&inst).unwrap();
        assert!(r
            .answer
            .assignment()
            .unwrap()
            .placement
            .values()
            .all(|&d| d == 1));

        let v = Ballot::ranking(["b", "a0"]).unwrap();
        let inst = RecampaignInstance::new(
            Rule::E2,
            vec![District::new(vec![cand("b")], vec![v.clone(), v])],
            named("a", 1),
            WinnerBound::Unbounded,
            None,
        )
        .unwrap();
        let r = solve_e2_unbounded(&inst).unwrap();
        assert!(!r.answer.is_yes());
        assert_eq!(r.algorithm, Algorithm::E2Unbounded);
    }

    #[test]
    fn wrong_variants() {
        let inst = e1(&[0], 3).with_bound(WinnerBound::AtMost(2)).unwrap();
        assert!(matches!(
            solve_e1_bound3(&inst),
            Err(SolveError::WrongVariant(_))
        ));
        assert!(matches!(
            solve_e2_unbounded(&e1(&[0], 3)),
            Err(SolveError::WrongVariant(_))
        ));
    }
}
