//! Per-rule step plans: where each collected pair lands among the spans
//! already built, which boundaries it must meet, and which terminal runs
//! fill the gaps it closes.

use crate::grammar::{Scfg, SynchronousRule};
use crate::strategy::{fan_out, LinearStrategy, Permutation};

/// How the next pair's span joins the blocks of one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SidePlan {
    /// Blocks lying entirely before the new position.
    pub insert_at: usize,
    /// Blocks in the layout before the step.
    pub blocks: usize,
    pub merge_prev: bool,
    pub merge_next: bool,
    /// Terminals between the previous position and the new one.
    pub run_prev: Vec<usize>,
    /// Terminals between the new position and the next one.
    pub run_next: Vec<usize>,
}

/// Extends a state of `rule` after `step` collected pairs by one more pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct StepPlan {
    pub rule: usize,
    pub step: usize,
    /// Nonterminal pair that must fill the new position.
    pub pair: (usize, usize),
    pub left: SidePlan,
    pub right: SidePlan,
    /// Bit 0: start in `w1` fixed; 1: end in `w1`; 2: start in `w2`; 3: end in `w2`.
    pub mask: u8,
    /// Boundary count of the resulting state.
    pub arity_after: usize,
}

/// Everything needed to run one rule.
#[derive(Debug, Clone)]
pub(crate) struct RulePlan {
    pub rank: usize,
    pub lhs: (usize, usize),
    /// `steps[k]` extends a state with `k` pairs; `steps[0]` starts from nothing.
    pub steps: Vec<StepPlan>,
    pub outer_left: (Vec<usize>, Vec<usize>),
    pub outer_right: (Vec<usize>, Vec<usize>),
    /// Terminal strings for rules without pairs.
    pub seed: Option<(Vec<usize>, Vec<usize>)>,
}

fn blocks_of(collected: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (p, &c) in collected.iter().enumerate() {
        match (c, start) {
            (true, None) => start = Some(p),
            (false, Some(s)) => {
                out.push((s, p - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, collected.len() - 1));
    }
    out
}

fn side_plan(collected: &[bool], pos: usize, runs: &[Vec<usize>]) -> SidePlan {
    let blocks = blocks_of(collected);
    SidePlan {
        insert_at: blocks.iter().filter(|&&(_, e)| e < pos).count(),
        blocks: blocks.len(),
        merge_prev: pos > 0 && collected[pos - 1],
        merge_next: pos + 1 < collected.len() && collected[pos + 1],
        run_prev: runs[pos].clone(),
        run_next: runs[pos + 1].clone(),
    }
}

pub(crate) fn compile_rule(g: &Scfg, index: usize, strategy: Option<&LinearStrategy>) -> RulePlan {
    let rule: &SynchronousRule = &g.rules()[index];
    let r = rule.rank();
    let runs_l = rule.terminal_runs(true);
    let runs_r = rule.terminal_runs(false);
    let lhs = (rule.left_lhs, rule.right_lhs);
    let outer_left = (runs_l[0].clone(), runs_l[r].clone());
    let outer_right = (runs_r[0].clone(), runs_r[r].clone());
    if r == 0 {
        return RulePlan {
            rank: 0,
            lhs,
            steps: Vec::new(),
            outer_left,
            outer_right,
            seed: Some((runs_l[0].clone(), runs_r[0].clone())),
        };
    }
    let perm: Permutation = rule.permutation().expect("rank >= 1");
    let sigma = strategy
        .cloned()
        .unwrap_or_else(|| LinearStrategy::identity(r));
    let inv = perm.inverse();
    let nts_l = rule.nonterminals(true);
    let nts_r = rule.nonterminals(false);
    let mut left = vec![false; r];
    let mut right = vec![false; r];
    let mut steps = Vec::with_capacity(r);
    for k in 0..r {
        let i = sigma.order(k + 1) - 1;
        let j = inv.apply(i + 1) - 1;
        let lp = side_plan(&left, i, &runs_l);
        let rp = side_plan(&right, j, &runs_r);
        let mask = (lp.merge_prev as u8)
            | (lp.merge_next as u8) << 1
            | (rp.merge_prev as u8) << 2
            | (rp.merge_next as u8) << 3;
        let arity_after = 2 * fan_out(&perm, &sigma, k + 1).expect("valid step");
        steps.push(StepPlan {
            rule: index,
            step: k,
            pair: (nts_l[i], nts_r[j]),
            left: lp,
            right: rp,
            mask,
            arity_after,
        });
        left[i] = true;
        right[j] = true;
    }
    RulePlan {
        rank: r,
        lhs,
        steps,
        outer_left,
        outer_right,
        seed: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    #[test]
    fn blocks() {
        assert_eq!(blocks_of(&[true, true, false, true]), vec![(0, 1), (3, 3)]);
        assert_eq!(blocks_of(&[false, false]), vec![]);
    }

    #[test]
    fn plan_for_figure_rule() {
        let g = parse_grammar(
            "S -> A[1] A[2] A[3] A[4] A[5] A[6] ; S -> A[6] A[1] A[4] A[2] A[5] A[3]\nA -> a ; A -> a\n",
        )
        .unwrap();
        let plan = compile_rule(&g, 0, None);
        let arities: Vec<usize> = plan.steps.iter().map(|s| s.arity_after).collect();
        // Twice the fan-out of the identity strategy.
        assert_eq!(arities, vec![4, 6, 8, 6, 4, 4]);
        let last = &plan.steps[5];
        assert!(last.left.merge_prev && !last.left.merge_next);
        assert_eq!(last.mask & 1, 1);
    }

    #[test]
    fn runs_are_attached() {
        let g = parse_grammar(
            "S -> a A[1] b B[2] c ; S -> B[2] d A[1]\nA -> a ; A -> a\nB -> b ; B -> b\n",
        )
        .unwrap();
        let plan = compile_rule(&g, 0, None);
        let a = g.terminal_id("a").unwrap();
        let b = g.terminal_id("b").unwrap();
        assert_eq!(plan.outer_left.0, vec![a]);
        assert_eq!(plan.steps[1].left.run_prev, vec![b]);
        assert!(plan.steps[1].right.merge_next);
        assert_eq!(
            plan.steps[1].right.run_next,
            vec![g.terminal_id("d").unwrap()]
        );
        let seed = compile_rule(&g, 1, None).seed.unwrap();
        assert_eq!(seed, (vec![a], vec![a]));
    }
}
