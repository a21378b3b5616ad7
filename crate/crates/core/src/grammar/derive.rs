//! Ground-truth derivation search over sentential forms.
//!
//! Forms are rewritten canonically: the pair whose left occurrence is leftmost
//! in the left component is always the one expanded. After each step indices
//! are renumbered by left order, so equal forms compare equal.

use super::{GrammarError, Scfg, SentencePair, Symbol};
use std::collections::{BTreeSet, HashMap, HashSet};
use thiserror::Error;

/// Step budget used by [`pair_membership_oracle`] when derivations may be unbounded.
pub const DEFAULT_ORACLE_STEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search reached the step bound {steps} without certifying rejection")]
    BoundExceeded { steps: usize },
    #[error("derivation counts can be unbounded: the grammar has an empty rule or a cycle of unit rules")]
    Unbounded,
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Form {
    left: Vec<Symbol>,
    right: Vec<Symbol>,
}

impl Form {
    fn is_terminal(&self) -> bool {
        !self
            .left
            .iter()
            .any(|s| matches!(s, Symbol::Nonterminal { .. }))
    }

    fn canonical(mut self) -> Form {
        let mut map = HashMap::new();
        for s in self.left.iter_mut() {
            if let Symbol::Nonterminal { index, .. } = s {
                let next = map.len() + 1;
                *index = *map.entry(*index).or_insert(next);
            }
        }
        for s in self.right.iter_mut() {
            if let Symbol::Nonterminal { index, .. } = s {
                *index = map[index];
            }
        }
        self
    }

    fn terminals(side: &[Symbol]) -> impl Iterator<Item = usize> + '_ {
        side.iter().filter_map(|s| match s {
            Symbol::Terminal(t) => Some(*t),
            _ => None,
        })
    }
}

struct Expander<'g> {
    g: &'g Scfg,
    by_lhs: HashMap<(usize, usize), Vec<usize>>,
}

impl<'g> Expander<'g> {
    fn new(g: &'g Scfg) -> Self {
        let mut by_lhs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, r) in g.rules().iter().enumerate() {
            by_lhs.entry((r.left_lhs, r.right_lhs)).or_default().push(i);
        }
        Expander { g, by_lhs }
    }

    fn start(&self) -> Form {
        let s = Symbol::Nonterminal {
            nt: self.g.start(),
            index: 1,
        };
        Form {
            left: vec![s],
            right: vec![s],
        }
    }

    /// Successors in rule order; empty for terminal forms and dead ends.
    fn successors(&self, f: &Form) -> Vec<Form> {
        let Some((pl, nt_l, idx)) = f.left.iter().enumerate().find_map(|(p, s)| match *s {
            Symbol::Nonterminal { nt, index } => Some((p, nt, index)),
            _ => None,
        }) else {
            return Vec::new();
        };
        let (pr, nt_r) = f
            .right
            .iter()
            .enumerate()
            .find_map(|(p, s)| match *s {
                Symbol::Nonterminal { nt, index } if index == idx => Some((p, nt)),
                _ => None,
            })
            .expect("forms stay synchronous");
        let shift = f
            .left
            .iter()
            .filter_map(|s| match s {
                Symbol::Nonterminal { index, .. } => Some(*index),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let splice = |side: &[Symbol], at: usize, rhs: &[Symbol]| {
            let mut out = Vec::with_capacity(side.len() + rhs.len());
            out.extend_from_slice(&side[..at]);
            out.extend(rhs.iter().map(|s| match *s {
                Symbol::Nonterminal { nt, index } => Symbol::Nonterminal {
                    nt,
                    index: index + shift,
                },
                t => t,
            }));
            out.extend_from_slice(&side[at + 1..]);
            out
        };
        self.by_lhs
            .get(&(nt_l, nt_r))
            .map(|rules| {
                rules
                    .iter()
                    .map(|&ri| {
                        let r = &self.g.rules()[ri];
                        Form {
                            left: splice(&f.left, pl, &r.left),
                            right: splice(&f.right, pr, &r.right),
                        }
                        .canonical()
                    })
                    .collect()
            })
            .unwrap_or_default()
    }
}

/// Target-directed pruning. Terminals before the first nonterminal of a side
/// and after its last one never change again, so they must match the target.
struct Target<'a> {
    w1: &'a [usize],
    w2: &'a [usize],
    finite: bool,
}

impl Target<'_> {
    fn side_viable(side: &[Symbol], w: &[usize]) -> bool {
        let count = Form::terminals(side).count();
        if count > w.len() {
            return false;
        }
        let first = side
            .iter()
            .position(|s| matches!(s, Symbol::Nonterminal { .. }));
        match first {
            None => Form::terminals(side).eq(w.iter().copied()),
            Some(first) => {
                let last = side
                    .iter()
                    .rposition(|s| matches!(s, Symbol::Nonterminal { .. }))
                    .expect("some");
                let prefix = Form::terminals(&side[..first]);
                let suffix: Vec<usize> = Form::terminals(&side[last + 1..]).collect();
                prefix.zip(w).all(|(a, &b)| a == b)
                    && first <= w.len()
                    && suffix.len() <= w.len()
                    && suffix[..] == w[w.len() - suffix.len()..]
            }
        }
    }

    fn viable(&self, f: &Form) -> bool {
        if !Self::side_viable(&f.left, self.w1) || !Self::side_viable(&f.right, self.w2) {
            return false;
        }
        if self.finite {
            // Every pair still has to yield at least one terminal.
            let pairs = f.left.len() - Form::terminals(&f.left).count();
            let terms = Form::terminals(&f.left).count() + Form::terminals(&f.right).count();
            return terms + pairs <= self.w1.len() + self.w2.len();
        }
        true
    }
}

fn to_pair(g: &Scfg, f: &Form) -> SentencePair {
    let names = |side: &[Symbol]| {
        Form::terminals(side)
            .map(|t| g.terminal_name(t).to_string())
            .collect()
    };
    SentencePair::new(names(&f.left), names(&f.right))
}

/// All pairs derivable in at most `max_steps` canonical steps.
pub fn enumerate_translations(g: &Scfg, max_steps: usize) -> BTreeSet<SentencePair> {
    let ex = Expander::new(g);
    let mut out = BTreeSet::new();
    // Reachable terminal pairs grow with the remaining budget, so a form seen
    // with at least as much budget left can be skipped.
    let mut seen: HashMap<Form, usize> = HashMap::new();
    let mut stack = vec![(ex.start(), max_steps)];
    while let Some((f, budget)) = stack.pop() {
        if f.is_terminal() {
            out.insert(to_pair(g, &f));
            continue;
        }
        if budget == 0 || seen.get(&f).is_some_and(|&b| b >= budget) {
            continue;
        }
        seen.insert(f.clone(), budget);
        for s in ex.successors(&f) {
            stack.push((s, budget - 1));
        }
    }
    out
}

/// Membership by derivation search.
///
/// Certified whenever [`Scfg::has_finite_derivations`] holds, which covers every
/// grammar whose rules all have two linked pairs or a terminal.
pub fn pair_membership_oracle(g: &Scfg, p: &SentencePair) -> Result<bool, OracleError> {
    pair_membership_oracle_with_bound(g, p, DEFAULT_ORACLE_STEPS)
}

/// As [`pair_membership_oracle`]. When derivations are finite the bound is not
/// needed and ignored; otherwise a search that runs into it without a derivation reports
/// [`OracleError::BoundExceeded`].
pub fn pair_membership_oracle_with_bound(
    g: &Scfg,
    p: &SentencePair,
    max_steps: usize,
) -> Result<bool, OracleError> {
    let (w1, w2) = g.encode_pair(p)?;
    let ex = Expander::new(g);
    if g.has_finite_derivations() {
        let target = Target {
            w1: &w1,
            w2: &w2,
            finite: true,
        };
        let mut memo = HashMap::new();
        return Ok(member_finite(&ex, &target, ex.start(), &mut memo));
    }
    let target = Target {
        w1: &w1,
        w2: &w2,
        finite: false,
    };
    let mut on_path = HashSet::new();
    let mut hit = false;
    if member_bounded(&ex, &target, ex.start(), max_steps, &mut on_path, &mut hit) {
        Ok(true)
    } else if hit {
        Err(OracleError::BoundExceeded { steps: max_steps })
    } else {
        Ok(false)
    }
}

fn member_finite(ex: &Expander, t: &Target, f: Form, memo: &mut HashMap<Form, bool>) -> bool {
    if !t.viable(&f) {
        return false;
    }
    if f.is_terminal() {
        return true;
    }
    if let Some(&m) = memo.get(&f) {
        return m;
    }
    let found = ex
        .successors(&f)
        .into_iter()
        .any(|s| member_finite(ex, t, s, memo));
    memo.insert(f, found);
    found
}

fn member_bounded(
    ex: &Expander,
    t: &Target,
    f: Form,
    budget: usize,
    on_path: &mut HashSet<Form>,
    hit: &mut bool,
) -> bool {
    if !t.viable(&f) {
        return false;
    }
    if f.is_terminal() {
        return true;
    }
    if budget == 0 {
        *hit = true;
        return false;
    }
    // A derivation that revisits a form can be shortened.
    if !on_path.insert(f.clone()) {
        return false;
    }
    let found = ex
        .successors(&f)
        .into_iter()
        .any(|s| member_bounded(ex, t, s, budget - 1, on_path, hit));
    on_path.remove(&f);
    found
}

/// Number of distinct canonical derivations of `p`.
pub fn count_derivations_oracle(g: &Scfg, p: &SentencePair) -> Result<u64, OracleError> {
    if !g.has_finite_derivations() {
        return Err(OracleError::Unbounded);
    }
    let (w1, w2) = g.encode_pair(p)?;
    let ex = Expander::new(g);
    let target = Target {
        w1: &w1,
        w2: &w2,
        finite: true,
    };
    let mut memo = HashMap::new();
    Ok(count(&ex, &target, ex.start(), &mut memo))
}

fn count(ex: &Expander, t: &Target, f: Form, memo: &mut HashMap<Form, u64>) -> u64 {
    if !t.viable(&f) {
        return 0;
    }
    if f.is_terminal() {
        return 1;
    }
    if let Some(&c) = memo.get(&f) {
        return c;
    }
    let c = ex
        .successors(&f)
        .into_iter()
        .fold(0u64, |acc, s| acc.saturating_add(count(ex, t, s, memo)));
    memo.insert(f, c);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    const EXAMPLE: &str = "\
S -> A[1] B[2] ; S -> B[2] A[1]
A -> a A[1] b ; A -> b A[1] a
A -> a b ; A -> b a
B -> c B[1] d ; B -> d B[1] c
B -> c d ; B -> d c
";

    fn pair(a: &str, b: &str) -> SentencePair {
        SentencePair::from_chars(a, b)
    }

    #[test]
    fn enumeration_contains_known_pairs() {
        let g = parse_grammar(EXAMPLE).unwrap();
        assert!(enumerate_translations(&g, 3).contains(&pair("abcd", "dcba")));
        assert!(enumerate_translations(&g, 6).contains(&pair("aaabbbccdd", "ddccbbbaaa")));
        assert_eq!(enumerate_translations(&g, 2).len(), 0);
    }

    #[test]
    fn enumeration_matches_closed_form() {
        let g = parse_grammar(EXAMPLE).unwrap();
        let got = enumerate_translations(&g, 5);
        let mut want = BTreeSet::new();
        for p in 1..=3 {
            for q in 1..=3 {
                if p + q < 5 {
                    let w1 = format!(
                        "{}{}{}{}",
                        "a".repeat(p),
                        "b".repeat(p),
                        "c".repeat(q),
                        "d".repeat(q)
                    );
                    let w2 = format!(
                        "{}{}{}{}",
                        "d".repeat(q),
                        "c".repeat(q),
                        "b".repeat(p),
                        "a".repeat(p)
                    );
                    want.insert(pair(&w1, &w2));
                }
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn membership_examples() {
        let g = parse_grammar(EXAMPLE).unwrap();
        assert_eq!(
            pair_membership_oracle(&g, &pair("aabbcd", "dcbbaa")),
            Ok(true)
        );
        assert_eq!(pair_membership_oracle(&g, &pair("abcd", "abcd")), Ok(false));
        assert_eq!(pair_membership_oracle(&g, &pair("", "")), Ok(false));
    }

    #[test]
    fn no_terminating_rules_gives_empty_set() {
        let g = parse_grammar("S -> S[1] S[2] ; S -> S[2] S[1]\n").unwrap();
        assert!(enumerate_translations(&g, 6).is_empty());
    }

    #[test]
    fn counts() {
        let g = parse_grammar(EXAMPLE).unwrap();
        assert_eq!(count_derivations_oracle(&g, &pair("abcd", "dcba")), Ok(1));
        assert_eq!(count_derivations_oracle(&g, &pair("ab", "ba")), Ok(0));
        let amb =
            parse_grammar("S -> A[1] ; S -> A[1]\nA -> a ; A -> a\nS -> a ; S -> a\n").unwrap();
        assert_eq!(count_derivations_oracle(&amb, &pair("a", "a")), Ok(1 + 1));
    }

    #[test]
    fn unbounded_grammars() {
        let g = parse_grammar("S -> A[1] ; S -> A[1]\nA -> S[1] ; A -> S[1]\nS -> a ; S -> a\n")
            .unwrap();
        assert!(!g.has_finite_derivations());
        assert_eq!(
            count_derivations_oracle(&g, &pair("a", "a")),
            Err(OracleError::Unbounded)
        );
        assert_eq!(pair_membership_oracle(&g, &pair("a", "a")), Ok(true));
        // Cycles alone do not exhaust the budget.
        assert_eq!(pair_membership_oracle(&g, &pair("aa", "a")), Ok(false));
        let eps = parse_grammar("S -> A[1] A[2] ; S -> A[2] A[1]\nA -> ; A -> \nA -> a ; A -> a\n")
            .unwrap();
        assert_eq!(
            pair_membership_oracle_with_bound(&eps, &pair("a", "a"), 8),
            Ok(true)
        );
        assert_eq!(
            pair_membership_oracle_with_bound(&eps, &pair("aaa", "a"), 2),
            Err(OracleError::BoundExceeded { steps: 2 })
        );
        assert_eq!(
            pair_membership_oracle_with_bound(&eps, &pair("aaa", "a"), 8),
            Ok(false)
        );
    }
}
