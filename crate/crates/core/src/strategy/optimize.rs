use super::{evaluate, LinearStrategy, Permutation, StrategyError};
use crate::lexperm::for_each_permutation;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Largest rule size accepted by [`optimize`] unless a limit is passed explicitly.
pub const DEFAULT_SIZE_LIMIT: usize = 16;
/// Largest rule size accepted by [`brute_force_optimize`].
pub const BRUTE_FORCE_LIMIT: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Minimize the maximum fan-out.
    Space,
    /// Minimize the maximum step time exponent.
    Time,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimum {
    pub strategy: LinearStrategy,
    pub value: usize,
    /// Search nodes visited (prefixes for branch-and-bound, full orders for brute force).
    pub nodes: u64,
}

pub fn optimize_space(p: &Permutation) -> Result<Optimum, StrategyError> {
    optimize(p, Objective::Space, DEFAULT_SIZE_LIMIT)
}

pub fn optimize_time(p: &Permutation) -> Result<Optimum, StrategyError> {
    optimize(p, Objective::Time, DEFAULT_SIZE_LIMIT)
}

/// Exact branch-and-bound over strategy prefixes.
///
/// Prefixes are extended in increasing left-position order and only strict
/// improvements replace the incumbent, so the result is the lexicographically
/// least optimal strategy.
pub fn optimize(
    p: &Permutation,
    objective: Objective,
    limit: usize,
) -> Result<Optimum, StrategyError> {
    let r = p.len();
    if r > limit || r > 63 {
        return Err(StrategyError::SizeLimit {
            r,
            limit: limit.min(63),
        });
    }
    let mut search = Search {
        r,
        objective,
        right_of_left: (1..=r).map(|i| p.inverse().apply(i) - 1).collect(),
        left_of_right: p.image().iter().map(|&i| i - 1).collect(),
        best: usize::MAX,
        best_order: Vec::new(),
        prefix: Vec::with_capacity(r),
        explored: HashMap::new(),
        nodes: 0,
    };
    search.dfs(0, 0, 0);
    let strategy = LinearStrategy::new(search.best_order.iter().map(|&i| i + 1).collect())?;
    Ok(Optimum {
        strategy,
        value: search.best,
        nodes: search.nodes,
    })
}

struct Search {
    r: usize,
    objective: Objective,
    right_of_left: Vec<usize>,
    left_of_right: Vec<usize>,
    best: usize,
    best_order: Vec<usize>,
    prefix: Vec<usize>,
    /// Smallest prefix maximum with which a collected set has been fully explored.
    explored: HashMap<u64, usize>,
    nodes: u64,
}

impl Search {
    /// Collected neighbours of left position `i` on both sides.
    fn shared(&self, set: u64, i: usize) -> usize {
        let r = self.r;
        let on = |left: usize| set >> left & 1 == 1;
        let mut n = 0;
        if i > 0 && on(i - 1) {
            n += 1;
        }
        if i + 1 < r && on(i + 1) {
            n += 1;
        }
        let j = self.right_of_left[i];
        if j > 0 && on(self.left_of_right[j - 1]) {
            n += 1;
        }
        if j + 1 < r && on(self.left_of_right[j + 1]) {
            n += 1;
        }
        n
    }

    fn dfs(&mut self, set: u64, fo: usize, prefix_max: usize) {
        self.nodes += 1;
        if self.prefix.len() == self.r {
            if prefix_max < self.best {
                self.best = prefix_max;
                self.best_order = self.prefix.clone();
            }
            return;
        }
        if let Some(&seen) = self.explored.get(&set) {
            if seen <= prefix_max {
                return;
            }
        }
        for i in 0..self.r {
            if set >> i & 1 == 1 {
                continue;
            }
            let shared = self.shared(set, i);
            let delta = 4 - shared;
            // Each shared boundary merges two runs; a fresh pair adds one run per side.
            let next_fo = fo + 2 - shared;
            let cost = match self.objective {
                Objective::Space => next_fo,
                Objective::Time => 2 * fo + delta,
            };
            let next_max = prefix_max.max(cost);
            if next_max >= self.best {
                continue;
            }
            self.prefix.push(i);
            self.dfs(set | 1 << i, next_fo, next_max);
            self.prefix.pop();
        }
        let entry = self.explored.entry(set).or_insert(usize::MAX);
        *entry = (*entry).min(prefix_max);
    }
}

/// Exhaustive scan over all `r!` strategies in lexicographic order.
pub fn brute_force_optimize(
    p: &Permutation,
    objective: Objective,
) -> Result<Optimum, StrategyError> {
    let r = p.len();
    if r > BRUTE_FORCE_LIMIT {
        return Err(StrategyError::SizeLimit {
            r,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut nodes = 0u64;
    for_each_permutation(r, |order| {
        nodes += 1;
        let s = LinearStrategy::new(order.iter().map(|&i| i + 1).collect()).expect("permutation");
        let rep = evaluate(p, &s).expect("sizes agree");
        let value = match objective {
            Objective::Space => rep.max_fo,
            Objective::Time => rep.max_t,
        };
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, order.to_vec()));
        }
    });
    let (value, order) = best.expect("at least one strategy");
    Ok(Optimum {
        strategy: LinearStrategy::new(order.iter().map(|&i| i + 1).collect())?,
        value,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example_optima() {
        let q = p("6 1 4 2 5 3");
        assert_eq!(optimize_space(&q).unwrap().value, 3);
        assert_eq!(optimize_time(&q).unwrap().value, 8);
        assert_eq!(brute_force_optimize(&q, Objective::Space).unwrap().value, 3);
        assert_eq!(brute_force_optimize(&q, Objective::Time).unwrap().value, 8);
    }

    #[test]
    fn small_values() {
        assert_eq!(optimize_space(&p("2 4 1 3")).unwrap().value, 3);
        let one = Permutation::identity(1);
        assert_eq!(optimize_space(&one).unwrap().value, 2);
        assert_eq!(optimize_time(&one).unwrap().value, 4);
        assert_eq!(
            brute_force_optimize(&one, Objective::Space)
                .unwrap()
                .strategy,
            LinearStrategy::identity(1)
        );
        for r in 3..=7 {
            assert_eq!(optimize_time(&Permutation::identity(r)).unwrap().value, 6);
            assert_eq!(optimize_space(&Permutation::identity(r)).unwrap().value, 2);
        }
    }

    #[test]
    fn identity_time_value_by_exhaustion() {
        for r in 3..=5 {
            assert_eq!(
                brute_force_optimize(&Permutation::identity(r), Objective::Time)
                    .unwrap()
                    .value,
                6
            );
        }
    }

    #[test]
    fn reported_strategy_attains_value() {
        let q = p("6 1 4 2 5 3");
        let o = optimize_time(&q).unwrap();
        assert_eq!(evaluate(&q, &o.strategy).unwrap().max_t, o.value);
        let o = optimize_space(&q).unwrap();
        assert_eq!(evaluate(&q, &o.strategy).unwrap().max_fo, o.value);
    }

    #[test]
    fn tie_break_matches_brute_force() {
        for s in ["6 1 4 2 5 3", "2 4 1 3", "3 1 4 2", "1 2 3"] {
            let q = p(s);
            for obj in [Objective::Space, Objective::Time] {
                assert_eq!(
                    optimize(&q, obj, 16).unwrap().strategy,
                    brute_force_optimize(&q, obj).unwrap().strategy
                );
            }
        }
    }

    #[test]
    fn size_limits() {
        let big = Permutation::identity(10);
        assert!(matches!(
            brute_force_optimize(&big, Objective::Space),
            Err(StrategyError::SizeLimit { .. })
        ));
        assert!(matches!(
            optimize(&big, Objective::Space, 8),
            Err(StrategyError::SizeLimit { .. })
        ));
    }
}
