//! Bottom-up recognition of sentence pairs driven by per-rule linear
//! strategies.
//!
//! A state of rule `s` after `k` steps keeps only the outer boundaries of
//! the maximal spans its collected pairs cover, so it holds exactly
//! `2 * fan_out` positions. Terminal runs between nonterminals are matched
//! when the step that closes the gap is taken.

mod plan;

use crate::grammar::{GrammarError, Scfg, SentencePair};
use crate::strategy::{optimize, LinearStrategy, Objective, StrategyError, DEFAULT_SIZE_LIMIT};
use plan::{compile_rule, RulePlan, SidePlan, StepPlan};
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("rule {rule} has rank {r}, above the solver limit {limit}; supply a strategy")]
    SolverLimit {
        rule: String,
        r: usize,
        limit: usize,
    },
    #[error("strategy for rule {rule} has length {got}, rule rank is {expected}")]
    StrategyMismatch {
        rule: String,
        expected: usize,
        got: usize,
    },
    #[error("unknown rule {0}")]
    UnknownRule(String),
    #[error("derivation counts are unbounded: the grammar has an empty rule or a unit-rule cycle")]
    Unbounded,
}

/// One strategy per rule; rules without nonterminals carry none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleStrategies {
    labels: Vec<String>,
    strategies: Vec<Option<LinearStrategy>>,
}

impl RuleStrategies {
    /// Left-to-right order for every rule.
    pub fn left_to_right(g: &Scfg) -> Self {
        Self {
            labels: g.rules().iter().map(|r| r.label.clone()).collect(),
            strategies: g
                .rules()
                .iter()
                .map(|r| (r.rank() > 0).then(|| LinearStrategy::identity(r.rank())))
                .collect(),
        }
    }

    pub fn get(&self, rule: usize) -> Option<&LinearStrategy> {
        self.strategies.get(rule).and_then(|s| s.as_ref())
    }

    pub fn len(&self) -> usize {
        self.strategies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strategies.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Option<&LinearStrategy>)> {
        self.labels
            .iter()
            .map(String::as_str)
            .zip(self.strategies.iter().map(Option::as_ref))
    }

    /// Replaces the strategy of the rule labelled `label`.
    pub fn set(&mut self, label: &str, s: LinearStrategy) -> Result<(), ParseError> {
        let idx = self
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| ParseError::UnknownRule(label.to_string()))?;
        let expected = self.strategies[idx].as_ref().map_or(0, LinearStrategy::len);
        if expected != s.len() || expected == 0 {
            return Err(ParseError::StrategyMismatch {
                rule: label.to_string(),
                expected,
                got: s.len(),
            });
        }
        self.strategies[idx] = Some(s);
        Ok(())
    }
}

/// Optimal strategy per rule under `objective`; rules of rank at most 2 go left to right.
pub fn compile_strategies(g: &Scfg, objective: Objective) -> Result<RuleStrategies, ParseError> {
    compile_strategies_with(g, objective, &[])
}

/// As [`compile_strategies`], with `manual` strategies taking precedence
/// (including for rules above the solver limit).
pub fn compile_strategies_with(
    g: &Scfg,
    objective: Objective,
    manual: &[(String, LinearStrategy)],
) -> Result<RuleStrategies, ParseError> {
    let mut out = RuleStrategies::left_to_right(g);
    for (i, rule) in g.rules().iter().enumerate() {
        let r = rule.rank();
        if r <= 2 || manual.iter().any(|(l, _)| *l == rule.label) {
            continue;
        }
        if r > DEFAULT_SIZE_LIMIT {
            return Err(ParseError::SolverLimit {
                rule: rule.label.clone(),
                r,
                limit: DEFAULT_SIZE_LIMIT,
            });
        }
        let perm = rule.permutation()?;
        out.strategies[i] = Some(optimize(&perm, objective, DEFAULT_SIZE_LIMIT)?.strategy);
    }
    for (label, s) in manual {
        out.set(label, s.clone())?;
    }
    Ok(out)
}

/// A linked nonterminal pair with its spans (0-based, half-open).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChartItem {
    pub left: usize,
    pub right: usize,
    pub span1: (u32, u32),
    pub span2: (u32, u32),
}

impl ChartItem {
    fn size(&self) -> u32 {
        (self.span1.1 - self.span1.0) + (self.span2.1 - self.span2.0)
    }
}

/// A partially collected rule: spans into `w1` followed by spans into `w2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ParseState {
    pub rule: usize,
    pub step: usize,
    pub spans1: Vec<(u32, u32)>,
    pub spans2: Vec<(u32, u32)>,
}

impl ParseState {
    pub fn boundary_count(&self) -> usize {
        2 * (self.spans1.len() + self.spans2.len())
    }
}

/// Distinct states of one rule after one step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepCount {
    pub rule: String,
    /// Steps taken, from 1.
    pub step: usize,
    pub fan_out: usize,
    pub states: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ParseStats {
    pub steps: Vec<StepCount>,
    pub items: u64,
    pub peak_boundaries: usize,
    pub combinations: u64,
    /// States whose boundary count differed from twice the fan-out of their type.
    pub arity_violations: u64,
}

impl ParseStats {
    pub fn states_at(&self, rule: &str, step: usize) -> Option<u64> {
        self.steps
            .iter()
            .find(|s| s.rule == rule && s.step == step)
            .map(|s| s.states)
    }

    /// Largest state count over the steps of `rule`.
    pub fn peak_states(&self, rule: &str) -> u64 {
        self.steps
            .iter()
            .filter(|s| s.rule == rule)
            .map(|s| s.states)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Propagate derivation counts; needs a grammar with finitely many derivations per pair.
    pub count: bool,
    /// Return every instantiated state.
    pub keep_states: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParseOutcome {
    pub accepted: bool,
    /// Present when counting was requested.
    pub derivations: Option<u64>,
    pub stats: ParseStats,
    #[serde(skip)]
    pub items: Vec<ChartItem>,
    #[serde(skip)]
    pub states: Vec<ParseState>,
}

pub fn recognize(
    g: &Scfg,
    strategies: &RuleStrategies,
    p: &SentencePair,
) -> Result<(bool, ParseStats), ParseError> {
    let out = parse(g, strategies, p, ParseOptions::default())?;
    Ok((out.accepted, out.stats))
}

/// Number of distinct derivations of `p`, saturating at `u64::MAX`.
pub fn count_derivations(
    g: &Scfg,
    strategies: &RuleStrategies,
    p: &SentencePair,
) -> Result<u64, ParseError> {
    let opts = ParseOptions {
        count: true,
        keep_states: false,
    };
    Ok(parse(g, strategies, p, opts)?.derivations.unwrap_or(0))
}

pub fn parse(
    g: &Scfg,
    strategies: &RuleStrategies,
    p: &SentencePair,
    opts: ParseOptions,
) -> Result<ParseOutcome, ParseError> {
    let count = opts.count;
    if count && !g.has_finite_derivations() {
        return Err(ParseError::Unbounded);
    }
    if strategies.len() != g.rules().len() {
        return Err(ParseError::StrategyMismatch {
            rule: "*".into(),
            expected: g.rules().len(),
            got: strategies.len(),
        });
    }
    for (i, rule) in g.rules().iter().enumerate() {
        let got = strategies.get(i).map_or(0, LinearStrategy::len);
        if got != rule.rank() {
            return Err(ParseError::StrategyMismatch {
                rule: rule.label.clone(),
                expected: rule.rank(),
                got,
            });
        }
    }
    let (w1, w2) = g.encode_pair(p)?;
    let plans: Vec<RulePlan> = (0..g.rules().len())
        .map(|i| compile_rule(g, i, strategies.get(i)))
        .collect();
    let mut chart = Chart::new(&plans, &w1, &w2, count);
    chart.run();

    let goal = ChartItem {
        left: g.start(),
        right: g.start(),
        span1: (0, w1.len() as u32),
        span2: (0, w2.len() as u32),
    };
    let goal_id = chart.item_ids.get(&goal).copied();
    let mut steps = Vec::new();
    for (ri, plan) in plans.iter().enumerate() {
        for st in &plan.steps {
            steps.push(StepCount {
                rule: g.rules()[ri].label.clone(),
                step: st.step + 1,
                fan_out: st.arity_after / 2,
                states: chart.step_states[ri][st.step],
            });
        }
    }
    let mut items: Vec<ChartItem> = chart.items.iter().map(|e| e.item).collect();
    items.sort();
    let stats = ParseStats {
        steps,
        items: items.len() as u64,
        peak_boundaries: chart.peak_boundaries,
        combinations: chart.combinations,
        arity_violations: chart.arity_violations,
    };
    let states = if opts.keep_states {
        (0..chart.states.len())
            .map(|i| chart.state_view(i))
            .collect()
    } else {
        Vec::new()
    };
    Ok(ParseOutcome {
        accepted: goal_id.is_some(),
        derivations: count.then(|| goal_id.map_or(0, |id| chart.items[id].total)),
        stats,
        items,
        states,
    })
}

type JoinKey = [u32; 4];
const FREE: u32 = u32::MAX;

struct ItemEntry {
    item: ChartItem,
    total: u64,
    pending: u64,
}

struct StateEntry {
    rule: usize,
    step: usize,
    bounds: Box<[u32]>,
    total: u64,
    pending: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Item(usize),
    State(usize),
}

struct Chart<'a> {
    plans: &'a [RulePlan],
    w1: &'a [usize],
    w2: &'a [usize],
    count: bool,
    items: Vec<ItemEntry>,
    item_ids: HashMap<ChartItem, usize>,
    states: Vec<StateEntry>,
    state_ids: HashMap<(usize, usize, Box<[u32]>), usize>,
    /// Items by pair and join mask and fixed coordinates.
    item_index: HashMap<(usize, usize, u8, JoinKey), Vec<usize>>,
    /// Step plans consuming each pair.
    consumers: HashMap<(usize, usize), Vec<(usize, usize)>>,
    /// States waiting at `(rule, step)` by join key.
    state_index: HashMap<(usize, usize, JoinKey), Vec<usize>>,
    agenda: BinaryHeap<Reverse<(u32, Node)>>,
    step_states: Vec<Vec<u64>>,
    peak_boundaries: usize,
    combinations: u64,
    arity_violations: u64,
}

fn masked(item: &ChartItem, mask: u8) -> JoinKey {
    let c = [item.span1.0, item.span1.1, item.span2.0, item.span2.1];
    let mut k = [FREE; 4];
    for b in 0..4 {
        if mask & (1 << b) != 0 {
            k[b] = c[b];
        }
    }
    k
}

fn matches_at(w: &[usize], at: usize, run: &[usize]) -> bool {
    at + run.len() <= w.len() && w[at..at + run.len()] == *run
}

/// Fixed coordinates a side of a state imposes on the next span, if the
/// terminal runs around the gap match.
fn side_key(w: &[usize], blocks: &[u32], sp: &SidePlan) -> Option<(u32, u32)> {
    let mut start = FREE;
    let mut end = FREE;
    if sp.merge_prev {
        let e = blocks[2 * (sp.insert_at - 1) + 1] as usize;
        if !matches_at(w, e, &sp.run_prev) {
            return None;
        }
        start = (e + sp.run_prev.len()) as u32;
    }
    if sp.merge_next {
        let s = blocks[2 * sp.insert_at] as usize;
        let y = s.checked_sub(sp.run_next.len())?;
        if !matches_at(w, y, &sp.run_next) {
            return None;
        }
        end = y as u32;
    }
    Some((start, end))
}

/// Whether a span fits between the unmerged neighbouring blocks.
fn side_fits(blocks: &[u32], sp: &SidePlan, span: (u32, u32)) -> bool {
    if !sp.merge_prev && sp.insert_at > 0 && span.0 < blocks[2 * (sp.insert_at - 1) + 1] {
        return false;
    }
    if !sp.merge_next && sp.insert_at < sp.blocks && span.1 > blocks[2 * sp.insert_at] {
        return false;
    }
    true
}

fn side_apply(blocks: &[u32], sp: &SidePlan, span: (u32, u32), out: &mut Vec<u32>) {
    let t = sp.insert_at;
    let mut start = span.0;
    let mut end = span.1;
    let before = if sp.merge_prev {
        start = blocks[2 * (t - 1)];
        t - 1
    } else {
        t
    };
    out.extend_from_slice(&blocks[..2 * before]);
    let mut rest = t;
    if sp.merge_next {
        end = blocks[2 * t + 1];
        rest += 1;
    }
    out.push(start);
    out.push(end);
    out.extend_from_slice(&blocks[2 * rest..]);
}

impl<'a> Chart<'a> {
    fn new(plans: &'a [RulePlan], w1: &'a [usize], w2: &'a [usize], count: bool) -> Self {
        let mut consumers: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for (ri, p) in plans.iter().enumerate() {
            for st in &p.steps {
                consumers.entry(st.pair).or_default().push((ri, st.step));
            }
        }
        Chart {
            plans,
            w1,
            w2,
            count,
            items: Vec::new(),
            item_ids: HashMap::new(),
            states: Vec::new(),
            state_ids: HashMap::new(),
            item_index: HashMap::new(),
            consumers,
            state_index: HashMap::new(),
            agenda: BinaryHeap::new(),
            step_states: plans.iter().map(|p| vec![0; p.rank]).collect(),
            peak_boundaries: 0,
            combinations: 0,
            arity_violations: 0,
        }
    }

    fn step(&self, rule: usize, k: usize) -> &'a StepPlan {
        &self.plans[rule].steps[k]
    }

    fn add_item(&mut self, item: ChartItem, amount: u64) {
        if let Some(&id) = self.item_ids.get(&item) {
            if self.count {
                let e = &mut self.items[id];
                if e.pending == 0 {
                    self.agenda.push(Reverse((item.size(), Node::Item(id))));
                }
                e.pending = e.pending.saturating_add(amount);
            }
            return;
        }
        let id = self.items.len();
        self.items.push(ItemEntry {
            item,
            total: 0,
            pending: amount,
        });
        self.item_ids.insert(item, id);
        let mut masks: Vec<u8> = self
            .consumers
            .get(&(item.left, item.right))
            .map(|c| c.iter().map(|&(r, k)| self.step(r, k).mask).collect())
            .unwrap_or_default();
        masks.sort_unstable();
        masks.dedup();
        for m in masks {
            self.item_index
                .entry((item.left, item.right, m, masked(&item, m)))
                .or_default()
                .push(id);
        }
        self.agenda.push(Reverse((item.size(), Node::Item(id))));
    }

    fn add_state(&mut self, rule: usize, step: usize, bounds: Vec<u32>, amount: u64) {
        let key = (rule, step, bounds.into_boxed_slice());
        if let Some(&id) = self.state_ids.get(&key) {
            if self.count {
                let size = self.state_size(id);
                let e = &mut self.states[id];
                if e.pending == 0 {
                    self.agenda.push(Reverse((size, Node::State(id))));
                }
                e.pending = e.pending.saturating_add(amount);
            }
            return;
        }
        let (rule, step, bounds) = key;
        let expected = self.step(rule, step - 1).arity_after;
        debug_assert_eq!(bounds.len(), expected, "state arity");
        if bounds.len() != expected {
            self.arity_violations += 1;
        }
        self.peak_boundaries = self.peak_boundaries.max(bounds.len());
        self.step_states[rule][step - 1] += 1;
        let id = self.states.len();
        self.states.push(StateEntry {
            rule,
            step,
            bounds: bounds.clone(),
            total: 0,
            pending: amount,
        });
        self.state_ids.insert((rule, step, bounds), id);
        if let Some(k) = self.state_join_key(id) {
            self.state_index
                .entry((rule, step, k))
                .or_default()
                .push(id);
        }
        let size = self.state_size(id);
        self.agenda.push(Reverse((size, Node::State(id))));
    }

    fn state_size(&self, id: usize) -> u32 {
        self.states[id].bounds.chunks(2).map(|c| c[1] - c[0]).sum()
    }

    fn state_join_key(&self, id: usize) -> Option<JoinKey> {
        let s = &self.states[id];
        if s.step == self.plans[s.rule].rank {
            return None;
        }
        let sp = self.step(s.rule, s.step);
        let (l, r) = s.bounds.split_at(2 * sp.left.blocks);
        let (a, b) = side_key(self.w1, l, &sp.left)?;
        let (c, d) = side_key(self.w2, r, &sp.right)?;
        Some([a, b, c, d])
    }

    fn combine(&mut self, sid: usize, iid: usize, amount: u64) {
        let (rule, step) = (self.states[sid].rule, self.states[sid].step);
        let sp = self.step(rule, step);
        let item = self.items[iid].item;
        let bounds = self.states[sid].bounds.clone();
        let (l, r) = bounds.split_at(2 * sp.left.blocks);
        if !side_fits(l, &sp.left, item.span1) || !side_fits(r, &sp.right, item.span2) {
            return;
        }
        self.combinations += 1;
        let mut out = Vec::with_capacity(sp.arity_after);
        side_apply(l, &sp.left, item.span1, &mut out);
        side_apply(r, &sp.right, item.span2, &mut out);
        self.add_state(rule, step + 1, out, amount);
    }

    fn complete(&mut self, sid: usize, amount: u64) {
        let s = &self.states[sid];
        let plan = &self.plans[s.rule];
        let (s1, e1, s2, e2) = (
            s.bounds[0] as usize,
            s.bounds[1] as usize,
            s.bounds[2] as usize,
            s.bounds[3] as usize,
        );
        let (pre1, post1) = &plan.outer_left;
        let (pre2, post2) = &plan.outer_right;
        if s1 < pre1.len() || s2 < pre2.len() {
            return;
        }
        let (a1, a2) = (s1 - pre1.len(), s2 - pre2.len());
        if !matches_at(self.w1, a1, pre1)
            || !matches_at(self.w1, e1, post1)
            || !matches_at(self.w2, a2, pre2)
            || !matches_at(self.w2, e2, post2)
        {
            return;
        }
        let item = ChartItem {
            left: plan.lhs.0,
            right: plan.lhs.1,
            span1: (a1 as u32, (e1 + post1.len()) as u32),
            span2: (a2 as u32, (e2 + post2.len()) as u32),
        };
        self.add_item(item, amount);
    }

    fn seed(&mut self) {
        for plan in self.plans {
            let Some((u, v)) = &plan.seed else { continue };
            let occ = |w: &[usize], run: &[usize]| -> Vec<usize> {
                (0..=w.len().saturating_sub(run.len()))
                    .filter(|&i| run.len() <= w.len() && matches_at(w, i, run))
                    .collect()
            };
            let o1 = occ(self.w1, u);
            let o2 = occ(self.w2, v);
            for &i in &o1 {
                for &j in &o2 {
                    self.add_item(
                        ChartItem {
                            left: plan.lhs.0,
                            right: plan.lhs.1,
                            span1: (i as u32, (i + u.len()) as u32),
                            span2: (j as u32, (j + v.len()) as u32),
                        },
                        1,
                    );
                }
            }
        }
    }

    fn run(&mut self) {
        self.seed();
        while let Some(Reverse((_, node))) = self.agenda.pop() {
            match node {
                Node::Item(id) => {
                    let d = std::mem::take(&mut self.items[id].pending);
                    if d == 0 {
                        continue;
                    }
                    self.process_item(id, d);
                    let e = &mut self.items[id];
                    e.total = e.total.saturating_add(d);
                }
                Node::State(id) => {
                    let d = std::mem::take(&mut self.states[id].pending);
                    if d == 0 {
                        continue;
                    }
                    self.process_state(id, d);
                    let e = &mut self.states[id];
                    e.total = e.total.saturating_add(d);
                }
            }
        }
    }

    fn process_item(&mut self, iid: usize, d: u64) {
        let item = self.items[iid].item;
        let Some(cons) = self.consumers.get(&(item.left, item.right)).cloned() else {
            return;
        };
        for (rule, k) in cons {
            if k == 0 {
                self.combinations += 1;
                let sp = self.step(rule, 0);
                let mut out = Vec::with_capacity(4);
                side_apply(&[], &sp.left, item.span1, &mut out);
                side_apply(&[], &sp.right, item.span2, &mut out);
                self.add_state(rule, 1, out, d);
                continue;
            }
            let key = masked(&item, self.step(rule, k).mask);
            let Some(waiting) = self.state_index.get(&(rule, k, key)).cloned() else {
                continue;
            };
            for sid in waiting {
                let t = self.states[sid].total;
                if t > 0 {
                    self.combine(sid, iid, t.saturating_mul(d));
                }
            }
        }
    }

    fn process_state(&mut self, sid: usize, d: u64) {
        let (rule, step) = (self.states[sid].rule, self.states[sid].step);
        if step == self.plans[rule].rank {
            self.complete(sid, d);
            return;
        }
        let Some(key) = self.state_join_key(sid) else {
            return;
        };
        let sp = self.step(rule, step);
        let Some(cands) = self
            .item_index
            .get(&(sp.pair.0, sp.pair.1, sp.mask, key))
            .cloned()
        else {
            return;
        };
        for iid in cands {
            let t = self.items[iid].total;
            if t > 0 {
                self.combine(sid, iid, d.saturating_mul(t));
            }
        }
    }
}

impl Chart<'_> {
    fn state_view(&self, id: usize) -> ParseState {
        let s = &self.states[id];
        let nl = match self.plans[s.rule].steps.get(s.step) {
            Some(sp) => sp.left.blocks,
            None => 1,
        };
        let (l, r) = s.bounds.split_at(2 * nl);
        let pairs = |b: &[u32]| b.chunks(2).map(|c| (c[0], c[1])).collect();
        ParseState {
            rule: s.rule,
            step: s.step,
            spans1: pairs(l),
            spans2: pairs(r),
        }
    }
}

#[cfg(test)]
mod tests;
