//! Synchronous context-free grammars.
//!
//! A rule rewrites a linked pair of nonterminals into two right-hand sides whose
//! indexed nonterminals are in bijection. Indices are renumbered at construction
//! so the left side reads `1..=r` from left to right.

mod derive;
mod text;

pub use derive::{
    count_derivations_oracle, enumerate_translations, pair_membership_oracle,
    pair_membership_oracle_with_bound, OracleError,
};
pub use text::parse_grammar;

use crate::strategy::Permutation;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("rule {rule}: duplicate index {index} in {side} component")]
    DuplicateIndex {
        rule: String,
        side: &'static str,
        index: usize,
    },
    #[error("rule {rule}: index sets of the two components differ ({detail})")]
    IndexMismatch { rule: String, detail: String },
    #[error("line {line}: undeclared {kind} {symbol:?}")]
    Undeclared {
        line: usize,
        kind: &'static str,
        symbol: String,
    },
    #[error("symbol {0:?} is used both as a terminal and as a nonterminal")]
    SymbolClash(String),
    #[error("duplicate rule label {0:?}")]
    DuplicateLabel(String),
    #[error("start symbol {0:?} is not a nonterminal of the grammar")]
    UnknownStart(String),
    #[error("grammar has no rules and no start declaration")]
    Empty,
    #[error("rule {0} has no linked nonterminals, so it defines no permutation")]
    NoPermutation(String),
    #[error("{0:?} is not a terminal of the grammar")]
    UnknownTerminal(String),
}

/// A right-hand-side symbol. Nonterminal and terminal ids index the grammar's symbol tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(usize),
    Nonterminal { nt: usize, index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynchronousRule {
    pub label: String,
    pub left_lhs: usize,
    pub right_lhs: usize,
    pub left: Vec<Symbol>,
    pub right: Vec<Symbol>,
}

impl SynchronousRule {
    /// Validates the index bijection and renumbers indices by left order.
    pub fn new(
        label: impl Into<String>,
        left_lhs: usize,
        right_lhs: usize,
        left: Vec<Symbol>,
        right: Vec<Symbol>,
    ) -> Result<Self, GrammarError> {
        let label = label.into();
        let mut renumber: HashMap<usize, usize> = HashMap::new();
        for s in &left {
            if let Symbol::Nonterminal { index, .. } = *s {
                let next = renumber.len() + 1;
                if renumber.insert(index, next).is_some() {
                    return Err(GrammarError::DuplicateIndex {
                        rule: label,
                        side: "left",
                        index,
                    });
                }
            }
        }
        let mut seen_right = HashMap::new();
        for s in &right {
            if let Symbol::Nonterminal { index, .. } = *s {
                if seen_right.insert(index, ()).is_some() {
                    return Err(GrammarError::DuplicateIndex {
                        rule: label,
                        side: "right",
                        index,
                    });
                }
                if !renumber.contains_key(&index) {
                    return Err(GrammarError::IndexMismatch {
                        rule: label,
                        detail: format!("index {index} appears only in the right component"),
                    });
                }
            }
        }
        if seen_right.len() != renumber.len() {
            let missing = renumber
                .keys()
                .copied()
                .filter(|k| !seen_right.contains_key(k))
                .min()
                .unwrap_or(0);
            return Err(GrammarError::IndexMismatch {
                rule: label,
                detail: format!("index {missing} appears only in the left component"),
            });
        }
        let relabel = |side: Vec<Symbol>| {
            side.into_iter()
                .map(|s| match s {
                    Symbol::Nonterminal { nt, index } => Symbol::Nonterminal {
                        nt,
                        index: renumber[&index],
                    },
                    t => t,
                })
                .collect()
        };
        Ok(SynchronousRule {
            left: relabel(left),
            right: relabel(right),
            label,
            left_lhs,
            right_lhs,
        })
    }

    /// Number of linked nonterminal pairs.
    pub fn rank(&self) -> usize {
        self.left
            .iter()
            .filter(|s| matches!(s, Symbol::Nonterminal { .. }))
            .count()
    }

    pub fn terminal_count(&self) -> usize {
        self.left
            .iter()
            .chain(&self.right)
            .filter(|s| matches!(s, Symbol::Terminal(_)))
            .count()
    }

    /// `p(j)` is the (canonical) index of the `j`-th nonterminal of the right component.
    pub fn permutation(&self) -> Result<Permutation, GrammarError> {
        let image: Vec<usize> = self
            .right
            .iter()
            .filter_map(|s| match s {
                Symbol::Nonterminal { index, .. } => Some(*index),
                _ => None,
            })
            .collect();
        if image.is_empty() {
            return Err(GrammarError::NoPermutation(self.label.clone()));
        }
        Ok(Permutation::new(image).expect("indices form a bijection"))
    }

    /// The `r + 1` terminal runs around the nonterminals of one component.
    pub fn terminal_runs(&self, left_side: bool) -> Vec<Vec<usize>> {
        let side = if left_side { &self.left } else { &self.right };
        let mut runs = vec![Vec::new()];
        for s in side {
            match *s {
                Symbol::Terminal(t) => runs.last_mut().expect("non-empty").push(t),
                Symbol::Nonterminal { .. } => runs.push(Vec::new()),
            }
        }
        runs
    }

    /// Nonterminal ids of one component in order.
    pub fn nonterminals(&self, left_side: bool) -> Vec<usize> {
        let side = if left_side { &self.left } else { &self.right };
        side.iter()
            .filter_map(|s| match s {
                Symbol::Nonterminal { nt, .. } => Some(*nt),
                _ => None,
            })
            .collect()
    }
}

/// A synchronous context-free grammar with interned symbol tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scfg {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    nt_ids: HashMap<String, usize>,
    t_ids: HashMap<String, usize>,
    start: usize,
    rules: Vec<SynchronousRule>,
}

impl Scfg {
    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn rules(&self) -> &[SynchronousRule] {
        &self.rules
    }

    pub fn nonterminal_name(&self, id: usize) -> &str {
        &self.nonterminals[id]
    }

    pub fn terminal_name(&self, id: usize) -> &str {
        &self.terminals[id]
    }

    pub fn nonterminal_id(&self, name: &str) -> Option<usize> {
        self.nt_ids.get(name).copied()
    }

    pub fn terminal_id(&self, name: &str) -> Option<usize> {
        self.t_ids.get(name).copied()
    }

    /// True when every rule has at least two linked pairs or at least one terminal,
    /// which makes every derivation step grow `terminals + pairs` or shrink `pairs`.
    pub fn is_growing(&self) -> bool {
        self.rules
            .iter()
            .all(|r| r.rank() >= 2 || r.terminal_count() >= 1)
    }

    /// True when no rule is empty and the rules with one linked pair and no
    /// terminals form no cycle. Then every pair yields a terminal, unit chains
    /// are bounded, and every pair has finitely many derivations.
    pub fn has_finite_derivations(&self) -> bool {
        if self
            .rules
            .iter()
            .any(|r| r.rank() == 0 && r.terminal_count() == 0)
        {
            return false;
        }
        let mut succ: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for r in self
            .rules
            .iter()
            .filter(|r| r.rank() == 1 && r.terminal_count() == 0)
        {
            let child = (r.nonterminals(true)[0], r.nonterminals(false)[0]);
            succ.entry((r.left_lhs, r.right_lhs))
                .or_default()
                .push(child);
        }
        // 1 = on the DFS stack, 2 = finished.
        let mut state: HashMap<(usize, usize), u8> = HashMap::new();
        fn cyclic(
            v: (usize, usize),
            succ: &HashMap<(usize, usize), Vec<(usize, usize)>>,
            state: &mut HashMap<(usize, usize), u8>,
        ) -> bool {
            match state.get(&v) {
                Some(1) => return true,
                Some(_) => return false,
                None => {}
            }
            state.insert(v, 1);
            let found = succ
                .get(&v)
                .is_some_and(|ns| ns.iter().any(|&n| cyclic(n, succ, state)));
            state.insert(v, 2);
            found
        }
        !succ.keys().any(|&v| cyclic(v, &succ, &mut state))
    }

    /// The same grammar with rules listed in `order`.
    pub fn reordered(&self, order: &[usize]) -> Scfg {
        let mut g = self.clone();
        g.rules = order.iter().map(|&i| self.rules[i].clone()).collect();
        g
    }

    /// Splits text on whitespace; a token that is not a terminal but consists
    /// of single-character terminals is split into characters.
    pub fn tokenize(&self, text: &str) -> Result<Vec<usize>, GrammarError> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            if let Some(id) = self.terminal_id(tok) {
                out.push(id);
                continue;
            }
            for ch in tok.chars() {
                let mut buf = [0u8; 4];
                let id = self
                    .terminal_id(ch.encode_utf8(&mut buf))
                    .ok_or_else(|| GrammarError::UnknownTerminal(tok.to_string()))?;
                out.push(id);
            }
        }
        Ok(out)
    }

    /// Terminal ids of a sentence pair.
    pub fn encode_pair(&self, p: &SentencePair) -> Result<(Vec<usize>, Vec<usize>), GrammarError> {
        let enc = |w: &[String]| {
            w.iter()
                .map(|t| {
                    self.terminal_id(t)
                        .ok_or_else(|| GrammarError::UnknownTerminal(t.clone()))
                })
                .collect::<Result<Vec<_>, _>>()
        };
        Ok((enc(&p.w1)?, enc(&p.w2)?))
    }

    pub fn rule_to_string(&self, rule: &SynchronousRule) -> String {
        let side = |lhs: usize, syms: &[Symbol]| {
            let mut s = format!("{} ->", self.nonterminals[lhs]);
            for sym in syms {
                s.push(' ');
                match *sym {
                    Symbol::Terminal(t) => s.push_str(&text::terminal_literal(&self.terminals[t])),
                    Symbol::Nonterminal { nt, index } => {
                        s.push_str(&format!("{}[{}]", self.nonterminals[nt], index))
                    }
                }
            }
            s
        };
        format!(
            "{} ; {}",
            side(rule.left_lhs, &rule.left),
            side(rule.right_lhs, &rule.right)
        )
    }
}

impl fmt::Display for Scfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start: {}", self.nonterminals[self.start])?;
        for r in &self.rules {
            writeln!(f, "{}: {}", r.label, self.rule_to_string(r))?;
        }
        Ok(())
    }
}

/// A pair of terminal strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SentencePair {
    pub w1: Vec<String>,
    pub w2: Vec<String>,
}

impl SentencePair {
    pub fn new(w1: Vec<String>, w2: Vec<String>) -> Self {
        SentencePair { w1, w2 }
    }

    /// One terminal per character.
    pub fn from_chars(w1: &str, w2: &str) -> Self {
        let split = |w: &str| w.chars().map(|c| c.to_string()).collect();
        SentencePair {
            w1: split(w1),
            w2: split(w2),
        }
    }

    /// Tokenizes both strings against the grammar's terminal set.
    pub fn parse(g: &Scfg, w1: &str, w2: &str) -> Result<Self, GrammarError> {
        let names = |ids: Vec<usize>| {
            ids.into_iter()
                .map(|t| g.terminal_name(t).to_string())
                .collect()
        };
        Ok(SentencePair {
            w1: names(g.tokenize(w1)?),
            w2: names(g.tokenize(w2)?),
        })
    }

    pub fn total_len(&self) -> usize {
        self.w1.len() + self.w2.len()
    }
}

impl fmt::Display for SentencePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |w: &[String]| {
            if w.iter().all(|t| t.chars().count() == 1) {
                w.concat()
            } else {
                w.join(" ")
            }
        };
        write!(f, "[{}, {}]", join(&self.w1), join(&self.w2))
    }
}
