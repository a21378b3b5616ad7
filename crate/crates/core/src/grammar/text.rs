//! Line-oriented grammar files.
//!
//! ```text
//! # comment
//! start: S
//! s1: S -> A[1] B[2] ; S -> B[2] A[1]
//! A -> a A[1] b ; A -> b A[1] a
//! A -> 'x y' ; A -> x
//! ```
//!
//! Optional `nonterminals:` and `terminals:` headers declare the symbol sets;
//! when present, every symbol used must be declared.

use super::{GrammarError, Scfg, Symbol, SynchronousRule};
use std::collections::{HashMap, HashSet};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Arrow,
    Semi,
    Colon,
    Word(String),
    Indexed(String, usize),
    Quoted(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> GrammarError {
    GrammarError::Syntax {
        line,
        column,
        msg: msg.into(),
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn tokenize_line(line_no: usize, line: &str) -> Result<Vec<Spanned>, GrammarError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        match c {
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Spanned {
                    tok: Tok::Arrow,
                    col,
                });
                i += 2;
            }
            ';' => {
                out.push(Spanned {
                    tok: Tok::Semi,
                    col,
                });
                i += 1;
            }
            ':' => {
                out.push(Spanned {
                    tok: Tok::Colon,
                    col,
                });
                i += 1;
            }
            '\'' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(syntax(line_no, col, "unterminated quoted terminal")),
                        Some('\\') if chars.get(i + 1).is_some() => {
                            s.push(chars[i + 1]);
                            i += 2;
                        }
                        Some('\'') => {
                            i += 1;
                            break;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                if s.is_empty() {
                    return Err(syntax(line_no, col, "empty quoted terminal"));
                }
                out.push(Spanned {
                    tok: Tok::Quoted(s),
                    col,
                });
            }
            c if is_word_char(c) => {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if chars.get(i) == Some(&'[') {
                    let open = i + 1;
                    let close = chars[open..]
                        .iter()
                        .position(|&ch| ch == ']')
                        .map(|p| open + p)
                        .ok_or_else(|| syntax(line_no, i + 1, "missing `]`"))?;
                    let digits: String = chars[open..close].iter().collect();
                    let k: usize = digits.parse().ok().filter(|&k| k > 0).ok_or_else(|| {
                        syntax(
                            line_no,
                            open + 1,
                            format!("index must be a positive integer, got {digits:?}"),
                        )
                    })?;
                    out.push(Spanned {
                        tok: Tok::Indexed(word, k),
                        col,
                    });
                    i = close + 1;
                } else {
                    out.push(Spanned {
                        tok: Tok::Word(word),
                        col,
                    });
                }
            }
            other => {
                return Err(syntax(
                    line_no,
                    col,
                    format!("unexpected character {other:?}"),
                ))
            }
        }
    }
    Ok(out)
}

fn is_nonterminal_name(w: &str) -> bool {
    w.chars().next().is_some_and(|c| c.is_uppercase())
}

/// Renders a terminal so that it parses back to the same name.
pub(crate) fn terminal_literal(name: &str) -> String {
    if !name.is_empty() && !is_nonterminal_name(name) && name.chars().all(is_word_char) {
        name.to_string()
    } else {
        format!("'{}'", name.replace('\\', "\\\\").replace('\'', "\\'"))
    }
}

enum RawSym {
    T(String),
    N(String, usize),
}

struct RawRule {
    line: usize,
    label: String,
    left_lhs: String,
    right_lhs: String,
    left: Vec<RawSym>,
    right: Vec<RawSym>,
}

fn parse_side(
    line: usize,
    toks: &[Spanned],
    end_col: usize,
) -> Result<(String, Vec<RawSym>), GrammarError> {
    let (lhs, rest) = match toks {
        [Spanned {
            tok: Tok::Word(w),
            col,
        }, Spanned {
            tok: Tok::Arrow, ..
        }, rest @ ..] => {
            if !is_nonterminal_name(w) {
                return Err(syntax(
                    line,
                    *col,
                    format!("left-hand side {w:?} must start with an uppercase letter"),
                ));
            }
            (w.clone(), rest)
        }
        [first, ..] => return Err(syntax(line, first.col, "expected `Nonterminal ->`")),
        [] => return Err(syntax(line, end_col, "expected `Nonterminal ->`")),
    };
    let mut syms = Vec::new();
    for t in rest {
        match &t.tok {
            Tok::Word(w) if is_nonterminal_name(w) => {
                return Err(syntax(
                    line,
                    t.col,
                    format!("nonterminal {w} needs an index such as {w}[1]"),
                ))
            }
            Tok::Word(w) => syms.push(RawSym::T(w.clone())),
            Tok::Quoted(w) => syms.push(RawSym::T(w.clone())),
            Tok::Indexed(w, k) if is_nonterminal_name(w) => syms.push(RawSym::N(w.clone(), *k)),
            Tok::Indexed(w, _) => {
                return Err(syntax(
                    line,
                    t.col,
                    format!("terminal {w} cannot carry an index"),
                ))
            }
            other => return Err(syntax(line, t.col, format!("unexpected {other:?}"))),
        }
    }
    Ok((lhs, syms))
}

fn word_list(line: usize, toks: &[Spanned]) -> Result<Vec<String>, GrammarError> {
    toks.iter()
        .map(|t| match &t.tok {
            Tok::Word(w) | Tok::Quoted(w) => Ok(w.clone()),
            _ => Err(syntax(line, t.col, "expected a symbol name")),
        })
        .collect()
}

/// Parses a grammar document.
pub fn parse_grammar(text: &str) -> Result<Scfg, GrammarError> {
    let mut start: Option<(usize, String)> = None;
    let mut declared_nts: Option<Vec<String>> = None;
    let mut declared_ts: Option<Vec<String>> = None;
    let mut raw_rules = Vec::new();

    for (idx, line) in text.lines().enumerate() {
        let ln = idx + 1;
        let toks = tokenize_line(ln, line)?;
        if toks.is_empty() {
            continue;
        }
        let end_col = line.chars().count() + 1;
        let (label, body) = match &toks[..] {
            [Spanned {
                tok: Tok::Word(w),
                col,
            }, Spanned {
                tok: Tok::Colon, ..
            }, rest @ ..] => match w.as_str() {
                "start" => {
                    let names = word_list(ln, rest)?;
                    if names.len() != 1 {
                        return Err(syntax(ln, *col, "`start:` takes exactly one nonterminal"));
                    }
                    start = Some((ln, names[0].clone()));
                    continue;
                }
                "nonterminals" => {
                    declared_nts
                        .get_or_insert_with(Vec::new)
                        .extend(word_list(ln, rest)?);
                    continue;
                }
                "terminals" => {
                    declared_ts
                        .get_or_insert_with(Vec::new)
                        .extend(word_list(ln, rest)?);
                    continue;
                }
                _ => (Some(w.clone()), rest),
            },
            _ => (None, &toks[..]),
        };
        let semis: Vec<usize> = body
            .iter()
            .enumerate()
            .filter(|(_, t)| t.tok == Tok::Semi)
            .map(|(i, _)| i)
            .collect();
        if semis.len() != 1 {
            let col = semis
                .get(1)
                .map_or(body.first().map_or(1, |t| t.col), |&i| body[i].col);
            return Err(syntax(
                ln,
                col,
                "a rule needs exactly one `;` separating its two components",
            ));
        }
        let (l, r) = body.split_at(semis[0]);
        let semi_col = r[0].col;
        let (left_lhs, left) = parse_side(ln, l, semi_col)?;
        let (right_lhs, right) = parse_side(ln, &r[1..], end_col)?;
        raw_rules.push(RawRule {
            line: ln,
            label: label.unwrap_or_else(|| format!("s{}", raw_rules.len() + 1)),
            left_lhs,
            right_lhs,
            left,
            right,
        });
    }

    let mut b = Builder::default();
    if let Some(names) = &declared_nts {
        for n in names {
            b.nt(n);
        }
    }
    if let Some(names) = &declared_ts {
        for t in names {
            b.t(t);
        }
    }
    let nt_declared: Option<HashSet<&str>> = declared_nts
        .as_ref()
        .map(|v| v.iter().map(String::as_str).collect());
    let t_declared: Option<HashSet<&str>> = declared_ts
        .as_ref()
        .map(|v| v.iter().map(String::as_str).collect());
    let check_nt = |line: usize, name: &str| -> Result<(), GrammarError> {
        match &nt_declared {
            Some(set) if !set.contains(name) => Err(GrammarError::Undeclared {
                line,
                kind: "nonterminal",
                symbol: name.to_string(),
            }),
            _ => Ok(()),
        }
    };
    let check_t = |line: usize, name: &str| -> Result<(), GrammarError> {
        match &t_declared {
            Some(set) if !set.contains(name) => Err(GrammarError::Undeclared {
                line,
                kind: "terminal",
                symbol: name.to_string(),
            }),
            _ => Ok(()),
        }
    };

    let mut rules = Vec::with_capacity(raw_rules.len());
    let mut labels = HashSet::new();
    for raw in &raw_rules {
        if !labels.insert(raw.label.clone()) {
            return Err(GrammarError::DuplicateLabel(raw.label.clone()));
        }
        check_nt(raw.line, &raw.left_lhs)?;
        check_nt(raw.line, &raw.right_lhs)?;
        let mut convert = |syms: &[RawSym]| -> Result<Vec<Symbol>, GrammarError> {
            syms.iter()
                .map(|s| match s {
                    RawSym::T(name) => {
                        check_t(raw.line, name)?;
                        Ok(Symbol::Terminal(b.t(name)))
                    }
                    RawSym::N(name, k) => {
                        check_nt(raw.line, name)?;
                        Ok(Symbol::Nonterminal {
                            nt: b.nt(name),
                            index: *k,
                        })
                    }
                })
                .collect()
        };
        let left = convert(&raw.left)?;
        let right = convert(&raw.right)?;
        let ll = b.nt(&raw.left_lhs);
        let rl = b.nt(&raw.right_lhs);
        rules.push(SynchronousRule::new(
            raw.label.clone(),
            ll,
            rl,
            left,
            right,
        )?);
    }

    if let Some(clash) = b.nonterminals.iter().find(|n| b.t_ids.contains_key(*n)) {
        return Err(GrammarError::SymbolClash(clash.clone()));
    }
    let start_name = match (&start, raw_rules.first()) {
        (Some((ln, s)), _) => {
            check_nt(*ln, s)?;
            s.clone()
        }
        (None, Some(r)) => r.left_lhs.clone(),
        (None, None) => return Err(GrammarError::Empty),
    };
    let start = b
        .nt_ids
        .get(&start_name)
        .copied()
        .ok_or_else(|| GrammarError::UnknownStart(start_name.clone()))?;
    Ok(Scfg {
        nonterminals: b.nonterminals,
        terminals: b.terminals,
        nt_ids: b.nt_ids,
        t_ids: b.t_ids,
        start,
        rules,
    })
}

#[derive(Default)]
struct Builder {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    nt_ids: HashMap<String, usize>,
    t_ids: HashMap<String, usize>,
}

impl Builder {
    fn nt(&mut self, name: &str) -> usize {
        if let Some(&id) = self.nt_ids.get(name) {
            return id;
        }
        self.nonterminals.push(name.to_string());
        self.nt_ids
            .insert(name.to_string(), self.nonterminals.len() - 1);
        self.nonterminals.len() - 1
    }

    fn t(&mut self, name: &str) -> usize {
        if let Some(&id) = self.t_ids.get(name) {
            return id;
        }
        self.terminals.push(name.to_string());
        self.t_ids
            .insert(name.to_string(), self.terminals.len() - 1);
        self.terminals.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE_ONE: &str = "\
# a^p b^p c^q d^q paired with d^q c^q b^p a^p
s1: S -> A[1] B[2] ; S -> B[2] A[1]
s2: A -> a A[1] b ; A -> b A[1] a
s3: A -> a b ; A -> b a
s4: B -> c B[1] d ; B -> d B[1] c
s5: B -> c d ; B -> d c
";

    #[test]
    fn example_one() {
        let g = parse_grammar(EXAMPLE_ONE).unwrap();
        assert_eq!(g.rules().len(), 5);
        assert_eq!(g.nonterminal_name(g.start()), "S");
        assert_eq!(g.rules()[0].permutation().unwrap().image(), &[2, 1]);
        assert_eq!(g.rules()[0].label, "s1");
        assert_eq!(g.terminals().len(), 4);
        assert!(g.is_growing());
    }

    #[test]
    fn rank_zero_rule() {
        let g = parse_grammar("S -> a ; S -> a").unwrap();
        assert_eq!(g.rules().len(), 1);
        assert_eq!(g.rules()[0].rank(), 0);
        assert_eq!(g.rules()[0].label, "s1");
        assert!(matches!(
            g.rules()[0].permutation(),
            Err(GrammarError::NoPermutation(_))
        ));
    }

    #[test]
    fn duplicate_left_index() {
        assert!(matches!(
            parse_grammar("S -> A[1] A[1] ; S -> A[1]"),
            Err(GrammarError::DuplicateIndex {
                side: "left",
                index: 1,
                ..
            })
        ));
    }

    #[test]
    fn rule_614253() {
        let g = parse_grammar(
            "X -> X[1] X[2] X[3] X[4] X[5] X[6] ; X -> X[6] X[1] X[4] X[2] X[5] X[3]",
        )
        .unwrap();
        assert_eq!(
            g.rules()[0].permutation().unwrap().to_string(),
            "6 1 4 2 5 3"
        );
        let g = parse_grammar("X -> X[9] X[4] ; X -> X[9] X[4]").unwrap();
        assert!(g.rules()[0].permutation().unwrap().is_identity());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_grammar("S -> a\n") {
            Err(GrammarError::Syntax { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_grammar("\nS -> A ; S -> A[1]") {
            Err(GrammarError::Syntax {
                line: 2, column: 6, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_grammar("S -> A[0] ; S -> A[0]"),
            Err(GrammarError::Syntax { .. })
        ));
        assert!(matches!(
            parse_grammar("S -> 'ab ; S -> a"),
            Err(GrammarError::Syntax { .. })
        ));
        assert!(matches!(
            parse_grammar("S -> a[1] ; S -> a[1]"),
            Err(GrammarError::Syntax { .. })
        ));
    }

    #[test]
    fn declarations_are_enforced() {
        let text = "nonterminals: S\nterminals: a\nS -> a b ; S -> a";
        assert!(matches!(
            parse_grammar(text),
            Err(GrammarError::Undeclared {
                kind: "terminal",
                line: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_grammar("nonterminals: S\nS -> A[1] ; S -> A[1]"),
            Err(GrammarError::Undeclared {
                kind: "nonterminal",
                ..
            })
        ));
        assert!(matches!(
            parse_grammar("start: T\nS -> a ; S -> a"),
            Err(GrammarError::UnknownStart(_))
        ));
        assert!(matches!(
            parse_grammar("S -> 'S' ; S -> a"),
            Err(GrammarError::SymbolClash(_))
        ));
        assert!(matches!(
            parse_grammar("# nothing\n"),
            Err(GrammarError::Empty)
        ));
    }

    #[test]
    fn display_round_trips() {
        let g = parse_grammar("S -> 'x y' A[3] ; T -> A[3] z\nA -> a ; A -> a").unwrap();
        let back = parse_grammar(&g.to_string()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn start_header_and_labels() {
        let g = parse_grammar("start: B\nS -> a ; S -> a\nlbl: B -> b ; B -> b").unwrap();
        assert_eq!(g.nonterminal_name(g.start()), "B");
        assert_eq!(g.rules()[1].label, "lbl");
        assert!(matches!(
            parse_grammar("x: S -> a ; S -> a\nx: S -> b ; S -> b"),
            Err(GrammarError::DuplicateLabel(_))
        ));
    }
}
