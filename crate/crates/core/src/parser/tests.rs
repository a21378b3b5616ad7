use super::*;
use crate::grammar::{
    count_derivations_oracle, enumerate_translations, pair_membership_oracle, parse_grammar,
};
use crate::strategy::{evaluate, Permutation};

const EXAMPLE: &str = "\
S -> A[1] B[2] ; S -> B[2] A[1]
A -> a A[1] b ; A -> b A[1] a
A -> a b ; A -> b a
B -> c B[1] d ; B -> d B[1] c
B -> c d ; B -> d c
";

const INTERLEAVED: &str = "\
S -> a A[1] b B[2] ; S -> B[2] c A[1] a
S -> a ; S -> c
A -> b S[1] ; A -> S[1] b
B -> b ; B -> b
";

fn pairs_up_to(alphabet: &[char], total: usize) -> Vec<SentencePair> {
    let mut words = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..total {
        frontier = frontier
            .iter()
            .flat_map(|w| alphabet.iter().map(move |c| format!("{w}{c}")))
            .collect();
        words.extend(frontier.iter().cloned());
    }
    let mut out = Vec::new();
    for a in &words {
        for b in &words {
            if a.len() + b.len() <= total {
                out.push(SentencePair::from_chars(a, b));
            }
        }
    }
    out
}

fn accepts(g: &Scfg, w1: &str, w2: &str) -> bool {
    let s = compile_strategies(g, Objective::Space).unwrap();
    recognize(g, &s, &SentencePair::from_chars(w1, w2))
        .unwrap()
        .0
}

#[test]
fn example_pairs() {
    let g = parse_grammar(EXAMPLE).unwrap();
    assert!(accepts(&g, "aabbcd", "dcbbaa"));
    assert!(accepts(&g, "abcd", "dcba"));
    assert!(!accepts(&g, "abcd", "abcd"));
    assert!(!accepts(&g, "ab", "ba"));
    let s = RuleStrategies::left_to_right(&g);
    assert_eq!(
        count_derivations(&g, &s, &SentencePair::from_chars("abcd", "dcba")).unwrap(),
        1
    );
    assert_eq!(
        count_derivations(&g, &s, &SentencePair::from_chars("ab", "ba")).unwrap(),
        0
    );
}

#[test]
fn ambiguous_count() {
    let g = parse_grammar(
        "S -> A[1] ; S -> A[1]\nS -> B[1] ; S -> B[1]\nA -> a ; A -> a\nB -> a ; B -> a\n",
    )
    .unwrap();
    let s = RuleStrategies::left_to_right(&g);
    let p = SentencePair::from_chars("a", "a");
    assert_eq!(count_derivations(&g, &s, &p).unwrap(), 2);
    assert_eq!(count_derivations_oracle(&g, &p).unwrap(), 2);
}

#[test]
fn unknown_symbol_and_unbounded() {
    let g = parse_grammar(EXAMPLE).unwrap();
    let s = RuleStrategies::left_to_right(&g);
    assert!(matches!(
        recognize(&g, &s, &SentencePair::from_chars("ax", "a")),
        Err(ParseError::Grammar(_))
    ));
    let cyc =
        parse_grammar("S -> A[1] ; S -> A[1]\nA -> S[1] ; A -> S[1]\nS -> a ; S -> a\n").unwrap();
    let s = RuleStrategies::left_to_right(&cyc);
    let p = SentencePair::from_chars("a", "a");
    assert!(recognize(&cyc, &s, &p).unwrap().0);
    assert!(matches!(
        count_derivations(&cyc, &s, &p),
        Err(ParseError::Unbounded)
    ));
}

#[test]
fn agrees_with_oracle() {
    for (src, alphabet, total) in [
        (EXAMPLE, &['a', 'b', 'c', 'd'][..], 6),
        (INTERLEAVED, &['a', 'b', 'c'][..], 5),
    ] {
        let g = parse_grammar(src).unwrap();
        let s = RuleStrategies::left_to_right(&g);
        let mut universe = pairs_up_to(alphabet, total);
        for m in enumerate_translations(&g, 5) {
            universe.push(m.clone());
            for i in 0..m.w1.len() {
                let mut q = m.clone();
                q.w1.remove(i);
                universe.push(q);
            }
            let mut q = m.clone();
            q.w2.reverse();
            universe.push(q);
        }
        let mut hits = 0;
        for p in universe {
            let want = pair_membership_oracle(&g, &p).unwrap();
            let out = parse(
                &g,
                &s,
                &p,
                ParseOptions {
                    count: true,
                    keep_states: false,
                },
            )
            .unwrap();
            assert_eq!(out.accepted, want, "{p}");
            assert_eq!(
                out.derivations.unwrap(),
                count_derivations_oracle(&g, &p).unwrap(),
                "{p}"
            );
            hits += want as usize;
        }
        assert!(hits > 0);
    }
}

#[test]
fn state_shape() {
    let g = parse_grammar(
        "S -> A[1] B[2] C[3] D[4] ; S -> C[3] A[1] D[4] B[2]\nA -> a ; A -> a\nB -> b ; B -> b\nC -> c ; C -> c\nD -> d ; D -> d\nA -> a A[1] ; A -> a A[1]\n",
    )
    .unwrap();
    let s = RuleStrategies::left_to_right(&g);
    let out = parse(
        &g,
        &s,
        &SentencePair::from_chars("aabcd", "caadb"),
        ParseOptions {
            count: false,
            keep_states: true,
        },
    )
    .unwrap();
    assert!(out.accepted);
    assert_eq!(out.stats.arity_violations, 0);
    let perm = Permutation::new(vec![3, 1, 4, 2]).unwrap();
    for st in &out.states {
        let rule = &g.rules()[st.rule];
        let p = rule.permutation().unwrap();
        let fo = fan_out_of(&p, s.get(st.rule).unwrap(), st.step);
        assert_eq!(st.boundary_count(), 2 * fo);
        for spans in [&st.spans1, &st.spans2] {
            assert!(spans.windows(2).all(|w| w[0].1 <= w[1].0));
            assert!(spans.iter().all(|s| s.0 <= s.1));
        }
    }
    assert_eq!(
        out.stats.peak_boundaries,
        2 * evaluate(&perm, &LinearStrategy::identity(4))
            .unwrap()
            .max_fo
    );
}

fn fan_out_of(p: &Permutation, s: &LinearStrategy, k: usize) -> usize {
    crate::strategy::fan_out(p, s, k).unwrap()
}

#[test]
fn rule_order_does_not_matter() {
    let g = parse_grammar(INTERLEAVED).unwrap();
    let rev = g.reordered(&[3, 2, 1, 0]);
    let p = SentencePair::from_chars("aababa", "abcbaa");
    let run = |g: &Scfg| {
        parse(
            g,
            &RuleStrategies::left_to_right(g),
            &p,
            ParseOptions::default(),
        )
        .unwrap()
        .items
    };
    assert_eq!(run(&g), run(&rev));
}

#[test]
fn strategies_for_figure_rule() {
    let g = parse_grammar(
        "s: S -> A[1] A[2] A[3] A[4] A[5] A[6] ; S -> A[6] A[1] A[4] A[2] A[5] A[3]\nA -> a ; A -> a\n",
    )
    .unwrap();
    let p = g.rules()[0].permutation().unwrap();
    let space = compile_strategies(&g, Objective::Space).unwrap();
    assert_eq!(evaluate(&p, space.get(0).unwrap()).unwrap().max_fo, 3);
    let time = compile_strategies(&g, Objective::Time).unwrap();
    assert_eq!(evaluate(&p, time.get(0).unwrap()).unwrap().max_t, 8);
    assert!(space.get(1).is_none());

    let ex = parse_grammar(EXAMPLE).unwrap();
    let s = compile_strategies(&ex, Objective::Space).unwrap();
    assert_eq!(s, RuleStrategies::left_to_right(&ex));

    let mut manual = space.clone();
    assert!(manual.set("s", LinearStrategy::identity(5)).is_err());
    assert!(manual.set("nope", LinearStrategy::identity(6)).is_err());
    manual.set("s", LinearStrategy::identity(6)).unwrap();
    assert_eq!(manual, RuleStrategies::left_to_right(&g));
}

#[test]
fn solver_limit() {
    let n = 17;
    let left: Vec<String> = (1..=n).map(|i| format!("A[{i}]")).collect();
    let right: Vec<String> = (1..=n).rev().map(|i| format!("A[{i}]")).collect();
    let src = format!(
        "big: S -> {} ; S -> {}\nA -> a ; A -> a\n",
        left.join(" "),
        right.join(" ")
    );
    let g = parse_grammar(&src).unwrap();
    assert!(matches!(
        compile_strategies(&g, Objective::Space),
        Err(ParseError::SolverLimit { r: 17, .. })
    ));
    let manual = vec![("big".to_string(), LinearStrategy::identity(n))];
    let s = compile_strategies_with(&g, Objective::Space, &manual).unwrap();
    let w: String = "a".repeat(n);
    assert!(
        recognize(&g, &s, &SentencePair::from_chars(&w, &w))
            .unwrap()
            .0
    );
}
