//! Peak distinct-state counts for the 614253 rule under the space-optimal
//! strategy and under left-to-right order.
//!
//! Each nonterminal owns a letter and derives independent lengths on the two
//! sides, so every open block end ranges over its letter's block.
//!
//! ```text
//! cargo run --release --example parser_scaling
//! ```

use scfg_linear::grammar::{parse_grammar, SentencePair};
use scfg_linear::parser::{compile_strategies, recognize, RuleStrategies};
use scfg_linear::strategy::Objective;

const GRAMMAR: &str = "\
s: S -> A[1] B[2] C[3] D[4] E[5] F[6] ; S -> F[6] A[1] D[4] B[2] E[5] C[3]
A -> a A[1] ; A -> A[1]
A -> A[1] ; A -> a A[1]
A -> a ; A -> a
B -> b B[1] ; B -> B[1]
B -> B[1] ; B -> b B[1]
B -> b ; B -> b
C -> c C[1] ; C -> C[1]
C -> C[1] ; C -> c C[1]
C -> c ; C -> c
D -> d D[1] ; D -> D[1]
D -> D[1] ; D -> d D[1]
D -> d ; D -> d
E -> e E[1] ; E -> E[1]
E -> E[1] ; E -> e E[1]
E -> e ; E -> e
F -> f F[1] ; F -> F[1]
F -> F[1] ; F -> f F[1]
F -> f ; F -> f
";

fn main() {
    let g = parse_grammar(GRAMMAR).expect("grammar");
    let opt = compile_strategies(&g, Objective::Space).expect("strategies");
    let ltr = RuleStrategies::left_to_right(&g);
    println!("strategy for s: {}", opt.get(0).expect("rank 6"));
    println!(
        "{:>3} {:>10} {:>12} {:>8}",
        "n", "optimal", "left-right", "ratio"
    );
    for m in 1..=4 {
        let block = |c: char| c.to_string().repeat(m);
        let w1: String = "abcdef".chars().map(block).collect();
        let w2: String = "fadbec".chars().map(block).collect();
        let p = SentencePair::from_chars(&w1, &w2);
        let (a, so) = recognize(&g, &opt, &p).expect("parse");
        let (b, sl) = recognize(&g, &ltr, &p).expect("parse");
        assert!(a && b);
        let (po, pl) = (so.peak_states("s"), sl.peak_states("s"));
        println!(
            "{:>3} {:>10} {:>12} {:>8.4}",
            6 * m,
            po,
            pl,
            po as f64 / pl as f64
        );
    }
}
