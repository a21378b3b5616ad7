//! Reads a grammar, lists its short translations and queries the
//! derivation oracles.
//!
//! ```text
//! cargo run --example grammar_oracle -- grammar.scfg
//! ```

use scfg_linear::grammar::{
    count_derivations_oracle, enumerate_translations, pair_membership_oracle, parse_grammar,
    SentencePair,
};

const EXAMPLE: &str = "\
start: S
s1: S -> A[1] B[2] ; S -> B[2] A[1]
s2: A -> a A[1] b ; A -> b A[1] a
s3: A -> a b ; A -> b a
s4: B -> c B[1] d ; B -> d B[1] c
s5: B -> c d ; B -> d c
";

fn main() {
    let src = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable grammar"),
        None => EXAMPLE.to_string(),
    };
    let g = parse_grammar(&src).expect("grammar");
    print!("{g}");
    println!(
        "growing: {}, finitely many derivations per pair: {}",
        g.is_growing(),
        g.has_finite_derivations()
    );
    println!("translations within 5 rule applications:");
    for p in enumerate_translations(&g, 5) {
        println!("  {p}");
    }
    for (w1, w2) in [("aabbcd", "dcbbaa"), ("abcd", "abcd")] {
        let p = SentencePair::parse(&g, w1, w2).expect("known terminals");
        println!(
            "{p}: member {:?}, derivations {:?}",
            pair_membership_oracle(&g, &p),
            count_derivations_oracle(&g, &p)
        );
    }
}
