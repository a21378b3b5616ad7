//! Recognizes a sentence pair with space-optimal strategies and prints the
//! per-step state table.
//!
//! ```text
//! cargo run --example parse_pair -- aaabbbccdd ddccbbbaaa
//! ```

use scfg_linear::grammar::{parse_grammar, SentencePair};
use scfg_linear::parser::{compile_strategies, parse, ParseOptions};
use scfg_linear::strategy::Objective;

const EXAMPLE: &str = "\
S -> A[1] B[2] ; S -> B[2] A[1]
A -> a A[1] b ; A -> b A[1] a
A -> a b ; A -> b a
B -> c B[1] d ; B -> d B[1] c
B -> c d ; B -> d c
";

fn main() {
    let mut args = std::env::args().skip(1);
    let w1 = args.next().unwrap_or_else(|| "aaabbbccdd".into());
    let w2 = args.next().unwrap_or_else(|| "ddccbbbaaa".into());
    let g = parse_grammar(EXAMPLE).expect("grammar");
    let strategies = compile_strategies(&g, Objective::Space).expect("strategies");
    let p = SentencePair::parse(&g, &w1, &w2).expect("known terminals");
    let out = parse(
        &g,
        &strategies,
        &p,
        ParseOptions {
            count: true,
            keep_states: false,
        },
    )
    .expect("parse");
    println!(
        "{p}: accepted {}, derivations {}",
        out.accepted,
        out.derivations.unwrap_or(0)
    );
    println!("  rule  step  fan-out  states");
    for s in &out.stats.steps {
        println!(
            "  {:<5} {:<5} {:<8} {}",
            s.rule, s.step, s.fan_out, s.states
        );
    }
    println!(
        "{} items, {} combinations, peak {} boundaries",
        out.stats.items, out.stats.combinations, out.stats.peak_boundaries
    );
}
