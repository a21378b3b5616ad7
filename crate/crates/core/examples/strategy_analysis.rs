//! Boundary counts, fan-out and step exponents of two strategies for the
//! permutation 614253.
//!
//! ```text
//! cargo run --example strategy_analysis -- "6 1 4 2 5 3" "4 5 2 3 1 6"
//! ```

use scfg_linear::strategy::{evaluate, LinearStrategy, Permutation};

fn main() {
    let mut args = std::env::args().skip(1);
    let p: Permutation = args
        .next()
        .unwrap_or_else(|| "6 1 4 2 5 3".into())
        .parse()
        .expect("permutation");
    let others: Vec<String> = args.collect();
    let mut strategies = vec![LinearStrategy::identity(p.len())];
    if others.is_empty() {
        strategies.push("4 5 2 3 1 6".parse().expect("strategy"));
    }
    for s in &others {
        strategies.push(s.parse().expect("strategy"));
    }
    for s in &strategies {
        let rep = evaluate(&p, s).expect("sizes match");
        println!("pi = {p}, sigma = {s}");
        println!("  k   ib  eb  fo  delta  t");
        for k in 0..p.len() {
            println!(
                "  {:<3} {:<3} {:<3} {:<3} {:<6} {}",
                k + 1,
                rep.ib[k],
                rep.eb[k],
                rep.fo[k],
                rep.delta[k],
                rep.t[k]
            );
        }
        println!(
            "  max fan-out {}, space O(n^{}), time O(n^{})\n",
            rep.max_fo,
            rep.space_exponent(),
            rep.max_t
        );
    }
}
