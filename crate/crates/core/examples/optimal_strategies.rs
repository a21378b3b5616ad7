//! Space- and time-optimal strategies from branch-and-bound, checked
//! against brute force where that is affordable.
//!
//! ```text
//! cargo run --release --example optimal_strategies -- "2 4 1 3 6 8 5 7"
//! ```

use scfg_linear::strategy::{
    brute_force_optimize, optimize, Objective, Permutation, BRUTE_FORCE_LIMIT, DEFAULT_SIZE_LIMIT,
};

fn main() {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        vec![
            "6 1 4 2 5 3".into(),
            "2 4 1 3".into(),
            "3 6 1 8 4 2 7 5".into(),
        ]
    } else {
        inputs
    };
    for text in inputs {
        let p: Permutation = text.parse().expect("permutation");
        for obj in [Objective::Space, Objective::Time] {
            let best = optimize(&p, obj, DEFAULT_SIZE_LIMIT).expect("within limit");
            let check = if p.len() <= BRUTE_FORCE_LIMIT {
                let b = brute_force_optimize(&p, obj).expect("brute force");
                format!("brute force {}", b.value)
            } else {
                "brute force skipped".into()
            };
            println!(
                "{p:<20} {obj:?}: {} with {} ({} nodes; {check})",
                best.value, best.strategy, best.nodes
            );
        }
    }
}
