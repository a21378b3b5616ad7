//! The permutation multigraph of 614253: width profiles of the identity
//! arrangement and the exact value of each cutwidth variant.
//!
//! ```text
//! cargo run --example permutation_cutwidth -- "6 1 4 2 5 3"
//! ```

use scfg_linear::multigraph::{
    cutwidth_exact_with_limit, extended_modified_width_profile, extended_width_profile,
    modified_width_profile, width_profile, CutwidthVariant, LinearArrangement,
    PermutationMultigraph, DEFAULT_DP_LIMIT,
};
use scfg_linear::strategy::Permutation;

fn main() {
    let p: Permutation = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "6 1 4 2 5 3".into())
        .parse()
        .expect("permutation");
    let pm = PermutationMultigraph::from_permutation(&p).expect("at least two vertices");
    let g = pm.graph();
    println!("{g}");
    let id = LinearArrangement::identity(p.len());
    println!("identity arrangement");
    println!("  wd    {:?}", width_profile(g, &id).unwrap());
    println!("  mwd   {:?}", modified_width_profile(g, &id).unwrap());
    println!("  ewd   {:?}", extended_width_profile(g, &id).unwrap());
    println!(
        "  emwd  {:?}",
        extended_modified_width_profile(g, &id).unwrap()
    );
    for v in [
        CutwidthVariant::Cw,
        CutwidthVariant::Mcw,
        CutwidthVariant::Ecw,
        CutwidthVariant::Emcw,
    ] {
        let r = cutwidth_exact_with_limit(g, v, DEFAULT_DP_LIMIT).expect("small graph");
        println!(
            "{v:?}: {} with arrangement {:?}",
            r.value,
            r.witness.one_based()
        );
    }
}
