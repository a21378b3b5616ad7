//! Decoding exponents with an m-gram language model next to the
//! synchronous step exponents.
//!
//! ```text
//! cargo run --example decoding -- 3
//! ```

use scfg_linear::strategy::{decoding_exponents, evaluate, LinearStrategy, Permutation};

fn main() {
    let m: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let p: Permutation = "6 1 4 2 5 3".parse().expect("permutation");
    for s in [
        LinearStrategy::identity(6),
        "4 5 2 3 1 6".parse().expect("strategy"),
    ] {
        let syn = evaluate(&p, &s).expect("sizes match");
        let bigram = decoding_exponents(&p, &s, 2).expect("m >= 2");
        let dec = decoding_exponents(&p, &s, m).expect("m >= 2");
        println!("sigma = {s}");
        println!("  synchronous t       {:?}", syn.t);
        println!("  decoding, m = 2     {:?}", bigram.time_exponents());
        println!("  decoding, m = {m}     {:?}", dec.time_exponents());
        println!(
            "  space exponent at m = {m}: {}, max time exponent {}\n",
            dec.space_exponent, dec.max_time_exponent
        );
    }
}
