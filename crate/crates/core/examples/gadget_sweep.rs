//! Builds the gadget for K4, verifies both paths, and sweeps the canonical
//! arrangement of each bisection.
//!
//! ```text
//! cargo run --release --example gadget_sweep -- 4
//! ```

use scfg_linear::reduction::{
    build_gadget, canonical_arrangement, sweep_max_width, verify_gadget, Bisection, CubicGraph,
};
use std::time::Instant;

fn main() {
    let scale: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let g = CubicGraph::complete_k4();
    let t0 = Instant::now();
    let inst = build_gadget(&g, 4, scale).expect("gadget");
    println!(
        "scale {scale}: {} vertices, k' = {}, faithful = {}",
        inst.vertex_count(),
        inst.k_prime(),
        inst.is_faithful()
    );

    let rep = verify_gadget(&inst);
    for c in &rep.checks {
        println!(
            "  {:<18} {}  {}",
            c.name,
            if c.passed { "ok  " } else { "FAIL" },
            c.detail
        );
    }
    println!("  red   {:?}", rep.red_endpoints);
    println!("  green {:?}", rep.green_endpoints);

    for v1 in [[0, 1], [0, 2], [0, 3]] {
        let b = Bisection::new(4, v1.to_vec()).expect("bisection");
        let arr = canonical_arrangement(&inst, &b).expect("arrangement");
        let sw = sweep_max_width(&inst, &arr).expect("sweep");
        println!(
            "bisection {:?} (cut {}): max width {} at {} in {}",
            b.v1.iter().map(|v| v + 1).collect::<Vec<_>>(),
            b.cut(&g),
            sw.max_width,
            sw.argmax_vertex,
            sw.argmax_component
        );
        for c in &sw.components {
            println!("    {:<3} {}", c.component, c.max_width);
        }
    }
    println!("{:.1?}", t0.elapsed());
}
