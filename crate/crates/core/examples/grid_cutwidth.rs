//! Exact cutwidth of small grids and of the composed grid L-M-R.
//!
//! ```text
//! cargo run --release --example grid_cutwidth
//! ```

use scfg_linear::multigraph::{cutwidth_exact_with_limit, CutwidthVariant};
use scfg_linear::reduction::{build_composed_grid, build_grid};

fn main() {
    println!("  H x W   cw");
    for (h, w) in [(2, 2), (2, 5), (3, 3), (3, 6), (4, 4), (4, 5)] {
        let g = build_grid(h, w).expect("grid");
        let r = cutwidth_exact_with_limit(&g, CutwidthVariant::Cw, 25).expect("small grid");
        println!("  {h} x {w}   {}", r.value);
    }
    let c = build_composed_grid(3, 2, 2, 3).expect("composed grid");
    let r = cutwidth_exact_with_limit(&c.graph, CutwidthVariant::Cw, 25).expect("small");
    println!(
        "composed grid (L, R 3x2, M 2x3): {} vertices, {} edges, cw {}",
        c.graph.vertex_count(),
        c.graph.edge_count(),
        r.value
    );
}
