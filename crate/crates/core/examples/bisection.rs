//! Minimum bisections of small cubic graphs by exhaustive search.
//!
//! ```text
//! cargo run --example bisection -- graph.txt
//! ```

use scfg_linear::reduction::{min_bisection_brute, CubicGraph};

fn main() {
    let mut graphs = vec![
        ("K4", CubicGraph::complete_k4()),
        ("K3,3", CubicGraph::complete_bipartite_k33()),
        ("Q3", CubicGraph::cube_q3()),
    ];
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).expect("readable graph");
        graphs.push(("input", text.parse().expect("cubic graph")));
    }
    for (name, g) in graphs {
        let (b, cut) = min_bisection_brute(&g).expect("small graph");
        let one = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
        println!("{name:<5} cut {cut}: {:?} | {:?}", one(&b.v1), one(&b.v2));
    }
}
