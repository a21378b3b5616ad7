use super::profile::{
    extended_modified_width_profile, extended_width_profile, modified_width_profile, width_profile,
};
use super::{GraphError, LinearArrangement, Multigraph};
use crate::lexperm::for_each_permutation;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest vertex count accepted by the subset DP unless a limit is passed explicitly.
pub const DEFAULT_DP_LIMIT: usize = 20;
/// Largest vertex count accepted by [`brute_force_cutwidth`].
pub const BRUTE_FORCE_LIMIT: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CutwidthVariant {
    /// Edges crossing a gap.
    Cw,
    /// Edges crossing over a vertex.
    Mcw,
    /// Gap width plus endpoint markers at or before the gap.
    Ecw,
    /// Vertex width plus endpoint markers strictly before the vertex.
    Emcw,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutwidthResult {
    pub variant: CutwidthVariant,
    pub value: usize,
    pub witness: LinearArrangement,
    pub vertices: usize,
    pub edges: usize,
    /// Subsets (DP) or arrangements (brute force) evaluated.
    pub states: u64,
}

pub fn cutwidth_exact(g: &Multigraph) -> Result<CutwidthResult, GraphError> {
    cutwidth_exact_with_limit(g, CutwidthVariant::Cw, DEFAULT_DP_LIMIT)
}

pub fn extended_cutwidth_exact(g: &Multigraph) -> Result<CutwidthResult, GraphError> {
    cutwidth_exact_with_limit(g, CutwidthVariant::Ecw, DEFAULT_DP_LIMIT)
}

pub fn extended_modified_cutwidth_exact(g: &Multigraph) -> Result<CutwidthResult, GraphError> {
    cutwidth_exact_with_limit(g, CutwidthVariant::Emcw, DEFAULT_DP_LIMIT)
}

/// Subset DP over prefix sets.
///
/// Every variant's cost at a position depends only on the set of vertices
/// placed before it and the vertex placed there, so `best[T]` (the optimum
/// over orderings of `T` as a prefix) satisfies
/// `best[T] = min_{v in T} max(best[T - v], cost(T - v, v))`.
pub fn cutwidth_exact_with_limit(
    g: &Multigraph,
    variant: CutwidthVariant,
    limit: usize,
) -> Result<CutwidthResult, GraphError> {
    let n = g.vertex_count();
    if n > limit || n > 30 {
        return Err(GraphError::SizeLimit {
            n,
            limit: limit.min(30),
        });
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let size = 1usize << n;
    let deg: Vec<u32> = (0..n).map(|v| g.degree(v) as u32).collect();
    let mut marks = vec![0u32; n];
    for &e in g.endpoints() {
        marks[e] += 1;
    }
    let into = |set: u32, v: usize| -> u32 {
        g.neighbors(v)
            .iter()
            .filter(|(u, _)| set >> u & 1 == 1)
            .map(|&(_, m)| m)
            .sum()
    };

    let mut cut = vec![0u32; size];
    let mut ends = vec![0u32; size];
    for t in 1..size {
        let v = (t as u32).trailing_zeros() as usize;
        let rest = t & (t - 1);
        cut[t] = cut[rest] + deg[v] - 2 * into(rest as u32, v);
        ends[t] = ends[rest] + marks[v];
    }

    let step_cost = |before: u32, v: usize| -> u32 {
        let after = before | 1 << v;
        match variant {
            CutwidthVariant::Cw => cut[after as usize],
            CutwidthVariant::Ecw if after == full => 4,
            CutwidthVariant::Ecw => cut[after as usize] + ends[after as usize],
            CutwidthVariant::Mcw => cut[before as usize] - into(before, v),
            CutwidthVariant::Emcw => cut[before as usize] - into(before, v) + ends[before as usize],
        }
    };

    let mut best = vec![u32::MAX; size];
    best[0] = 0;
    for layer in 1..=n {
        let masks = masks_with_popcount(n, layer);
        let values: Vec<u32> = masks
            .par_iter()
            .map(|&t| {
                let mut b = u32::MAX;
                let mut rest = t;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let before = t & !(1 << v);
                    b = b.min(best[before as usize].max(step_cost(before, v)));
                }
                b
            })
            .collect();
        for (&t, &b) in masks.iter().zip(&values) {
            best[t as usize] = b;
        }
    }

    // Peel the lowest-index vertex that attains the optimum off the end.
    let mut order = Vec::with_capacity(n);
    let mut t = full;
    while t != 0 {
        let mut rest = t;
        let v = loop {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let before = t & !(1 << v);
            if best[before as usize].max(step_cost(before, v)) == best[t as usize] {
                break v;
            }
        };
        order.push(v);
        t &= !(1 << v);
    }
    order.reverse();
    Ok(CutwidthResult {
        variant,
        value: best[full as usize] as usize,
        witness: LinearArrangement::from_order(order)?,
        vertices: n,
        edges: g.edge_count(),
        states: size as u64,
    })
}

/// All `n`-bit masks with `k` bits set, in increasing order.
fn masks_with_popcount(n: usize, k: usize) -> Vec<u32> {
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut m: u64 = (1 << k) - 1;
    while m < 1 << n {
        out.push(m as u32);
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

/// Maximum of the variant's profile over one arrangement.
pub fn arrangement_value(
    g: &Multigraph,
    a: &LinearArrangement,
    variant: CutwidthVariant,
) -> Result<usize, GraphError> {
    let prof = match variant {
        CutwidthVariant::Cw => width_profile(g, a)?,
        CutwidthVariant::Mcw => modified_width_profile(g, a)?,
        CutwidthVariant::Ecw => extended_width_profile(g, a)?,
        CutwidthVariant::Emcw => extended_modified_width_profile(g, a)?,
    };
    Ok(prof.into_iter().max().unwrap_or(0))
}

/// Exhaustive scan over all `n!` arrangements, lexicographically least witness.
pub fn brute_force_cutwidth(
    g: &Multigraph,
    variant: CutwidthVariant,
) -> Result<CutwidthResult, GraphError> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(GraphError::SizeLimit {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut states = 0;
    let mut err = None;
    for_each_permutation(n, |order| {
        states += 1;
        let a = LinearArrangement::from_order(order.to_vec()).expect("permutation");
        match arrangement_value(g, &a, variant) {
            Ok(v) if best.as_ref().is_none_or(|(b, _)| v < *b) => best = Some((v, order.to_vec())),
            Ok(_) => {}
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let (value, order) = best.expect("at least one arrangement");
    Ok(CutwidthResult {
        variant,
        value,
        witness: LinearArrangement::from_order(order)?,
        vertices: n,
        edges: g.edge_count(),
        states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::PermutationMultigraph;

    fn pm(s: &str) -> Multigraph {
        PermutationMultigraph::from_permutation(&s.parse().unwrap())
            .unwrap()
            .graph()
            .clone()
    }

    #[test]
    fn figure_graph_values() {
        let g = pm("6 1 4 2 5 3");
        // The identity arrangement peaks at 6; the order 1 2 4 3 5 6 peaks at 5.
        assert_eq!(cutwidth_exact(&g).unwrap().value, 5);
        assert_eq!(
            brute_force_cutwidth(&g, CutwidthVariant::Cw).unwrap().value,
            5
        );
        let id = LinearArrangement::identity(6);
        assert_eq!(arrangement_value(&g, &id, CutwidthVariant::Cw).unwrap(), 6);
        assert_eq!(extended_cutwidth_exact(&g).unwrap().value, 6);
        assert_eq!(extended_modified_cutwidth_exact(&g).unwrap().value, 4);
    }

    #[test]
    fn doubled_path_values() {
        for r in 2..8 {
            let g = pm(&(1..=r).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
            assert_eq!(cutwidth_exact(&g).unwrap().value, 2);
        }
        let g = pm("1 2 3");
        assert_eq!(extended_cutwidth_exact(&g).unwrap().value, 4);
        assert_eq!(extended_modified_cutwidth_exact(&g).unwrap().value, 2);
        assert_eq!(
            brute_force_cutwidth(&g, CutwidthVariant::Emcw)
                .unwrap()
                .value,
            2
        );
    }

    #[test]
    fn witnesses_attain_value() {
        let g = pm("3 6 1 5 2 7 4");
        for variant in [
            CutwidthVariant::Cw,
            CutwidthVariant::Mcw,
            CutwidthVariant::Ecw,
            CutwidthVariant::Emcw,
        ] {
            let res = cutwidth_exact_with_limit(&g, variant, 20).unwrap();
            assert_eq!(
                arrangement_value(&g, &res.witness, variant).unwrap(),
                res.value
            );
            assert_eq!(
                brute_force_cutwidth(&g, variant).unwrap().value,
                res.value,
                "{variant:?}"
            );
        }
    }

    #[test]
    fn gosper_enumeration() {
        let m = masks_with_popcount(5, 2);
        assert_eq!(m.len(), 10);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert!(m.iter().all(|x| x.count_ones() == 2));
        assert_eq!(masks_with_popcount(4, 4), vec![15]);
    }

    #[test]
    fn limit_is_enforced() {
        let g = Multigraph::new(12);
        assert!(matches!(
            cutwidth_exact_with_limit(&g, CutwidthVariant::Cw, 10),
            Err(GraphError::SizeLimit { .. })
        ));
        assert!(matches!(
            brute_force_cutwidth(&g, CutwidthVariant::Cw),
            Err(GraphError::SizeLimit { .. })
        ));
    }
}
