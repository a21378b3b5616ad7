//! Permutation multigraphs, width profiles and exact cutwidth solvers.
//!
//! Vertices are 0-based internally; the text format and permutation-derived
//! graphs use 1-based names (`vertex v` in text is index `v - 1`).

mod cutwidth;
mod profile;

pub use cutwidth::{
    arrangement_value, brute_force_cutwidth, cutwidth_exact, cutwidth_exact_with_limit,
    extended_cutwidth_exact, extended_modified_cutwidth_exact, CutwidthResult, CutwidthVariant,
    BRUTE_FORCE_LIMIT, DEFAULT_DP_LIMIT,
};
pub use profile::{
    extended_modified_width_profile, extended_width_profile, modified_width_profile, width_profile,
};

use crate::strategy::{LinearStrategy, Permutation};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("permutation multigraphs need at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("arrangement of {arrangement} vertices does not fit a graph of {graph}")]
    ArrangementMismatch { arrangement: usize, graph: usize },
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("{n} vertices exceed the exact solver limit {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

/// An undirected multigraph with edge multiplicities and up to four endpoint markers.
#[derive(Debug, Clone)]
pub struct Multigraph {
    n: usize,
    adj: Vec<Vec<(usize, u32)>>,
    endpoints: Vec<usize>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph {
            n,
            adj: vec![Vec::new(); n],
            endpoints: Vec::new(),
        }
    }

    /// Adds `mult` parallel copies of the edge `u`–`v` (0-based).
    pub fn add_edge(&mut self, u: usize, v: usize, mult: u32) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    v: x + 1,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u + 1));
        }
        if mult == 0 {
            return Ok(());
        }
        for (a, b) in [(u, v), (v, u)] {
            match self.adj[a].iter_mut().find(|(w, _)| *w == b) {
                Some(e) => e.1 += mult,
                None => self.adj[a].push((b, mult)),
            }
        }
        Ok(())
    }

    pub fn set_endpoints(&mut self, endpoints: Vec<usize>) -> Result<(), GraphError> {
        if let Some(&v) = endpoints.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange {
                v: v + 1,
                n: self.n,
            });
        }
        self.endpoints = endpoints;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .flatten()
            .map(|&(_, m)| m as usize)
            .sum::<usize>()
            / 2
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, u32)] {
        &self.adj[v]
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.adj[u].iter().find(|(w, _)| *w == v).map_or(0, |e| e.1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn endpoints(&self) -> &[usize] {
        &self.endpoints
    }

    /// Distinct edges `(u, v, mult)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out: Vec<_> = (0..self.n)
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |(v, _)| u < *v)
                    .map(move |&(v, m)| (u, v, m))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The same graph with vertex `v` renamed to `n - 1 - v`.
    pub fn reversed_names(&self) -> Multigraph {
        let n = self.n;
        let mut g = Multigraph::new(n);
        for (u, v, m) in self.edges() {
            g.add_edge(n - 1 - u, n - 1 - v, m).expect("valid edge");
        }
        g.endpoints = self.endpoints.iter().map(|&v| n - 1 - v).collect();
        g
    }
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.endpoints == other.endpoints && self.edges() == other.edges()
    }
}

impl Eq for Multigraph {}

impl fmt::Display for Multigraph {
    /// Text form: `n m`, one `u v mult` line per distinct edge, then `E: ...` when endpoints exist.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges = self.edges();
        writeln!(f, "{} {}", self.n, edges.len())?;
        for (u, v, m) in edges {
            writeln!(f, "{} {} {}", u + 1, v + 1, m)?;
        }
        if !self.endpoints.is_empty() {
            let names: Vec<String> = self.endpoints.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(f, "E: {}", names.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Multigraph {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_edge_list(text, true)
    }
}

/// Parses the edge-list text form; `with_mult` selects `u v mult` or `u v` lines.
pub(crate) fn parse_edge_list(text: &str, with_mult: bool) -> Result<Multigraph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or(GraphError::Format {
        line: 1,
        msg: "missing header `n m`".into(),
    })?;
    let nums = parse_numbers(hl, header)?;
    let [n, m] = nums[..] else {
        return Err(GraphError::Format {
            line: hl,
            msg: "header must be `n m`".into(),
        });
    };
    let mut g = Multigraph::new(n);
    let mut seen = 0;
    for (ln, line) in lines {
        if let Some(rest) = line.strip_prefix("E:") {
            let ends = parse_numbers(ln, rest)?;
            if ends.len() != 4 {
                return Err(GraphError::Format {
                    line: ln,
                    msg: "endpoint line needs four vertices".into(),
                });
            }
            let ends = ends
                .iter()
                .map(|&v| check_vertex(v, n))
                .collect::<Result<Vec<_>, _>>()?;
            g.set_endpoints(ends)?;
            continue;
        }
        let nums = parse_numbers(ln, line)?;
        let (u, v, mult) = match (with_mult, &nums[..]) {
            (true, &[u, v, k]) if k == 1 || k == 2 => (u, v, k),
            (true, &[_, _, k]) => {
                return Err(GraphError::Format {
                    line: ln,
                    msg: format!("multiplicity {k} not in {{1,2}}"),
                })
            }
            (false, &[u, v]) => (u, v, 1),
            _ => {
                return Err(GraphError::Format {
                    line: ln,
                    msg: if with_mult {
                        "expected `u v mult`"
                    } else {
                        "expected `u v`"
                    }
                    .into(),
                })
            }
        };
        g.add_edge(check_vertex(u, n)?, check_vertex(v, n)?, mult as u32)?;
        seen += 1;
    }
    if seen != m {
        return Err(GraphError::Format {
            line: hl,
            msg: format!("header announces {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

fn check_vertex(v: usize, n: usize) -> Result<usize, GraphError> {
    if v == 0 || v > n {
        return Err(GraphError::VertexOutOfRange { v, n });
    }
    Ok(v - 1)
}

fn parse_numbers(line: usize, s: &str) -> Result<Vec<usize>, GraphError> {
    s.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| GraphError::Format {
                line,
                msg: format!("invalid integer {t:?}"),
            })
        })
        .collect()
}

/// Edges as vertex pairs.
pub type EdgeList = Vec<(usize, usize)>;

/// Union of a red and a green Hamiltonian path on `0..r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationMultigraph {
    graph: Multigraph,
    red: Vec<usize>,
    green: Vec<usize>,
}

impl PermutationMultigraph {
    /// Red path visits left positions in order; green path visits `p(1), ..., p(r)`.
    pub fn from_permutation(p: &Permutation) -> Result<Self, GraphError> {
        let r = p.len();
        if r < 2 {
            return Err(GraphError::TooSmall(r));
        }
        let red = (0..r).collect();
        let green = p.image().iter().map(|&i| i - 1).collect();
        Self::from_paths(red, green)
    }

    /// Builds from two vertex sequences, each visiting every vertex of `0..n` once.
    pub fn from_paths(red: Vec<usize>, green: Vec<usize>) -> Result<Self, GraphError> {
        let n = red.len();
        if n < 2 {
            return Err(GraphError::TooSmall(n));
        }
        for (name, path) in [("red", &red), ("green", &green)] {
            let mut seen = vec![false; n];
            if path.len() != n {
                return Err(GraphError::InvalidPath(format!(
                    "{name} path has {} vertices, expected {n}",
                    path.len()
                )));
            }
            for &v in path.iter() {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(GraphError::InvalidPath(format!(
                        "{name} path repeats or leaves range at {}",
                        v + 1
                    )));
                }
            }
        }
        let mut graph = Multigraph::new(n);
        for path in [&red, &green] {
            for w in path.windows(2) {
                graph.add_edge(w[0], w[1], 1)?;
            }
        }
        graph.set_endpoints(vec![red[0], red[n - 1], green[0], green[n - 1]])?;
        Ok(PermutationMultigraph { graph, red, green })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn red_path(&self) -> &[usize] {
        &self.red
    }

    pub fn green_path(&self) -> &[usize] {
        &self.green
    }

    /// Numbers vertices by red order and reads the green order as a permutation.
    pub fn permutation(&self) -> Permutation {
        let mut red_rank = vec![0; self.red.len()];
        for (k, &v) in self.red.iter().enumerate() {
            red_rank[v] = k;
        }
        let image: Vec<usize> = self.green.iter().map(|&v| red_rank[v]).collect();
        Permutation::from_zero_based(&image).expect("green path is a bijection")
    }

    /// Degree plus endpoint multiplicity, per vertex.
    pub fn degree_plus_endpoints(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.graph.n).map(|v| self.graph.degree(v)).collect();
        for &e in &self.graph.endpoints {
            d[e] += 1;
        }
        d
    }

    /// Red and green edges as `(u, v)` pairs with `u < v`, each list sorted.
    pub fn colored_edges(&self) -> (EdgeList, EdgeList) {
        let norm = |path: &[usize]| {
            let mut e: Vec<_> = path
                .windows(2)
                .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                .collect();
            e.sort_unstable();
            e
        };
        (norm(&self.red), norm(&self.green))
    }

    /// Multiset of distinct edges with multiplicity.
    pub fn edge_multiset(&self) -> BTreeMap<(usize, usize), u32> {
        self.graph
            .edges()
            .into_iter()
            .map(|(u, v, m)| ((u, v), m))
            .collect()
    }
}

/// A bijection from vertices to positions `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearArrangement {
    /// `order[p]` is the vertex at position `p`.
    order: Vec<usize>,
    #[serde(skip)]
    pos: Vec<usize>,
}

impl LinearArrangement {
    pub fn from_order(order: Vec<usize>) -> Result<Self, GraphError> {
        let n = order.len();
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(GraphError::NotBijection(format!(
                    "vertex {} misplaced",
                    v + 1
                )));
            }
            pos[v] = p;
        }
        Ok(LinearArrangement { order, pos })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_order((0..n).collect()).expect("identity")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn vertex_at(&self, p: usize) -> usize {
        self.order[p]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn reversed(&self) -> Self {
        let mut o = self.order.clone();
        o.reverse();
        Self::from_order(o).expect("reversal is a bijection")
    }

    /// 1-based vertex names in position order.
    pub fn one_based(&self) -> Vec<usize> {
        self.order.iter().map(|v| v + 1).collect()
    }
}

/// Places the multigraph vertex of left position `s.order(k)` at position `k`.
pub fn strategy_to_arrangement(s: &LinearStrategy) -> LinearArrangement {
    LinearArrangement::from_order((1..=s.len()).map(|k| s.order(k) - 1).collect())
        .expect("strategy is a bijection")
}

pub fn arrangement_to_strategy(a: &LinearArrangement) -> Result<LinearStrategy, GraphError> {
    LinearStrategy::new(a.one_based()).map_err(|e| GraphError::NotBijection(e.to_string()))
}
