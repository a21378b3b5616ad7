use super::ReductionError;
use crate::multigraph::parse_edge_list;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Largest vertex count accepted by [`min_bisection_brute`].
pub const BISECTION_LIMIT: usize = 16;

/// A simple 3-regular graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicGraph {
    n: usize,
    adj: Vec<[usize; 3]>,
}

impl CubicGraph {
    /// Builds from 0-based edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, ReductionError> {
        if n < 2 || n % 2 == 1 {
            return Err(ReductionError::OddOrder(n));
        }
        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(ReductionError::NotCubic(format!(
                    "vertex {} out of range",
                    u.max(v) + 1
                )));
            }
            if u == v {
                return Err(ReductionError::NotCubic(format!(
                    "self-loop at vertex {}",
                    u + 1
                )));
            }
            if lists[u].contains(&v) {
                return Err(ReductionError::NotCubic(format!(
                    "repeated edge {} {}",
                    u + 1,
                    v + 1
                )));
            }
            lists[u].push(v);
            lists[v].push(u);
        }
        let adj = lists
            .into_iter()
            .enumerate()
            .map(|(v, mut l)| {
                l.sort_unstable();
                <[usize; 3]>::try_from(l.as_slice()).map_err(|_| {
                    ReductionError::NotCubic(format!("vertex {} has degree {}", v + 1, l.len()))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CubicGraph { n, adj })
    }

    pub fn complete_k4() -> Self {
        Self::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("K4 is cubic")
    }

    pub fn complete_bipartite_k33() -> Self {
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        Self::new(6, &edges).expect("K3,3 is cubic")
    }

    /// The 3-cube; vertex `v` is adjacent to `v xor 1`, `v xor 2`, `v xor 4`.
    pub fn cube_q3() -> Self {
        let edges: Vec<_> = (0..8usize)
            .flat_map(|v| [1, 2, 4].into_iter().map(move |b| (v, v ^ b)))
            .filter(|(u, v)| u < v)
            .collect();
        Self::new(8, &edges).expect("Q3 is cubic")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize; 3] {
        &self.adj[v]
    }

    /// Neighbours with smaller index, ascending.
    pub fn backward(&self, v: usize) -> Vec<usize> {
        self.adj[v].iter().copied().filter(|&u| u < v).collect()
    }

    /// Neighbours with larger index, ascending.
    pub fn forward(&self, v: usize) -> Vec<usize> {
        self.adj[v].iter().copied().filter(|&u| u > v).collect()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.forward(u).into_iter().map(move |v| (u, v)))
            .collect()
    }
}

impl FromStr for CubicGraph {
    type Err = ReductionError;

    /// Header `n m`, then `m` lines `u v` with 1-based vertices.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let g = parse_edge_list(s, false)?;
        let edges: Vec<_> = g.edges().into_iter().map(|(u, v, _)| (u, v)).collect();
        if g.edges().iter().any(|e| e.2 > 1) {
            return Err(ReductionError::NotCubic("repeated edge".into()));
        }
        Self::new(g.vertex_count(), &edges)
    }
}

impl fmt::Display for CubicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges = self.edges();
        writeln!(f, "{} {}", self.n, edges.len())?;
        for (u, v) in edges {
            writeln!(f, "{} {}", u + 1, v + 1)?;
        }
        Ok(())
    }
}

/// A split of the vertices into two halves of equal size (0-based, sorted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bisection {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
}

impl Bisection {
    pub fn new(n: usize, mut v1: Vec<usize>) -> Result<Self, ReductionError> {
        v1.sort_unstable();
        v1.dedup();
        if v1.len() * 2 != n || v1.iter().any(|&v| v >= n) {
            return Err(ReductionError::InvalidBisection(format!(
                "{:?} is not half of 1..={n}",
                v1.iter().map(|v| v + 1).collect::<Vec<_>>()
            )));
        }
        let v2 = (0..n).filter(|v| v1.binary_search(v).is_err()).collect();
        Ok(Bisection { v1, v2 })
    }

    /// Parses 1-based vertex names of the first half, separated by whitespace or commas.
    pub fn parse(n: usize, text: &str) -> Result<Self, ReductionError> {
        let v1 = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(ReductionError::InvalidBisection(format!(
                    "bad vertex {t:?}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, v1)
    }

    pub fn contains_first(&self, v: usize) -> bool {
        self.v1.binary_search(&v).is_ok()
    }

    pub fn cut(&self, g: &CubicGraph) -> usize {
        g.edges()
            .iter()
            .filter(|&&(u, v)| self.contains_first(u) != self.contains_first(v))
            .count()
    }
}

/// Minimum bisection by enumeration of the halves that contain vertex 0.
///
/// Halves are visited in lexicographic order and only strict improvements are
/// kept, so ties resolve to the lexicographically least first half.
pub fn min_bisection_brute(g: &CubicGraph) -> Result<(Bisection, usize), ReductionError> {
    let n = g.vertex_count();
    if n > BISECTION_LIMIT {
        return Err(ReductionError::SizeLimit(format!(
            "{n} vertices exceed the bisection limit {BISECTION_LIMIT}"
        )));
    }
    let half = n / 2;
    let mut comb: Vec<usize> = (0..half).collect();
    let mut best: Option<(Bisection, usize)> = None;
    loop {
        let b = Bisection::new(n, comb.clone())?;
        let c = b.cut(g);
        if best.as_ref().is_none_or(|(_, bc)| c < *bc) {
            best = Some((b, c));
        }
        // Next combination of size `half` from 1..n, keeping comb[0] = 0.
        let mut i = half;
        loop {
            if i == 1 {
                return Ok(best.expect("at least one bisection"));
            }
            i -= 1;
            if comb[i] < n - half + i {
                break;
            }
        }
        comb[i] += 1;
        for j in i + 1..half {
            comb[j] = comb[j - 1] + 1;
        }
    }
}
