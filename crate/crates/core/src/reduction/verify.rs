use super::gadget::{ComponentKind, EdgeKind, EdgeLocation, GadgetInstance, PathColor};
use super::ReductionError;
use crate::multigraph::Multigraph;
use crate::strategy::Permutation;
use bitvec::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

/// Red and green membership per edge id.
#[derive(Debug, Clone)]
pub struct EdgeColoring {
    pub red: BitVec,
    pub green: BitVec,
}

impl EdgeColoring {
    pub fn multiplicity(&self, e: u64) -> u32 {
        self.red[e as usize] as u32 + self.green[e as usize] as u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
    pub red_endpoints: Option<[String; 2]>,
    pub green_endpoints: Option<[String; 2]>,
    pub vertices: u64,
    pub edges: u64,
    pub doubled_edges: u64,
    pub faithful: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// First failed check as `name: detail (witness)`.
    pub fn first_failure(&self) -> Option<String> {
        self.checks
            .iter()
            .find(|c| !c.passed)
            .map(|c| match &c.witness {
                Some(w) => format!("{}: {} (witness {w})", c.name, c.detail),
                None => format!("{}: {}", c.name, c.detail),
            })
    }
}

struct WalkFailure {
    detail: String,
    witness: String,
}

/// Walks one path, marking its edges. Returns the endpoints.
fn walk(
    inst: &GadgetInstance,
    color: PathColor,
    bits: &mut BitVec,
) -> Result<(u32, u32), WalkFailure> {
    let n = inst.vertex_count() as usize;
    let mut visited = bitvec![0; n];
    let mut prev: Option<u32> = None;
    let mut first = None;
    let mut count = 0u64;
    for v in inst.path_vertices(color) {
        if visited.replace(v as usize, true) {
            return Err(WalkFailure {
                detail: format!("vertex visited twice at step {}", count + 1),
                witness: inst.node_name(v),
            });
        }
        if let Some(p) = prev {
            match inst.edge_id(p, v) {
                Some(e) => bits.set(e as usize, true),
                None => {
                    return Err(WalkFailure {
                        detail: format!(
                            "step {} uses a missing edge from {}",
                            count + 1,
                            inst.node_name(p)
                        ),
                        witness: inst.node_name(v),
                    })
                }
            }
        }
        first.get_or_insert(v);
        prev = Some(v);
        count += 1;
    }
    if count != inst.vertex_count() {
        let missing = visited.first_zero().unwrap_or(0) as u32;
        return Err(WalkFailure {
            detail: format!("path visits {count} of {} vertices", inst.vertex_count()),
            witness: inst.node_name(missing),
        });
    }
    Ok((first.expect("non-empty"), prev.expect("non-empty")))
}

fn empty_bits(inst: &GadgetInstance) -> BitVec {
    bitvec![0; inst.edge_id_bound() as usize]
}

/// Colors every edge by walking both paths; fails if either is not Hamiltonian.
pub fn edge_coloring(inst: &GadgetInstance) -> Result<EdgeColoring, ReductionError> {
    let mut red = empty_bits(inst);
    let mut green = empty_bits(inst);
    for (color, bits) in [(PathColor::Red, &mut red), (PathColor::Green, &mut green)] {
        walk(inst, color, bits).map_err(|f| {
            ReductionError::Unverified(
                format!("{color:?} path: {} at {}", f.detail, f.witness).to_lowercase(),
            )
        })?;
    }
    Ok(EdgeColoring { red, green })
}

/// Runs every structural check in one pass per path.
pub fn verify_gadget(inst: &GadgetInstance) -> VerificationReport {
    let mut checks = Vec::new();
    let mut red = empty_bits(inst);
    let mut green = empty_bits(inst);
    let mut ends = [None, None];
    for (slot, (color, bits, name)) in [
        (PathColor::Red, &mut red, "red_hamiltonian"),
        (PathColor::Green, &mut green, "green_hamiltonian"),
    ]
    .into_iter()
    .enumerate()
    {
        match walk(inst, color, bits) {
            Ok((a, b)) => {
                ends[slot] = Some([inst.node_name(a), inst.node_name(b)]);
                checks.push(CheckOutcome {
                    name,
                    passed: true,
                    detail: format!("simple path through all {} vertices", inst.vertex_count()),
                    witness: None,
                });
            }
            Err(f) => checks.push(CheckOutcome {
                name,
                passed: false,
                detail: f.detail,
                witness: Some(f.witness),
            }),
        }
    }
    checks.push(endpoint_check(inst, &ends));
    checks.push(sheaf_check(inst));
    checks.push(single_external_check(inst));

    let mut uncovered = None;
    let mut doubled = 0u64;
    let mut bad_double = None;
    for e in 0..inst.edge_id_bound() {
        if inst.is_removed(e) {
            continue;
        }
        let (r, g) = (red[e as usize], green[e as usize]);
        if !r && !g && uncovered.is_none() {
            uncovered = Some(e);
        }
        if r && g {
            doubled += 1;
            if bad_double.is_none() && !double_allowed(inst, e) {
                bad_double = Some(e);
            }
        }
    }
    let both_paths = checks[0].passed && checks[1].passed;
    checks.push(CheckOutcome {
        name: "edge_coverage",
        passed: both_paths && uncovered.is_none(),
        detail: match uncovered {
            Some(_) => "an edge lies on neither path".into(),
            None if both_paths => format!("all {} edges lie on a path", inst.edge_count()),
            None => "not checked: a path is broken".into(),
        },
        witness: uncovered.map(|e| inst.edge_name(e)),
    });
    checks.push(CheckOutcome {
        name: "doubled_pattern",
        passed: both_paths && bad_double.is_none(),
        detail: match bad_double {
            Some(_) => "an edge on both paths is not a border turn or connector crossing".into(),
            None => format!("{doubled} doubled edges, all on grid borders or connector crossings"),
        },
        witness: bad_double.map(|e| inst.edge_name(e)),
    });
    VerificationReport {
        checks,
        red_endpoints: ends[0].clone(),
        green_endpoints: ends[1].clone(),
        vertices: inst.vertex_count(),
        edges: inst.edge_count(),
        doubled_edges: doubled,
        faithful: inst.is_faithful(),
    }
}

fn endpoint_check(inst: &GadgetInstance, ends: &[Option<[String; 2]>; 2]) -> CheckOutcome {
    let l = &inst.components()[inst.l()];
    let (h, w) = (l.height, l.width);
    let want = [
        [format!("l^{{{h},1}}"), format!("r^{{1,{w}}}")],
        [String::from("l^{1,1}"), format!("r^{{{h},{w}}}")],
    ];
    let bad = (0..2).find(|&i| ends[i].as_ref() != Some(&want[i]));
    CheckOutcome {
        name: "path_endpoints",
        passed: bad.is_none(),
        detail: format!(
            "red {} to {}, green {} to {}",
            want[0][0], want[0][1], want[1][0], want[1][1]
        ),
        witness: bad.map(|i| match &ends[i] {
            Some([a, b]) => format!("{a} to {b}"),
            None => "path broken".into(),
        }),
    }
}

fn sheaf_check(inst: &GadgetInstance) -> CheckOutcome {
    let n = inst.source_vertices();
    let mut to_m = vec![0u32; n];
    let mut to_grids = vec![0u32; n];
    for (idx, x) in inst.external_edges().iter().enumerate() {
        if inst.is_removed(inst.grid_edge_count() + idx as u64) {
            continue;
        }
        let (a, b) = (inst.node(x.u).comp, inst.node(x.v).comp);
        for (p, q) in [(a, b), (b, a)] {
            if let ComponentKind::Vertex(i) = inst.components()[p].kind {
                if q == inst.m() {
                    to_m[i] += 1;
                } else if q < n {
                    to_grids[i] += 1;
                }
            }
        }
    }
    let s = inst.sheaf();
    let bad = (0..n).find(|&i| to_m[i] != s || to_grids[i] != 6);
    CheckOutcome {
        name: "sheaf_counts",
        passed: bad.is_none(),
        detail: format!("each vertex grid has {s} edges to M and 6 to other vertex grids"),
        witness: bad.map(|i| {
            format!(
                "G{} has {} edges to M and {} to vertex grids",
                i + 1,
                to_m[i],
                to_grids[i]
            )
        }),
    }
}

fn single_external_check(inst: &GadgetInstance) -> CheckOutcome {
    let mut seen: HashMap<u32, u32> = HashMap::new();
    for x in inst.external_edges() {
        *seen.entry(x.u).or_default() += 1;
        *seen.entry(x.v).or_default() += 1;
    }
    let mut bad: Vec<u32> = seen
        .iter()
        .filter(|(_, &c)| c > 1)
        .map(|(&v, _)| v)
        .collect();
    bad.sort_unstable();
    CheckOutcome {
        name: "one_external_edge",
        passed: bad.is_empty(),
        detail: "every vertex has at most one edge leaving its grid".into(),
        witness: bad.first().map(|&v| inst.node_name(v)),
    }
}

fn double_allowed(inst: &GadgetInstance, e: u64) -> bool {
    let c = inst.components();
    match inst.edge_location(e) {
        EdgeLocation::Vertical { comp, col, .. } => col == 1 || col == c[comp].width,
        EdgeLocation::Horizontal { comp, row, .. } => row == 1 || row == c[comp].height,
        EdgeLocation::External(i) => {
            let x = &inst.external_edges()[i];
            let hm = c[inst.m()].height;
            let row_m = [x.u, x.v]
                .iter()
                .map(|&v| inst.node(v))
                .find(|nd| nd.comp == inst.m())
                .map(|nd| nd.row);
            x.kind == EdgeKind::Connector && (row_m == Some(1) || row_m == Some(hm))
        }
    }
}

/// Position of every vertex along the red path.
pub fn red_ranks(inst: &GadgetInstance) -> Result<Vec<u32>, ReductionError> {
    edge_coloring(inst)?;
    let mut rank = vec![0u32; inst.vertex_count() as usize];
    for (k, v) in inst.path_vertices(PathColor::Red).enumerate() {
        rank[v as usize] = k as u32;
    }
    Ok(rank)
}

/// Numbers vertices by red order and reads the green order as a permutation.
pub fn gadget_to_permutation(inst: &GadgetInstance) -> Result<Permutation, ReductionError> {
    let rank = red_ranks(inst)?;
    let image: Vec<usize> = inst
        .path_vertices(PathColor::Green)
        .map(|v| rank[v as usize] as usize)
        .collect();
    Permutation::from_zero_based(&image).map_err(|e| ReductionError::Unverified(e.to_string()))
}

/// Largest scale for which [`gadget_multigraph`] materializes the graph.
pub const EXPLICIT_SCALE_LIMIT: u32 = 2;

/// The gadget as an explicit multigraph on its vertex ids, with path endpoints marked.
pub fn gadget_multigraph(inst: &GadgetInstance) -> Result<Multigraph, ReductionError> {
    if inst.scale() > EXPLICIT_SCALE_LIMIT {
        return Err(ReductionError::SizeLimit(format!(
            "explicit edge lists are only produced for scale <= {EXPLICIT_SCALE_LIMIT}"
        )));
    }
    let col = edge_coloring(inst)?;
    let mut g = Multigraph::new(inst.vertex_count() as usize);
    for e in 0..inst.edge_id_bound() {
        let m = col.multiplicity(e);
        if m > 0 {
            let (u, v) = inst.edge_endpoints(e);
            g.add_edge(u as usize, v as usize, m)?;
        }
    }
    let first_last = |c| {
        let mut it = inst.path_vertices(c);
        let a = it.next().expect("non-empty");
        (a, it.last().unwrap_or(a))
    };
    let (r0, r1) = first_last(PathColor::Red);
    let (g0, g1) = first_last(PathColor::Green);
    g.set_endpoints(vec![r0 as usize, r1 as usize, g0 as usize, g1 as usize])?;
    Ok(g)
}
