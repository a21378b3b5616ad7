use super::{CubicGraph, ReductionError};
use serde::Serialize;
use std::collections::{HashMap, HashSet};

/// Grid-size exponent of the faithful construction.
pub const FAITHFUL_SCALE: u32 = 4;
/// Environment variable holding a memory cap in MiB for gadget construction.
pub const MEMORY_ENV: &str = "SCFG_LINEAR_MEMORY_MB";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    /// The grid of a source vertex (0-based).
    Vertex(usize),
    L,
    M,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub name: String,
    pub kind: ComponentKind,
    pub height: u32,
    pub width: u32,
    /// Id of the vertex in row 1, column 1.
    pub offset: u64,
}

impl Component {
    pub fn size(&self) -> u64 {
        self.height as u64 * self.width as u64
    }

    fn grid_edges(&self) -> u64 {
        let (h, w) = (self.height as u64, self.width as u64);
        h * (w - 1) + (h - 1) * w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Block1,
    Block2,
    Block3,
    Connector,
}

/// An edge between two components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExternalEdge {
    pub u: u32,
    pub v: u32,
    pub kind: EdgeKind,
    /// The source vertex whose block lists this edge.
    pub owner: Option<usize>,
}

/// A vertex as component plus 1-based row and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Node {
    pub comp: usize,
    pub row: u32,
    pub col: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeLocation {
    /// Between columns `col` and `col + 1` of `row`.
    Horizontal {
        comp: usize,
        row: u32,
        col: u32,
    },
    /// Between rows `row` and `row + 1` of `col`.
    Vertical {
        comp: usize,
        row: u32,
        col: u32,
    },
    External(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PathColor {
    Red,
    Green,
}

/// A straight piece of a path, endpoints inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Run {
    Row {
        comp: usize,
        row: u32,
        from: u32,
        to: u32,
    },
    Col {
        comp: usize,
        col: u32,
        from: u32,
        to: u32,
    },
}

impl Run {
    pub fn len(&self) -> u64 {
        let (Run::Row { from, to, .. } | Run::Col { from, to, .. }) = *self;
        from.abs_diff(to) as u64 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(self) -> impl Iterator<Item = Node> {
        let (Run::Row { from, to, .. } | Run::Col { from, to, .. }) = self;
        let len = from.abs_diff(to) + 1;
        (0..len).map(move |k| {
            let x = if from <= to { from + k } else { from - k };
            match self {
                Run::Row { comp, row, .. } => Node { comp, row, col: x },
                Run::Col { comp, col, .. } => Node { comp, row: x, col },
            }
        })
    }
}

/// Dimensions, counts and anchors of a gadget, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetManifest {
    pub source_vertices: usize,
    pub k: usize,
    pub scale: u32,
    pub faithful: bool,
    pub unit: u64,
    pub sheaf: u32,
    pub k_prime: u64,
    pub vertices: u64,
    pub grid_edges: u64,
    pub external_edges: usize,
    pub components: Vec<Component>,
    pub red_runs: usize,
    pub green_runs: usize,
}

/// The gadget of a cubic graph and a target bisection width `k`.
#[derive(Debug, Clone)]
pub struct GadgetInstance {
    source: CubicGraph,
    k: usize,
    scale: u32,
    unit: u64,
    sheaf: u32,
    components: Vec<Component>,
    vertex_count: u64,
    edge_offsets: Vec<(u64, u64)>,
    grid_edge_count: u64,
    external: Vec<ExternalEdge>,
    external_at: HashMap<(u32, u32), usize>,
    external_of: HashMap<u32, Vec<usize>>,
    red: Vec<Run>,
    green: Vec<Run>,
    removed: HashSet<u64>,
    k_prime: u64,
}

/// Builds with the memory cap read from [`MEMORY_ENV`], if set.
pub fn build_gadget(
    g: &CubicGraph,
    k: usize,
    scale: u32,
) -> Result<GadgetInstance, ReductionError> {
    let cap = std::env::var(MEMORY_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok());
    build_gadget_with_cap(g, k, scale, cap)
}

pub fn build_gadget_with_cap(
    g: &CubicGraph,
    k: usize,
    scale: u32,
    cap_mb: Option<u64>,
) -> Result<GadgetInstance, ReductionError> {
    if !(1..=FAITHFUL_SCALE).contains(&scale) {
        return Err(ReductionError::ScaleOutOfRange(scale));
    }
    if k == 0 {
        return Err(ReductionError::InvalidParameter(
            "k must be positive".into(),
        ));
    }
    let n = g.vertex_count() as u64;
    let unit = n
        .checked_pow(scale)
        .ok_or_else(|| ReductionError::SizeLimit(format!("{n}^{scale} overflows")))?;
    let sheaf = 4 * n * n;
    let faithful = scale == FAITHFUL_SCALE;
    let hg = 2 * unit + 1;
    let wg = if faithful {
        6 * unit
    } else {
        (6 * unit).max(sheaf + 4)
    };
    let (hl, wl) = (3 * unit + 1, 12 * unit);
    let hm = 2 * unit + 1;
    let wm = if faithful {
        8 * unit + 1
    } else {
        (8 * unit + 1).max(n * sheaf + 3)
    };
    // Block columns must fit: G_i needs sheaf + 4 columns, M needs n * sheaf + 3.
    if wg < sheaf + 4 || wm < n * sheaf + 3 {
        return Err(ReductionError::InvalidParameter(format!(
            "grids too narrow for n = {n}"
        )));
    }
    let vertex_count = n * hg * wg + 2 * hl * wl + hm * wm;
    if vertex_count > u32::MAX as u64 {
        return Err(ReductionError::SizeLimit(format!(
            "{vertex_count} vertices do not fit 32-bit ids"
        )));
    }
    // Visited bits plus two color bits per grid edge (about two per vertex).
    let needed = vertex_count / 8 + vertex_count * 4 / 8 + (1 << 20);
    if let Some(cap) = cap_mb {
        let needed_mb = needed.div_ceil(1 << 20);
        if needed_mb > cap {
            return Err(ReductionError::MemoryCap {
                needed_mb,
                cap_mb: cap,
            });
        }
    }

    let as32 = |x: u64| x as u32;
    let mut components = Vec::with_capacity(n as usize + 3);
    let mut offset = 0u64;
    let mut push = |name: String, kind, h: u64, w: u64| {
        components.push(Component {
            name,
            kind,
            height: as32(h),
            width: as32(w),
            offset,
        });
        offset += h * w;
    };
    for i in 0..n as usize {
        push(format!("G{}", i + 1), ComponentKind::Vertex(i), hg, wg);
    }
    push("L".into(), ComponentKind::L, hl, wl);
    push("M".into(), ComponentKind::M, hm, wm);
    push("R".into(), ComponentKind::R, hl, wl);
    let mut edge_offsets = Vec::with_capacity(components.len());
    let mut e = 0u64;
    for c in &components {
        let (h, w) = (c.height as u64, c.width as u64);
        edge_offsets.push((e, e + h * (w - 1)));
        e += c.grid_edges();
    }

    let mut inst = GadgetInstance {
        source: g.clone(),
        k,
        scale,
        unit,
        sheaf: as32(sheaf),
        components,
        vertex_count,
        edge_offsets,
        grid_edge_count: e,
        external: Vec::new(),
        external_at: HashMap::new(),
        external_of: HashMap::new(),
        red: Vec::new(),
        green: Vec::new(),
        removed: HashSet::new(),
        k_prime: 3 * unit + 2 + (n / 2) * sheaf + 2 * k as u64,
    };
    inst.add_external_edges();
    inst.red = inst.red_runs_build();
    inst.green = inst.green_runs_build();
    Ok(inst)
}

impl GadgetInstance {
    pub fn source(&self) -> &CubicGraph {
        &self.source
    }

    pub fn source_vertices(&self) -> usize {
        self.source.vertex_count()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_faithful(&self) -> bool {
        self.scale == FAITHFUL_SCALE
    }

    /// `n^t`.
    pub fn unit(&self) -> u64 {
        self.unit
    }

    /// Edges between each vertex grid and `M`: `4n^2`.
    pub fn sheaf(&self) -> u32 {
        self.sheaf
    }

    pub fn k_prime(&self) -> u64 {
        self.k_prime
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertex_count
    }

    pub fn grid_edge_count(&self) -> u64 {
        self.grid_edge_count
    }

    /// Distinct edges, after any removals.
    pub fn edge_count(&self) -> u64 {
        self.grid_edge_count + self.external.len() as u64 - self.removed.len() as u64
    }

    /// Size of the edge id space, including removed edges.
    pub fn edge_id_bound(&self) -> u64 {
        self.grid_edge_count + self.external.len() as u64
    }

    pub fn external_edges(&self) -> &[ExternalEdge] {
        &self.external
    }

    pub fn runs(&self, color: PathColor) -> &[Run] {
        match color {
            PathColor::Red => &self.red,
            PathColor::Green => &self.green,
        }
    }

    pub fn l(&self) -> usize {
        self.source.vertex_count()
    }

    pub fn m(&self) -> usize {
        self.source.vertex_count() + 1
    }

    pub fn r(&self) -> usize {
        self.source.vertex_count() + 2
    }

    pub fn manifest(&self) -> GadgetManifest {
        GadgetManifest {
            source_vertices: self.source_vertices(),
            k: self.k,
            scale: self.scale,
            faithful: self.is_faithful(),
            unit: self.unit,
            sheaf: self.sheaf,
            k_prime: self.k_prime,
            vertices: self.vertex_count,
            grid_edges: self.grid_edge_count,
            external_edges: self.external.len(),
            components: self.components.clone(),
            red_runs: self.red.len(),
            green_runs: self.green.len(),
        }
    }

    pub fn vertex(&self, comp: usize, row: u32, col: u32) -> u32 {
        let c = &self.components[comp];
        debug_assert!((1..=c.height).contains(&row) && (1..=c.width).contains(&col));
        (c.offset + (row as u64 - 1) * c.width as u64 + (col as u64 - 1)) as u32
    }

    pub fn node(&self, v: u32) -> Node {
        let v = v as u64;
        let comp = self.components.partition_point(|c| c.offset <= v) - 1;
        let c = &self.components[comp];
        let q = v - c.offset;
        Node {
            comp,
            row: (q / c.width as u64) as u32 + 1,
            col: (q % c.width as u64) as u32 + 1,
        }
    }

    pub fn node_name(&self, v: u32) -> String {
        let nd = self.node(v);
        let prefix = match self.components[nd.comp].kind {
            ComponentKind::Vertex(i) => format!("g{}", i + 1),
            ComponentKind::L => "l".into(),
            ComponentKind::M => "m".into(),
            ComponentKind::R => "r".into(),
        };
        format!("{prefix}^{{{},{}}}", nd.row, nd.col)
    }

    pub fn edge_location(&self, e: u64) -> EdgeLocation {
        if e >= self.grid_edge_count {
            return EdgeLocation::External((e - self.grid_edge_count) as usize);
        }
        let comp = self.edge_offsets.partition_point(|&(h, _)| h <= e) - 1;
        let (hoff, voff) = self.edge_offsets[comp];
        let w = self.components[comp].width as u64;
        if e < voff {
            let q = e - hoff;
            EdgeLocation::Horizontal {
                comp,
                row: (q / (w - 1)) as u32 + 1,
                col: (q % (w - 1)) as u32 + 1,
            }
        } else {
            let q = e - voff;
            EdgeLocation::Vertical {
                comp,
                row: (q / w) as u32 + 1,
                col: (q % w) as u32 + 1,
            }
        }
    }

    pub fn edge_endpoints(&self, e: u64) -> (u32, u32) {
        match self.edge_location(e) {
            EdgeLocation::Horizontal { comp, row, col } => {
                (self.vertex(comp, row, col), self.vertex(comp, row, col + 1))
            }
            EdgeLocation::Vertical { comp, row, col } => {
                (self.vertex(comp, row, col), self.vertex(comp, row + 1, col))
            }
            EdgeLocation::External(i) => (self.external[i].u, self.external[i].v),
        }
    }

    pub fn edge_name(&self, e: u64) -> String {
        let (u, v) = self.edge_endpoints(e);
        format!("({}, {})", self.node_name(u), self.node_name(v))
    }

    fn grid_edge(&self, a: Node, b: Node) -> Option<u64> {
        if a.comp != b.comp {
            return None;
        }
        let (hoff, voff) = self.edge_offsets[a.comp];
        let w = self.components[a.comp].width as u64;
        if a.row == b.row && a.col.abs_diff(b.col) == 1 {
            let c = a.col.min(b.col) as u64;
            Some(hoff + (a.row as u64 - 1) * (w - 1) + (c - 1))
        } else if a.col == b.col && a.row.abs_diff(b.row) == 1 {
            let r = a.row.min(b.row) as u64;
            Some(voff + (r - 1) * w + (a.col as u64 - 1))
        } else {
            None
        }
    }

    /// The id of edge `{u, v}`, if present and not removed.
    pub fn edge_id(&self, u: u32, v: u32) -> Option<u64> {
        let e = match self.grid_edge(self.node(u), self.node(v)) {
            Some(e) => e,
            None => self.grid_edge_count + *self.external_at.get(&(u.min(v), u.max(v)))? as u64,
        };
        (!self.removed.contains(&e)).then_some(e)
    }

    /// Calls `f(neighbour, edge id)` for every present edge at `v`.
    pub fn for_each_edge(&self, v: u32, mut f: impl FnMut(u32, u64)) {
        let nd = self.node(v);
        let c = &self.components[nd.comp];
        let mut visit = |row: u32, col: u32| {
            let u = self.vertex(nd.comp, row, col);
            let e = self
                .grid_edge(
                    nd,
                    Node {
                        comp: nd.comp,
                        row,
                        col,
                    },
                )
                .expect("adjacent");
            if !self.removed.contains(&e) {
                f(u, e);
            }
        };
        if nd.row > 1 {
            visit(nd.row - 1, nd.col);
        }
        if nd.row < c.height {
            visit(nd.row + 1, nd.col);
        }
        if nd.col > 1 {
            visit(nd.row, nd.col - 1);
        }
        if nd.col < c.width {
            visit(nd.row, nd.col + 1);
        }
        if nd.row == 1 || nd.row == c.height || nd.col == 1 || nd.col == c.width {
            if let Some(list) = self.external_of.get(&v) {
                for &i in list {
                    let e = self.grid_edge_count + i as u64;
                    if !self.removed.contains(&e) {
                        let x = &self.external[i];
                        f(if x.u == v { x.v } else { x.u }, e);
                    }
                }
            }
        }
    }

    /// Deletes one edge, for fault injection.
    pub fn remove_edge(&mut self, u: u32, v: u32) -> Result<(), ReductionError> {
        let e = self
            .edge_id(u, v)
            .ok_or_else(|| ReductionError::InvalidParameter(format!("no edge {u} {v}")))?;
        self.removed.insert(e);
        Ok(())
    }

    pub fn is_removed(&self, e: u64) -> bool {
        self.removed.contains(&e)
    }

    /// Vertex ids along a path.
    pub fn path_vertices(&self, color: PathColor) -> impl Iterator<Item = u32> + '_ {
        self.runs(color)
            .iter()
            .flat_map(|run| run.nodes())
            .map(|nd| self.vertex(nd.comp, nd.row, nd.col))
    }

    fn add_ext(&mut self, u: u32, v: u32, kind: EdgeKind, owner: Option<usize>) {
        let i = self.external.len();
        let prev = self.external_at.insert((u.min(v), u.max(v)), i);
        debug_assert!(prev.is_none(), "repeated external edge");
        self.external.push(ExternalEdge { u, v, kind, owner });
        self.external_of.entry(u).or_default().push(i);
        self.external_of.entry(v).or_default().push(i);
    }

    /// Column of `M` where the block of source vertex `i` (0-based) starts, minus one.
    fn sigma(&self, i: usize) -> u32 {
        self.sheaf * i as u32 + 1
    }

    fn backward_below(&self, j: usize, i: usize) -> u32 {
        self.source.backward(j).iter().filter(|&&b| b < i).count() as u32
    }

    fn add_external_edges(&mut self) {
        let n = self.source_vertices();
        let (m, s) = (self.m(), self.sheaf);
        let hg = self.components[0].height;
        let wg = self.components[0].width;
        for i in 0..n {
            let fwd = self.source.forward(i);
            let d_gt = fwd.len() as u32;
            let d_lt = self.source.backward(i).len() as u32;
            let sig = self.sigma(i);
            for h in 1..=(s / 2 - 2 - d_gt) {
                let alpha = sig + 2 * h - 1;
                let e1 = (self.vertex(m, 1, alpha), self.vertex(i, hg, 2 * h - 1));
                let e2 = (self.vertex(i, hg, 2 * h), self.vertex(m, 1, alpha + 1));
                self.add_ext(e1.0, e1.1, EdgeKind::Block1, Some(i));
                self.add_ext(e2.0, e2.1, EdgeKind::Block1, Some(i));
            }
            for (h, &j) in (1..).zip(&fwd) {
                let beta = sig + s - 4 - 2 * d_gt + 2 * h - 1;
                let gamma = s - 4 - 2 * d_gt + 2 * h - 1;
                let gamma2 = s - 3 + 2 * self.backward_below(j, i);
                let es = [
                    (self.vertex(m, 1, beta), self.vertex(i, hg, gamma)),
                    (self.vertex(i, 1, gamma), self.vertex(j, hg, gamma2)),
                    (self.vertex(j, hg, gamma2 + 1), self.vertex(i, 1, gamma + 1)),
                    (self.vertex(i, hg, gamma + 1), self.vertex(m, 1, beta + 1)),
                ];
                for (u, v) in es {
                    self.add_ext(u, v, EdgeKind::Block2, Some(i));
                }
            }
            let next = self.sigma(i + 1);
            let c0 = s - 3 + 2 * d_lt;
            let es = [
                (self.vertex(m, 1, next - 3), self.vertex(i, 1, c0)),
                (self.vertex(i, 1, wg), self.vertex(m, 1, next - 2)),
                (self.vertex(m, 1, next - 1), self.vertex(i, 1, 1)),
                (self.vertex(i, hg, wg), self.vertex(m, 1, next)),
            ];
            for (u, v) in es {
                self.add_ext(u, v, EdgeKind::Block3, Some(i));
            }
        }
        let (l, r) = (self.l(), self.r());
        let wl = self.components[l].width;
        let (hm, wm) = (self.components[m].height, self.components[m].width);
        let shift = self.components[l].height - hm;
        for h in 1..=hm {
            let a = (self.vertex(l, h, wl), self.vertex(m, h, 1));
            let b = (self.vertex(m, h, wm), self.vertex(r, shift + h, 1));
            self.add_ext(a.0, a.1, EdgeKind::Connector, None);
            self.add_ext(b.0, b.1, EdgeKind::Connector, None);
        }
    }

    /// Red path: rows, bottom of `L` first, detouring through each vertex grid
    /// from row 1 of `M`, and ending in the top rows of `R`.
    fn red_runs_build(&self) -> Vec<Run> {
        let n = self.source_vertices();
        let (l, m, r) = (self.l(), self.m(), self.r());
        let (hl, wl) = (self.components[l].height, self.components[l].width);
        let (hm, wm) = (self.components[m].height, self.components[m].width);
        let (hg, wg) = (self.components[0].height, self.components[0].width);
        let u = self.unit as u32;
        let row = |comp, row, forward: bool, w: u32| Run::Row {
            comp,
            row,
            from: if forward { 1 } else { w },
            to: if forward { w } else { 1 },
        };
        let mut runs = Vec::new();
        for j in 0..u {
            runs.push(row(l, hl - j, j % 2 == 0, wl));
        }
        for h in (2..=hm).rev() {
            if (hm - h) % 2 == 0 {
                runs.extend([
                    row(l, h, true, wl),
                    row(m, h, true, wm),
                    row(r, u + h, true, wl),
                ]);
            } else {
                runs.extend([
                    row(r, u + h, false, wl),
                    row(m, h, false, wm),
                    row(l, h, false, wl),
                ]);
            }
        }
        runs.push(row(l, 1, true, wl));
        let mut col = 1;
        for i in 0..n {
            let next = self.sigma(i + 1);
            runs.push(Run::Row {
                comp: m,
                row: 1,
                from: col,
                to: next - 1,
            });
            for h in 1..=hg {
                runs.push(row(i, h, h % 2 == 1, wg));
            }
            col = next;
        }
        runs.push(Run::Row {
            comp: m,
            row: 1,
            from: col,
            to: wm,
        });
        for j in 0..=u {
            runs.push(row(r, u + 1 - j, j % 2 == 0, wl));
        }
        runs
    }

    /// Green path: columns of `L`, then `M` with excursions into the vertex
    /// grids in three blocks per vertex, then columns of `R`.
    fn green_runs_build(&self) -> Vec<Run> {
        let n = self.source_vertices();
        let (l, m, r) = (self.l(), self.m(), self.r());
        let (hl, wl) = (self.components[l].height, self.components[l].width);
        let (hm, wm) = (self.components[m].height, self.components[m].width);
        let (hg, wg) = (self.components[0].height, self.components[0].width);
        let s = self.sheaf;
        let down = |comp, col, h| Run::Col {
            comp,
            col,
            from: 1,
            to: h,
        };
        let up = |comp, col, h| Run::Col {
            comp,
            col,
            from: h,
            to: 1,
        };
        let mut runs = Vec::new();
        for c in 1..=wl {
            runs.push(if c % 2 == 1 {
                down(l, c, hl)
            } else {
                up(l, c, hl)
            });
        }
        runs.push(down(m, 1, hm));
        for i in 0..n {
            let fwd = self.source.forward(i);
            let d_gt = fwd.len() as u32;
            let d_lt = self.source.backward(i).len() as u32;
            let sig = self.sigma(i);
            for h in 1..=(s / 2 - 2 - d_gt) {
                let alpha = sig + 2 * h - 1;
                runs.extend([
                    up(m, alpha, hm),
                    up(i, 2 * h - 1, hg),
                    down(i, 2 * h, hg),
                    down(m, alpha + 1, hm),
                ]);
            }
            for (h, &j) in (1..).zip(&fwd) {
                let beta = sig + s - 4 - 2 * d_gt + 2 * h - 1;
                let gamma = s - 4 - 2 * d_gt + 2 * h - 1;
                let gamma2 = s - 3 + 2 * self.backward_below(j, i);
                runs.extend([
                    up(m, beta, hm),
                    up(i, gamma, hg),
                    up(j, gamma2, hg),
                    down(j, gamma2 + 1, hg),
                    down(i, gamma + 1, hg),
                    down(m, beta + 1, hm),
                ]);
            }
            let next = self.sigma(i + 1);
            runs.push(up(m, next - 3, hm));
            for (k, c) in (s - 3 + 2 * d_lt..=wg).enumerate() {
                runs.push(if k % 2 == 0 {
                    down(i, c, hg)
                } else {
                    up(i, c, hg)
                });
            }
            runs.extend([
                down(m, next - 2, hm),
                up(m, next - 1, hm),
                down(m, next, hm),
            ]);
        }
        let last = self.sigma(n);
        for c in last + 1..=wm {
            runs.push(if (c - last) % 2 == 1 {
                up(m, c, hm)
            } else {
                down(m, c, hm)
            });
        }
        for c in 1..=wl {
            runs.push(if c % 2 == 1 {
                up(r, c, hl)
            } else {
                down(r, c, hl)
            });
        }
        runs
    }
}
