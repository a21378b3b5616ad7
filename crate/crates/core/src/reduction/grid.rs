use super::ReductionError;
use crate::multigraph::Multigraph;

/// Grid with `h` rows and `w` columns; vertex `(r, c)` (1-based) has id `(r-1)*w + (c-1)`.
pub fn build_grid(h: usize, w: usize) -> Result<Multigraph, ReductionError> {
    if h == 0 || w == 0 {
        return Err(ReductionError::InvalidParameter(format!(
            "grid dimensions must be positive, got {h}x{w}"
        )));
    }
    let mut g = Multigraph::new(h * w);
    add_grid(&mut g, 0, h, w)?;
    Ok(g)
}

fn add_grid(g: &mut Multigraph, offset: usize, h: usize, w: usize) -> Result<(), ReductionError> {
    let id = |r: usize, c: usize| offset + (r - 1) * w + (c - 1);
    for r in 1..=h {
        for c in 1..=w {
            if c < w {
                g.add_edge(id(r, c), id(r, c + 1), 1)?;
            }
            if r < h {
                g.add_edge(id(r, c), id(r + 1, c), 1)?;
            }
        }
    }
    Ok(())
}

/// Two copies `L`, `R` of an `hl x wl` grid around an `hm x wm` grid `M`.
#[derive(Debug, Clone)]
pub struct ComposedGrid {
    pub graph: Multigraph,
    pub hl: usize,
    pub wl: usize,
    pub hm: usize,
    pub wm: usize,
}

impl ComposedGrid {
    pub fn l(&self, r: usize, c: usize) -> usize {
        (r - 1) * self.wl + (c - 1)
    }

    pub fn m(&self, r: usize, c: usize) -> usize {
        self.hl * self.wl + (r - 1) * self.wm + (c - 1)
    }

    pub fn r(&self, r: usize, c: usize) -> usize {
        self.hl * self.wl + self.hm * self.wm + (r - 1) * self.wl + (c - 1)
    }

    /// Edges joining different components.
    pub fn connectors(&self) -> Vec<(usize, usize)> {
        (1..=self.hm)
            .flat_map(|h| {
                [
                    (self.l(h, self.wl), self.m(h, 1)),
                    (self.m(h, self.wm), self.r(self.hl - self.hm + h, 1)),
                ]
            })
            .collect()
    }
}

/// `M`'s row `h` meets `L`'s row `h` on the left and `R`'s row `hl - hm + h` on the right.
pub fn build_composed_grid(
    hl: usize,
    wl: usize,
    hm: usize,
    wm: usize,
) -> Result<ComposedGrid, ReductionError> {
    if hm == 0 || wl == 0 || wm == 0 || hl <= hm {
        return Err(ReductionError::InvalidParameter(format!(
            "composed grid needs hl > hm >= 1 and positive widths, got {hl},{wl},{hm},{wm}"
        )));
    }
    let mut cg = ComposedGrid {
        graph: Multigraph::new(2 * hl * wl + hm * wm),
        hl,
        wl,
        hm,
        wm,
    };
    let (l0, m0, r0) = (cg.l(1, 1), cg.m(1, 1), cg.r(1, 1));
    add_grid(&mut cg.graph, l0, hl, wl)?;
    add_grid(&mut cg.graph, m0, hm, wm)?;
    add_grid(&mut cg.graph, r0, hl, wl)?;
    for (u, v) in cg.connectors() {
        cg.graph.add_edge(u, v, 1)?;
    }
    Ok(cg)
}
