use super::gadget::{GadgetInstance, PathColor, Run};
use super::{Bisection, ReductionError};
use bitvec::prelude::*;

/// A bijection between gadget vertex ids and positions `0..len`.
pub trait GadgetArrangement {
    fn len(&self) -> u64;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn position(&self, v: u32) -> u64;
    fn vertex_at(&self, p: u64) -> u32;
}

#[derive(Debug, Clone, Copy)]
struct Block {
    comp: usize,
    start: u64,
    height: u32,
    offset: u64,
    width: u32,
}

/// Grids in the order `G_i` for the first half, `L`, `M`, `R`, then `G_i` for
/// the second half; each grid column by column, each column in the direction
/// the green path crosses it.
#[derive(Debug, Clone)]
pub struct CanonicalArrangement {
    blocks: Vec<Block>,
    block_of: Vec<usize>,
    down: Vec<BitVec>,
    len: u64,
}

pub fn canonical_arrangement(
    inst: &GadgetInstance,
    b: &Bisection,
) -> Result<CanonicalArrangement, ReductionError> {
    let n = inst.source_vertices();
    if b.v1.len() + b.v2.len() != n || b.v1.iter().chain(&b.v2).any(|&v| v >= n) {
        return Err(ReductionError::InvalidBisection(format!(
            "bisection does not split the {n} source vertices"
        )));
    }
    let comps = inst.components();
    let mut down: Vec<BitVec> = comps.iter().map(|c| bitvec![0; c.width as usize]).collect();
    let mut seen: Vec<BitVec> = comps.iter().map(|c| bitvec![0; c.width as usize]).collect();
    for run in inst.runs(PathColor::Green) {
        if let Run::Col {
            comp,
            col,
            from,
            to,
        } = *run
        {
            let c = col as usize - 1;
            if seen[comp].replace(c, true) {
                return Err(ReductionError::Unverified(format!(
                    "green path crosses column {col} of {} twice",
                    comps[comp].name
                )));
            }
            down[comp].set(c, from <= to);
        }
    }
    for (comp, s) in seen.iter().enumerate() {
        if let Some(c) = s.first_zero() {
            return Err(ReductionError::Unverified(format!(
                "green path does not run along column {} of {}",
                c + 1,
                comps[comp].name
            )));
        }
    }
    let order: Vec<usize> =
        b.v1.iter()
            .copied()
            .chain([inst.l(), inst.m(), inst.r()])
            .chain(b.v2.iter().copied())
            .collect();
    let mut blocks = Vec::with_capacity(order.len());
    let mut block_of = vec![0; comps.len()];
    let mut start = 0;
    for (bi, &comp) in order.iter().enumerate() {
        let c = &comps[comp];
        blocks.push(Block {
            comp,
            start,
            height: c.height,
            offset: c.offset,
            width: c.width,
        });
        block_of[comp] = bi;
        start += c.size();
    }
    Ok(CanonicalArrangement {
        blocks,
        block_of,
        down,
        len: start,
    })
}

impl CanonicalArrangement {
    /// Component order, as component indices.
    pub fn component_order(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.comp).collect()
    }

    /// First position of a component.
    pub fn component_start(&self, comp: usize) -> u64 {
        self.blocks[self.block_of[comp]].start
    }
}

impl GadgetArrangement for CanonicalArrangement {
    fn len(&self) -> u64 {
        self.len
    }

    fn position(&self, v: u32) -> u64 {
        let v = v as u64;
        let bi = self
            .blocks
            .iter()
            .position(|b| (b.offset..b.offset + b.height as u64 * b.width as u64).contains(&v))
            .expect("vertex in some component");
        let b = &self.blocks[bi];
        let q = v - b.offset;
        let (row, col) = (q / b.width as u64, q % b.width as u64);
        let h = b.height as u64;
        let within = if self.down[b.comp][col as usize] {
            row
        } else {
            h - 1 - row
        };
        b.start + col * h + within
    }

    fn vertex_at(&self, p: u64) -> u32 {
        let bi = self.blocks.partition_point(|b| b.start <= p) - 1;
        let b = &self.blocks[bi];
        let h = b.height as u64;
        let q = p - b.start;
        let (col, k) = (q / h, q % h);
        let row = if self.down[b.comp][col as usize] {
            k
        } else {
            h - 1 - k
        };
        (b.offset + row * b.width as u64 + col) as u32
    }
}

/// An arrangement given as an explicit vertex order.
#[derive(Debug, Clone)]
pub struct ExplicitArrangement {
    order: Vec<u32>,
    pos: Vec<u32>,
}

impl ExplicitArrangement {
    pub fn new(inst: &GadgetInstance, order: Vec<u32>) -> Result<Self, ReductionError> {
        let n = inst.vertex_count();
        if order.len() as u64 != n {
            return Err(ReductionError::ArrangementMismatch {
                arrangement: order.len() as u64,
                vertices: n,
            });
        }
        let mut pos = vec![u32::MAX; n as usize];
        for (p, &v) in order.iter().enumerate() {
            if v as u64 >= n || pos[v as usize] != u32::MAX {
                return Err(ReductionError::InvalidParameter(format!(
                    "vertex {v} misplaced in arrangement"
                )));
            }
            pos[v as usize] = p as u32;
        }
        Ok(ExplicitArrangement { order, pos })
    }

    /// Materializes any arrangement.
    pub fn from_arrangement(a: &impl GadgetArrangement) -> Self {
        let order: Vec<u32> = (0..a.len()).map(|p| a.vertex_at(p)).collect();
        let mut pos = vec![0; order.len()];
        for (p, &v) in order.iter().enumerate() {
            pos[v as usize] = p as u32;
        }
        ExplicitArrangement { order, pos }
    }
}

impl GadgetArrangement for ExplicitArrangement {
    fn len(&self) -> u64 {
        self.order.len() as u64
    }

    fn position(&self, v: u32) -> u64 {
        self.pos[v as usize] as u64
    }

    fn vertex_at(&self, p: u64) -> u32 {
        self.order[p as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{build_gadget_with_cap, CubicGraph};

    #[test]
    fn canonical_is_a_bijection() {
        let inst = build_gadget_with_cap(&CubicGraph::complete_k4(), 4, 1, None).unwrap();
        let b = Bisection::new(4, vec![0, 1]).unwrap();
        let a = canonical_arrangement(&inst, &b).unwrap();
        assert_eq!(a.len(), inst.vertex_count());
        let mut seen = bitvec![0; a.len() as usize];
        for p in 0..a.len() {
            let v = a.vertex_at(p);
            assert!(!seen.replace(v as usize, true));
            assert_eq!(a.position(v), p);
        }
        assert_eq!(inst.node(a.vertex_at(0)).comp, 0);
        assert_eq!(inst.node(a.vertex_at(0)).col, 1);
        assert_eq!(a.component_order(), vec![0, 1, 4, 5, 6, 2, 3]);
    }

    #[test]
    fn grids_are_contiguous() {
        let inst = build_gadget_with_cap(&CubicGraph::complete_k4(), 4, 1, None).unwrap();
        let b = Bisection::new(4, vec![1, 3]).unwrap();
        let a = canonical_arrangement(&inst, &b).unwrap();
        let comps: Vec<usize> = (0..a.len())
            .map(|p| inst.node(a.vertex_at(p)).comp)
            .collect();
        let mut changes = comps.windows(2).filter(|w| w[0] != w[1]).count();
        changes += 1;
        assert_eq!(changes, inst.components().len());
    }

    #[test]
    fn explicit_matches_canonical() {
        let inst = build_gadget_with_cap(&CubicGraph::complete_k4(), 4, 1, None).unwrap();
        let a = canonical_arrangement(&inst, &Bisection::new(4, vec![0, 2]).unwrap()).unwrap();
        let e = ExplicitArrangement::from_arrangement(&a);
        for v in (0..inst.vertex_count() as u32).step_by(101) {
            assert_eq!(e.position(v), a.position(v));
        }
        assert!(ExplicitArrangement::new(&inst, vec![0, 1]).is_err());
    }
}
