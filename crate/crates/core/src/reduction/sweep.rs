use super::arrangement::GadgetArrangement;
use super::gadget::GadgetInstance;
use super::verify::{edge_coloring, EdgeColoring};
use super::ReductionError;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentWidth {
    pub component: String,
    pub max_width: u64,
    /// 1-based position whose following gap attains the maximum.
    pub at: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub max_width: u64,
    /// The maximum is attained at the gap after this 1-based position.
    pub argmax: u64,
    pub argmax_vertex: String,
    pub argmax_component: String,
    pub k_prime: u64,
    pub faithful: bool,
    pub positions: u64,
    /// Per component, over the gaps that follow its vertices.
    pub components: Vec<ComponentWidth>,
}

impl SweepReport {
    pub fn component(&self, name: &str) -> Option<&ComponentWidth> {
        self.components.iter().find(|c| c.component == name)
    }
}

fn check_len(inst: &GadgetInstance, arr: &impl GadgetArrangement) -> Result<(), ReductionError> {
    if arr.len() != inst.vertex_count() {
        return Err(ReductionError::ArrangementMismatch {
            arrangement: arr.len(),
            vertices: inst.vertex_count(),
        });
    }
    Ok(())
}

/// Calls `f(position, vertex, width of the following gap)` for every position.
fn sweep_with(
    inst: &GadgetInstance,
    col: &EdgeColoring,
    arr: &impl GadgetArrangement,
    mut f: impl FnMut(u64, u32, u64),
) {
    let mut open: i64 = 0;
    for p in 0..arr.len() {
        let v = arr.vertex_at(p);
        inst.for_each_edge(v, |u, e| {
            let m = col.multiplicity(e) as i64;
            if arr.position(u) > p {
                open += m;
            } else {
                open -= m;
            }
        });
        f(p, v, open as u64);
    }
}

/// One pass over the positions; doubled edges count twice.
pub fn sweep_max_width(
    inst: &GadgetInstance,
    arr: &impl GadgetArrangement,
) -> Result<SweepReport, ReductionError> {
    check_len(inst, arr)?;
    let col = edge_coloring(inst)?;
    let comps = inst.components();
    // (max, 1-based position); position 0 marks an unseen component.
    let mut per: Vec<(u64, u64)> = vec![(0, 0); comps.len()];
    let mut best = (0u64, 0u64, 0u32);
    sweep_with(inst, &col, arr, |p, v, w| {
        let c = inst.node(v).comp;
        if per[c].1 == 0 || w > per[c].0 {
            per[c] = (w, p + 1);
        }
        if p == 0 || w > best.0 {
            best = (w, p + 1, v);
        }
    });
    Ok(SweepReport {
        max_width: best.0,
        argmax: best.1,
        argmax_vertex: inst.node_name(best.2),
        argmax_component: comps[inst.node(best.2).comp].name.clone(),
        k_prime: inst.k_prime(),
        faithful: inst.is_faithful(),
        positions: arr.len(),
        components: comps
            .iter()
            .zip(&per)
            .map(|(c, &(w, at))| ComponentWidth {
                component: c.name.clone(),
                max_width: w,
                at,
            })
            .collect(),
    })
}

/// The full width profile; entry `p` is the gap after position `p`.
pub fn sweep_profile(
    inst: &GadgetInstance,
    arr: &impl GadgetArrangement,
) -> Result<Vec<u64>, ReductionError> {
    check_len(inst, arr)?;
    let col = edge_coloring(inst)?;
    let mut out = Vec::with_capacity(arr.len() as usize);
    sweep_with(inst, &col, arr, |_, _, w| out.push(w));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::{width_profile, LinearArrangement};
    use crate::reduction::{
        build_gadget_with_cap, canonical_arrangement, gadget_multigraph, Bisection, CubicGraph,
        ExplicitArrangement,
    };

    #[test]
    fn profile_matches_explicit_multigraph() {
        let inst = build_gadget_with_cap(&CubicGraph::complete_k4(), 4, 1, None).unwrap();
        let a = canonical_arrangement(&inst, &Bisection::new(4, vec![0, 1]).unwrap()).unwrap();
        let e = ExplicitArrangement::from_arrangement(&a);
        let order: Vec<usize> = (0..e.len()).map(|p| e.vertex_at(p) as usize).collect();
        let g = gadget_multigraph(&inst).unwrap();
        let want: Vec<u64> = width_profile(&g, &LinearArrangement::from_order(order).unwrap())
            .unwrap()
            .into_iter()
            .map(|w| w as u64)
            .collect();
        assert_eq!(sweep_profile(&inst, &a).unwrap(), want);
        let rep = sweep_max_width(&inst, &a).unwrap();
        assert_eq!(rep.max_width, *want.iter().max().unwrap());
        assert!(!rep.faithful);
    }
}
