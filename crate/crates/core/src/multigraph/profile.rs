use super::{GraphError, LinearArrangement, Multigraph};

fn check(g: &Multigraph, a: &LinearArrangement) -> Result<(), GraphError> {
    if g.vertex_count() != a.len() {
        return Err(GraphError::ArrangementMismatch {
            arrangement: a.len(),
            graph: g.vertex_count(),
        });
    }
    Ok(())
}

/// Entry `p` is the number of edges crossing the gap after position `p`.
pub fn width_profile(g: &Multigraph, a: &LinearArrangement) -> Result<Vec<usize>, GraphError> {
    check(g, a)?;
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    let mut open: i64 = 0;
    for p in 0..n {
        let v = a.vertex_at(p);
        for &(u, m) in g.neighbors(v) {
            if a.position(u) > p {
                open += m as i64;
            } else {
                open -= m as i64;
            }
        }
        out.push(open as usize);
    }
    Ok(out)
}

fn endpoint_counts(g: &Multigraph, a: &LinearArrangement) -> Vec<usize> {
    let mut at = vec![0; a.len()];
    for &e in g.endpoints() {
        at[a.position(e)] += 1;
    }
    at
}

/// Width plus endpoint markers placed at or before each position; the last entry is 4.
pub fn extended_width_profile(
    g: &Multigraph,
    a: &LinearArrangement,
) -> Result<Vec<usize>, GraphError> {
    let mut w = width_profile(g, a)?;
    let at = endpoint_counts(g, a);
    let mut placed = 0;
    for (p, x) in w.iter_mut().enumerate() {
        placed += at[p];
        *x += placed;
    }
    if let Some(last) = w.last_mut() {
        *last = 4;
    }
    Ok(w)
}

/// Entry `p` counts edges passing over the vertex at position `p`.
pub fn modified_width_profile(
    g: &Multigraph,
    a: &LinearArrangement,
) -> Result<Vec<usize>, GraphError> {
    check(g, a)?;
    let mut out = Vec::with_capacity(a.len());
    let mut open: i64 = 0;
    for p in 0..a.len() {
        let v = a.vertex_at(p);
        let mut back = 0i64;
        let mut fwd = 0i64;
        for &(u, m) in g.neighbors(v) {
            if a.position(u) < p {
                back += m as i64;
            } else {
                fwd += m as i64;
            }
        }
        out.push((open - back) as usize);
        open += fwd - back;
    }
    Ok(out)
}

/// Modified width plus endpoint markers strictly before each position.
pub fn extended_modified_width_profile(
    g: &Multigraph,
    a: &LinearArrangement,
) -> Result<Vec<usize>, GraphError> {
    let mut w = modified_width_profile(g, a)?;
    let at = endpoint_counts(g, a);
    let mut placed = 0;
    for (p, x) in w.iter_mut().enumerate() {
        *x += placed;
        placed += at[p];
    }
    Ok(w)
}
