//! Reduction of multi-pointed diagrams to singly pointed ones.

use crate::canon::renumber;
use crate::diagram::*;
use crate::error::{Error, Result};
use crate::moves::erase_raw;

/// Curves of `family` forming a spanning tree of the piece graph (pieces of
/// the cut surface joined by the curves between them), lowest ids first.
pub fn spanning_discard(d: &Diagram, st: &Structure, family: Family) -> Result<Vec<CurveId>> {
    let comps = d.cut_components(st, family);
    let mut piece = vec![0; d.regions.len()];
    for (i, c) in comps.iter().enumerate() {
        for r in c {
            piece[r.0] = i;
        }
    }
    let mut parent: Vec<usize> = (0..comps.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut out = Vec::new();
    for c in d.family_curves(family) {
        let first = st.curve_arcs[c.0][0];
        let a = find(&mut parent, piece[st.left(first).0]);
        let b = find(&mut parent, piece[st.right(first).0]);
        if a != b {
            parent[a.max(b)] = a.min(b);
            out.push(c);
        }
    }
    if out.len() + 1 != comps.len() {
        return Err(Error::NoSpanningTree(format!(
            "{} curves join only {} of {} pieces",
            family.as_str(),
            out.len() + 1,
            comps.len()
        )));
    }
    Ok(out)
}

/// Discards spanning trees of curves in both families and every marked
/// point but the lowest-id one.
pub fn reduce_to_pointed(d: &Diagram) -> Result<Diagram> {
    if d.points.len() <= 1 {
        return Ok(renumber(d).0);
    }
    let st = d.structure().map_err(|v| Error::Invalid(v[0].to_string()))?;
    let mut erase = spanning_discard(d, &st, Family::Alpha)?;
    erase.extend(spanning_discard(d, &st, Family::Beta)?);
    let mut out = d.clone();
    out.points.truncate(1);
    erase_raw(&mut out, &erase)?;
    let report = out.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::NoSpanningTree(format!("reduced diagram is invalid: {}", v)));
    }
    Ok(renumber(&out).0)
}
