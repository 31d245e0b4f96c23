//! Elementary moves: finger moves, curve erasure, surgery on a free curve,
//! and destabilization.

use crate::canon::{canonical_names, compact_indices, renumber};
use crate::diagram::*;
use crate::error::{Error, MoveError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Push the curve of `launch` across the arc of `target`. Both darts
    /// must border the same region (the region on their left).
    Finger { launch: Dart, target: Dart },
    Erase { curve: CurveId },
    SurgeFree { curve: CurveId },
    Destabilize { alpha: CurveId, beta: CurveId },
}

/// Darts created by a finger move, in construction direction.
///
/// The moving curve runs `e1 -> v1 -> e_tip -> v2 -> e2`; the crossed curve
/// runs `t1 -> v2 -> t_mid -> v1 -> t2`.
#[derive(Clone, Copy, Debug)]
pub struct Finger {
    pub v1: VertexId,
    pub v2: VertexId,
    pub e1: Dart,
    pub e_tip: Dart,
    pub e2: Dart,
    pub t1: Dart,
    pub t_mid: Dart,
    pub t2: Dart,
    pub bigon: RegionId,
    pub thin: Option<RegionId>,
}

pub fn locate(d: &Diagram, x: Dart) -> Option<(usize, usize, usize)> {
    for (ri, r) in d.regions.iter().enumerate() {
        for (ci, c) in r.cycles.iter().enumerate() {
            if let Some(p) = c.iter().position(|y| *y == x) {
                return Some((ri, ci, p));
            }
        }
    }
    None
}

/// Splits the arc of `x` so that its traversal passes `va` then `vb`.
/// Returns the three pieces as darts in traversal direction; for a closed
/// arc the first and last pieces coincide.
fn split3(d: &mut Diagram, x: Dart, va: VertexId, vb: VertexId) -> (Dart, Dart, Dart) {
    let a = x.arc;
    let curve = d.arcs[a.0].curve;
    let push = |d: &mut Diagram, ends| {
        d.arcs.push(Arc { curve, ends: Some(ends) });
        ArcId(d.arcs.len() - 1)
    };
    match (d.arcs[a.0].ends, x.forward) {
        (Some((f, t)), true) => {
            d.arcs[a.0].ends = Some((f, va));
            let m = push(d, (va, vb));
            let l = push(d, (vb, t));
            (Dart::fwd(a), Dart::fwd(m), Dart::fwd(l))
        }
        (Some((f, t)), false) => {
            d.arcs[a.0].ends = Some((f, vb));
            let m = push(d, (vb, va));
            let l = push(d, (va, t));
            (Dart::fwd(l).rev(), Dart::fwd(m).rev(), Dart::fwd(a).rev())
        }
        (None, true) => {
            d.arcs[a.0].ends = Some((vb, va));
            let m = push(d, (va, vb));
            (Dart::fwd(a), Dart::fwd(m), Dart::fwd(a))
        }
        (None, false) => {
            d.arcs[a.0].ends = Some((va, vb));
            let m = push(d, (vb, va));
            (Dart::fwd(a).rev(), Dart::fwd(m).rev(), Dart::fwd(a).rev())
        }
    }
}

fn collapse(cycle: &mut Vec<Dart>, merged: &[Dart]) {
    if cycle.len() < 2 {
        return;
    }
    let n = cycle.len();
    let keep: Vec<bool> = (0..n)
        .map(|i| {
            let prev = cycle[(i + n - 1) % n];
            !(cycle[i] == prev && (merged.contains(&cycle[i]) || merged.contains(&cycle[i].rev())))
        })
        .collect();
    let mut out: Vec<Dart> = cycle.iter().zip(&keep).filter(|(_, k)| **k).map(|(d, _)| *d).collect();
    if out.is_empty() {
        out.push(cycle[0]);
    }
    *cycle = out;
}

/// Finger move in place, without renumbering.
pub fn finger_raw(d: &mut Diagram, launch: Dart, target: Dart) -> Result<Finger, MoveError> {
    let err = |m: &str| MoveError::Finger(m.to_string());
    if launch.arc.0 >= d.arcs.len() || target.arc.0 >= d.arcs.len() {
        return Err(err("dart refers to a missing arc"));
    }
    let fa = d.family_of_arc(launch.arc);
    if fa == d.family_of_arc(target.arc) {
        return Err(err("target arc must belong to the opposite family"));
    }
    let (ra, ca, pa) = locate(d, launch).ok_or_else(|| err("launch dart not found"))?;
    let (rt, ct, pt) = locate(d, target).ok_or_else(|| err("target dart not found"))?;
    if ra != rt {
        return Err(err("launch and target do not border a common region on the stated side"));
    }
    let (ac, tc) = (d.arcs[launch.arc.0].curve, d.arcs[target.arc.0].curve);
    let vx = match fa {
        Family::Alpha => Vertex { alpha: ac, beta: tc },
        Family::Beta => Vertex { alpha: tc, beta: ac },
    };
    let v1 = VertexId(d.vertices.len());
    let v2 = VertexId(d.vertices.len() + 1);
    d.vertices.push(vx.clone());
    d.vertices.push(vx);
    let a_closed = d.arcs[launch.arc.0].is_closed();
    let t_closed = d.arcs[target.arc.0].is_closed();
    let (e1, e_tip, e2) = split3(d, launch, v1, v2);
    let (t1, t_mid, t2) = split3(d, target, v2, v1);

    let region = &mut d.regions[ra];
    let mut thin = None;
    if ca == ct {
        let c = &region.cycles[ca];
        let n = c.len();
        let rot: Vec<Dart> = (0..n).map(|i| c[(pa + i) % n]).collect();
        let k = (pt + n - pa) % n;
        let xs = &rot[1..k];
        let ys = &rot[k + 1..];
        let mut f = vec![e1, t2];
        f.extend_from_slice(ys);
        let mut nn = vec![e2];
        nn.extend_from_slice(xs);
        nn.push(t1);
        region.cycles[ca] = f;
        thin = Some(nn);
    } else {
        let c1 = region.cycles[ca].clone();
        let c2 = region.cycles[ct].clone();
        let xs: Vec<Dart> = (1..c1.len()).map(|i| c1[(pa + i) % c1.len()]).collect();
        let ys: Vec<Dart> = (1..c2.len()).map(|i| c2[(pt + i) % c2.len()]).collect();
        let mut m = vec![e1, t2];
        m.extend(ys);
        m.push(t1);
        m.push(e2);
        m.extend(xs);
        let (hi, lo) = if ca > ct { (ca, ct) } else { (ct, ca) };
        region.cycles.remove(hi);
        region.cycles[lo] = m;
    }
    let thin_id = thin.map(|nn| {
        d.regions.push(Region { genus: 0, cycles: vec![nn] });
        RegionId(d.regions.len() - 1)
    });
    d.regions.push(Region { genus: 0, cycles: vec![vec![t_mid.rev(), e_tip.rev()]] });
    let bigon = RegionId(d.regions.len() - 1);

    // The piece that keeps the old arc id equals the old dart itself, never
    // its reverse, so one substitution pass is enough.
    let reps: [(Dart, [Dart; 3]); 2] = [
        (launch.rev(), [e2.rev(), t_mid, e1.rev()]),
        (target.rev(), [t2.rev(), e_tip, t1.rev()]),
    ];
    for r in d.regions.iter_mut() {
        for c in r.cycles.iter_mut() {
            if !c.iter().any(|x| reps.iter().any(|(o, _)| o == x)) {
                continue;
            }
            let mut out = Vec::with_capacity(c.len() + 4);
            for x in c.iter() {
                match reps.iter().find(|(o, _)| o == x) {
                    Some((_, rep)) => out.extend_from_slice(rep),
                    None => out.push(*x),
                }
            }
            *c = out;
        }
    }
    let mut merged = Vec::new();
    if a_closed {
        merged.push(e1);
    }
    if t_closed {
        merged.push(t1);
    }
    if !merged.is_empty() {
        for r in d.regions.iter_mut() {
            for c in r.cycles.iter_mut() {
                collapse(c, &merged);
            }
        }
    }
    canonical_names(d);
    Ok(Finger { v1, v2, e1, e_tip, e2, t1, t_mid, t2, bigon, thin: thin_id })
}

/// Erases curves in place, merging regions across them.
pub fn erase_raw(d: &mut Diagram, erase: &[CurveId]) -> Result<(), MoveError> {
    let st = d.structure().map_err(|v| MoveError::Erase(format!("input is not sound: {}", v[0])))?;
    let gone = |c: CurveId| erase.contains(&c);
    let arc_gone: Vec<bool> = d.arcs.iter().map(|a| gone(a.curve)).collect();
    let v_gone: Vec<bool> = d.vertices.iter().map(|v| gone(v.alpha) || gone(v.beta)).collect();

    // union-find on regions across erased arcs
    let nr = d.regions.len();
    let mut parent: Vec<usize> = (0..nr).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let n = p[y];
            p[y] = r;
            y = n;
        }
        r
    }
    for (ai, g) in arc_gone.iter().enumerate() {
        if *g {
            let l = find(&mut parent, st.left(ArcId(ai)).0);
            let r = find(&mut parent, st.right(ArcId(ai)).0);
            if l != r {
                parent[l.max(r)] = l.min(r);
            }
        }
    }
    let mut class_id = vec![usize::MAX; nr];
    let mut nclass = 0;
    for r in 0..nr {
        let root = find(&mut parent, r);
        if class_id[root] == usize::MAX {
            class_id[root] = nclass;
            nclass += 1;
        }
        class_id[r] = class_id[root];
    }

    // new arcs
    let mut new_arcs: Vec<Arc> = Vec::new();
    let mut arc_map: Vec<Option<usize>> = vec![None; d.arcs.len()];
    let mut vmap: Vec<Option<usize>> = vec![None; d.vertices.len()];
    let mut nv = 0;
    for (vi, g) in v_gone.iter().enumerate() {
        if !g {
            vmap[vi] = Some(nv);
            nv += 1;
        }
    }
    for (ci, seq) in st.curve_arcs.iter().enumerate() {
        if gone(CurveId(ci)) {
            continue;
        }
        if d.arcs[seq[0].0].is_closed() {
            arc_map[seq[0].0] = Some(new_arcs.len());
            new_arcs.push(Arc { curve: CurveId(ci), ends: None });
            continue;
        }
        let kept_start: Vec<usize> = (0..seq.len())
            .filter(|&i| !v_gone[d.arcs[seq[i].0].ends.unwrap().0 .0])
            .collect();
        if kept_start.is_empty() {
            let id = new_arcs.len();
            new_arcs.push(Arc { curve: CurveId(ci), ends: None });
            for a in seq {
                arc_map[a.0] = Some(id);
            }
            continue;
        }
        let n = seq.len();
        for (j, &s) in kept_start.iter().enumerate() {
            let e = kept_start[(j + 1) % kept_start.len()];
            let len = if e > s { e - s } else { e + n - s };
            let id = new_arcs.len();
            let from = d.arcs[seq[s].0].ends.unwrap().0;
            let to = d.arcs[seq[(s + len - 1) % n].0].ends.unwrap().1;
            new_arcs.push(Arc {
                curve: CurveId(ci),
                ends: Some((VertexId(vmap[from.0].unwrap()), VertexId(vmap[to.0].unwrap()))),
            });
            for k in 0..len {
                arc_map[seq[(s + k) % n].0] = Some(id);
            }
        }
    }

    // trace cycles
    let mut visited = vec![[false; 2]; d.arcs.len()];
    let mut class_cycles: Vec<Vec<Vec<Dart>>> = vec![Vec::new(); nclass];
    let darts: Vec<Dart> = (0..d.arcs.len())
        .filter(|&a| !arc_gone[a])
        .flat_map(|a| [Dart::new(ArcId(a), true), Dart::new(ArcId(a), false)])
        .collect();
    for start in darts {
        if visited[start.arc.0][usize::from(!start.forward)] {
            continue;
        }
        let mut seq = Vec::new();
        let mut x = start;
        loop {
            visited[x.arc.0][usize::from(!x.forward)] = true;
            seq.push(Dart::new(ArcId(arc_map[x.arc.0].unwrap()), x.forward));
            let next = match d.head(x) {
                None => x,
                Some((v, slot)) => {
                    let mut s = st.cw(v, slot);
                    while arc_gone[st.germ[v.0][s].0] {
                        s = st.cw(v, s);
                    }
                    Dart::new(st.germ[v.0][s], s == ALPHA_OUT || s == BETA_OUT)
                }
            };
            if next == start {
                break;
            }
            x = next;
        }
        let n = seq.len();
        let mut c: Vec<Dart> = (0..n).filter(|&i| seq[i] != seq[(i + n - 1) % n]).map(|i| seq[i]).collect();
        if c.is_empty() {
            c.push(seq[0]);
        }
        class_cycles[class_id[st.region_of(start).0]].push(c);
    }

    // genus of merged regions
    let mut chi = vec![0i64; nclass];
    for (ri, r) in d.regions.iter().enumerate() {
        chi[class_id[ri]] += 2 - 2 * r.genus as i64 - r.cycles.len() as i64;
    }
    for (ai, a) in d.arcs.iter().enumerate() {
        if arc_gone[ai] && !a.is_closed() {
            chi[class_id[st.left(ArcId(ai)).0]] -= 1;
        }
    }
    for (vi, v) in d.vertices.iter().enumerate() {
        if gone(v.alpha) && gone(v.beta) {
            chi[class_id[st.left(st.germ[vi][ALPHA_OUT]).0]] += 1;
        }
    }
    let mut regions = Vec::with_capacity(nclass);
    for (k, cycles) in class_cycles.into_iter().enumerate() {
        let twice = 2 - cycles.len() as i64 - chi[k];
        if twice < 0 || twice % 2 != 0 {
            return Err(MoveError::Erase("merged region has inconsistent topology".into()));
        }
        regions.push(Region { genus: (twice / 2) as u32, cycles });
    }

    let mut cmap = vec![usize::MAX; d.curves.len()];
    let mut curves = Vec::new();
    for (ci, c) in d.curves.iter().enumerate() {
        if !gone(CurveId(ci)) {
            cmap[ci] = curves.len();
            curves.push(c.clone());
        }
    }
    let vertices = d
        .vertices
        .iter()
        .zip(&v_gone)
        .filter(|(_, g)| !**g)
        .map(|(v, _)| Vertex { alpha: CurveId(cmap[v.alpha.0]), beta: CurveId(cmap[v.beta.0]) })
        .collect();
    for a in new_arcs.iter_mut() {
        a.curve = CurveId(cmap[a.curve.0]);
    }
    for p in d.points.iter_mut() {
        p.region = RegionId(class_id[p.region.0]);
    }
    d.curves = curves;
    d.vertices = vertices;
    d.arcs = new_arcs;
    d.regions = regions;
    compact_indices(d);
    canonical_names(d);
    Ok(())
}

fn remove_curve_and_arcs(d: &mut Diagram, curves: &[CurveId], arcs: &[ArcId], vertex: Option<VertexId>) {
    let mut amap = vec![usize::MAX; d.arcs.len()];
    let mut na = Vec::new();
    for (ai, a) in d.arcs.iter().enumerate() {
        if !arcs.contains(&ArcId(ai)) {
            amap[ai] = na.len();
            na.push(a.clone());
        }
    }
    let mut cmap = vec![usize::MAX; d.curves.len()];
    let mut nc = Vec::new();
    for (ci, c) in d.curves.iter().enumerate() {
        if !curves.contains(&CurveId(ci)) {
            cmap[ci] = nc.len();
            nc.push(c.clone());
        }
    }
    let vmap = |v: VertexId| match vertex {
        Some(x) if v.0 > x.0 => VertexId(v.0 - 1),
        _ => v,
    };
    if let Some(x) = vertex {
        d.vertices.remove(x.0);
    }
    for v in d.vertices.iter_mut() {
        v.alpha = CurveId(cmap[v.alpha.0]);
        v.beta = CurveId(cmap[v.beta.0]);
    }
    for a in na.iter_mut() {
        a.curve = CurveId(cmap[a.curve.0]);
        a.ends = a.ends.map(|(f, t)| (vmap(f), vmap(t)));
    }
    for r in d.regions.iter_mut() {
        for c in r.cycles.iter_mut() {
            for x in c.iter_mut() {
                x.arc = ArcId(amap[x.arc.0]);
            }
        }
    }
    d.arcs = na;
    d.curves = nc;
    compact_indices(d);
    canonical_names(d);
}

/// Surgery along an intersection-free, non-separating curve.
pub fn surge_raw(d: &mut Diagram, curve: CurveId) -> Result<(), MoveError> {
    let err = |m: &str| MoveError::Surge(m.to_string());
    if curve.0 >= d.curves.len() {
        return Err(err("no such curve"));
    }
    let arcs: Vec<usize> = (0..d.arcs.len()).filter(|&a| d.arcs[a].curve == curve).collect();
    if arcs.len() != 1 || !d.arcs[arcs[0]].is_closed() {
        return Err(err("curve has intersections"));
    }
    if d.genus == 0 {
        return Err(err("surface already has genus 0"));
    }
    let a = ArcId(arcs[0]);
    let st = d.structure().map_err(|v| MoveError::Surge(format!("input is not sound: {}", v[0])))?;
    // separating check: connectivity across every arc but this one
    let n = d.regions.len();
    let mut adj = vec![Vec::new(); n];
    for ai in 0..d.arcs.len() {
        if ai != a.0 {
            let (l, r) = (st.left(ArcId(ai)).0, st.right(ArcId(ai)).0);
            adj[l].push(r);
            adj[r].push(l);
        }
    }
    let comps = components(n, &adj);
    let comp_l = comps.iter().position(|c| c.contains(&st.left(a).0));
    let comp_r = comps.iter().position(|c| c.contains(&st.right(a).0));
    if comp_l != comp_r {
        return Err(err("curve is separating"));
    }
    for side in [0, 1] {
        let (r, _, _) = st.side[a.0][side];
        d.regions[r.0].cycles.retain(|c| !(c.len() == 1 && c[0].arc == a));
    }
    d.genus -= 1;
    remove_curve_and_arcs(d, &[curve], &[a], None);
    Ok(())
}

/// Removes a pair of curves that meet once and meet nothing else.
pub fn destabilize_raw(d: &mut Diagram, alpha: CurveId, beta: CurveId) -> Result<(), MoveError> {
    let err = |m: &str| MoveError::Destabilize(m.to_string());
    if alpha.0 >= d.curves.len() || beta.0 >= d.curves.len() {
        return Err(err("no such curve"));
    }
    if d.curves[alpha.0].family != Family::Alpha || d.curves[beta.0].family != Family::Beta {
        return Err(err("expected an alpha curve and a beta curve"));
    }
    let on_a: Vec<usize> = (0..d.vertices.len()).filter(|&v| d.vertices[v].alpha == alpha).collect();
    let on_b: Vec<usize> = (0..d.vertices.len()).filter(|&v| d.vertices[v].beta == beta).collect();
    if on_a.len() != 1 || on_b.len() != 1 || on_a[0] != on_b[0] {
        return Err(err("curves must meet each other exactly once and meet nothing else"));
    }
    let v = on_a[0];
    let a: Vec<ArcId> = (0..d.arcs.len()).map(ArcId).filter(|x| d.arcs[x.0].curve == alpha).collect();
    let t: Vec<ArcId> = (0..d.arcs.len()).map(ArcId).filter(|x| d.arcs[x.0].curve == beta).collect();
    let (a, t) = (a[0], t[0]);
    let mut found = false;
    for r in d.regions.iter_mut() {
        let before = r.cycles.len();
        r.cycles.retain(|c| !c.iter().all(|x| x.arc == a || x.arc == t));
        found |= r.cycles.len() != before;
    }
    if !found {
        return Err(err("neighbourhood boundary cycle not found"));
    }
    d.genus -= 1;
    remove_curve_and_arcs(d, &[alpha, beta], &[a, t], Some(VertexId(v)));
    Ok(())
}

pub fn apply_raw(d: &mut Diagram, m: Move) -> Result<(), MoveError> {
    match m {
        Move::Finger { launch, target } => finger_raw(d, launch, target).map(|_| ()),
        Move::Erase { curve } => {
            if curve.0 >= d.curves.len() {
                return Err(MoveError::Erase("no such curve".into()));
            }
            erase_raw(d, &[curve])
        }
        Move::SurgeFree { curve } => surge_raw(d, curve),
        Move::Destabilize { alpha, beta } => destabilize_raw(d, alpha, beta),
    }
}

/// Applies a move and renumbers the result canonically.
///
/// Erasing a curve may leave a diagram whose curve families no longer cut the
/// surface into planar pieces; such outputs are still checked for sound
/// structure, Euler characteristic and connectivity.
pub fn apply_move(d: &Diagram, m: Move) -> Result<Diagram, Error> {
    let mut out = d.clone();
    apply_raw(&mut out, m)?;
    let report = out.validate();
    let bad: Vec<&Violation> = report
        .violations
        .iter()
        .filter(|v| {
            !(matches!(m, Move::Erase { .. })
                && matches!(
                    v.kind,
                    ViolationKind::FamilyCount | ViolationKind::CutTopology | ViolationKind::MarkedPoint
                ))
        })
        .collect();
    if let Some(v) = bad.first() {
        return Err(Error::Internal(format!("move produced an invalid diagram: {}", v)));
    }
    Ok(renumber(&out).0)
}
