//! Canonical renumbering: breadth-first from the lowest-id vertex.

use std::collections::VecDeque;

use crate::diagram::*;

/// Old-to-new id maps produced by [`renumber`].
#[derive(Clone, Debug, Default)]
pub struct Renumbering {
    pub curves: Vec<usize>,
    pub vertices: Vec<usize>,
    pub arcs: Vec<usize>,
    pub regions: Vec<usize>,
    pub points: Vec<usize>,
}

pub fn canonical_names(d: &mut Diagram) {
    d.names.curves = d
        .curves
        .iter()
        .map(|c| format!("{}{}", if c.family == Family::Alpha { 'a' } else { 'b' }, c.index))
        .collect();
    d.names.vertices = (1..=d.vertices.len()).map(|i| format!("v{}", i)).collect();
    d.names.arcs = (1..=d.arcs.len()).map(|i| format!("e{}", i)).collect();
    d.names.regions = (1..=d.regions.len()).map(|i| format!("r{}", i)).collect();
    d.names.points = (1..=d.points.len()).map(|i| format!("z{}", i)).collect();
}

const BFS_ORDER: [usize; 4] = [ALPHA_OUT, BETA_OUT, ALPHA_IN, BETA_IN];

/// Renumbers every cell canonically and resets names.
/// Requires a structurally sound diagram.
pub fn renumber(d: &Diagram) -> (Diagram, Renumbering) {
    let st = d.structure().expect("renumber needs a structurally sound diagram");

    // curves: alpha before beta, by index, ties by old id
    let mut corder: Vec<usize> = (0..d.curves.len()).collect();
    corder.sort_by_key(|&c| (d.curves[c].family, d.curves[c].index, c));
    let mut cmap = vec![0; d.curves.len()];
    for (n, &o) in corder.iter().enumerate() {
        cmap[o] = n;
    }

    let nv = d.vertices.len();
    let mut vmap = vec![usize::MAX; nv];
    let mut vorder = Vec::with_capacity(nv);
    for s in 0..nv {
        if vmap[s] != usize::MAX {
            continue;
        }
        vmap[s] = vorder.len();
        vorder.push(s);
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for slot in BFS_ORDER {
                let a = st.germ[v][slot];
                let (f, t) = d.arcs[a.0].ends.expect("segment");
                let w = if f.0 == v { t.0 } else { f.0 };
                if vmap[w] == usize::MAX {
                    vmap[w] = vorder.len();
                    vorder.push(w);
                    q.push_back(w);
                }
            }
        }
    }

    let na = d.arcs.len();
    let mut amap = vec![usize::MAX; na];
    let mut aorder = Vec::with_capacity(na);
    for &v in &vorder {
        for slot in BFS_ORDER {
            let a = st.germ[v][slot].0;
            if amap[a] == usize::MAX {
                amap[a] = aorder.len();
                aorder.push(a);
            }
        }
    }
    let mut closed: Vec<usize> = (0..na).filter(|&a| amap[a] == usize::MAX).collect();
    closed.sort_by_key(|&a| (cmap[d.arcs[a].curve.0], a));
    for a in closed {
        amap[a] = aorder.len();
        aorder.push(a);
    }

    let key = |dt: &Dart| (amap[dt.arc.0], !dt.forward);
    let mut new_regions: Vec<(Option<(usize, bool)>, usize, Region)> = d
        .regions
        .iter()
        .enumerate()
        .map(|(ri, r)| {
            let mut cycles: Vec<Vec<Dart>> = r
                .cycles
                .iter()
                .map(|c| {
                    let c: Vec<Dart> = c.iter().map(|x| Dart::new(ArcId(amap[x.arc.0]), x.forward)).collect();
                    let m = (0..c.len()).min_by_key(|&i| (c[i].arc, !c[i].forward)).unwrap_or(0);
                    let mut rot = c[m..].to_vec();
                    rot.extend_from_slice(&c[..m]);
                    rot
                })
                .collect();
            cycles.sort_by_key(|c| c.first().map(|x| (x.arc, !x.forward)));
            let k = r.cycles.iter().flat_map(|c| c.iter()).map(key).min();
            (k, ri, Region { genus: r.genus, cycles })
        })
        .collect();
    new_regions.sort_by_key(|(k, ri, _)| (k.is_none(), *k, *ri));
    let mut rmap = vec![0; d.regions.len()];
    for (n, (_, o, _)) in new_regions.iter().enumerate() {
        rmap[*o] = n;
    }

    let mut porder: Vec<usize> = (0..d.points.len()).collect();
    porder.sort_by_key(|&p| (rmap[d.points[p].region.0], p));
    let mut pmap = vec![0; d.points.len()];
    for (n, &o) in porder.iter().enumerate() {
        pmap[o] = n;
    }

    let mut out = Diagram {
        genus: d.genus,
        curves: corder.iter().map(|&c| d.curves[c].clone()).collect(),
        vertices: vorder
            .iter()
            .map(|&v| {
                let x = &d.vertices[v];
                Vertex { alpha: CurveId(cmap[x.alpha.0]), beta: CurveId(cmap[x.beta.0]) }
            })
            .collect(),
        arcs: aorder
            .iter()
            .map(|&a| {
                let x = &d.arcs[a];
                Arc {
                    curve: CurveId(cmap[x.curve.0]),
                    ends: x.ends.map(|(f, t)| (VertexId(vmap[f.0]), VertexId(vmap[t.0]))),
                }
            })
            .collect(),
        regions: new_regions.into_iter().map(|(_, _, r)| r).collect(),
        points: porder.iter().map(|&p| Point { region: RegionId(rmap[d.points[p].region.0]) }).collect(),
        names: Names::default(),
    };
    canonical_names(&mut out);
    (out, Renumbering { curves: cmap, vertices: vmap, arcs: amap, regions: rmap, points: pmap })
}

/// Reindexes curves within each family to 1..n, preserving order.
pub fn compact_indices(d: &mut Diagram) {
    for fam in [Family::Alpha, Family::Beta] {
        for (i, c) in d.family_curves(fam).into_iter().enumerate() {
            d.curves[c.0].index = i + 1;
        }
    }
}
