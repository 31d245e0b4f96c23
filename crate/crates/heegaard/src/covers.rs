//! Cyclic covers of pointed diagrams from integral cohomology classes, and
//! transport of domains between a cover and its base.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::canon::{canonical_names, renumber};
use crate::diagram::*;
use crate::domains::{check_weak_admissibility, decompose, ser_big, Domain};
use crate::error::{Error, Result};
use crate::presentation::intersection_matrix;

/// Integer weights on the beta curves, by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CocycleClass(#[serde(serialize_with = "ser_big")] pub Vec<BigInt>);

impl CocycleClass {
    pub fn from_i64(v: &[i64]) -> Self {
        CocycleClass(v.iter().map(|&x| BigInt::from(x)).collect())
    }
}

/// Integer basis of the classes vanishing on every relator.
pub fn cohomology_basis(d: &Diagram) -> Result<Vec<CocycleClass>> {
    let a = intersection_matrix(d)?;
    Ok(a.transpose().kernel().into_iter().map(CocycleClass).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedCurves {
    pub curve: String,
    pub lifts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub sheets: u64,
    pub cover_genus: u32,
    pub lifted_curve_counts: Vec<LiftedCurves>,
    pub lifted_point_count: usize,
    pub base_admissible: bool,
    pub cover_admissible: bool,
    /// Both the direct check upstairs and the transported witnesses agree with the base.
    pub admissibility_preserved: bool,
}

/// A cover together with its projection on regions.
#[derive(Clone, Debug)]
pub struct Cover {
    pub diagram: Diagram,
    pub report: CoverReport,
    /// Per cover region: `(base region, sheet)`.
    pub region_map: Vec<(RegionId, usize)>,
    pub sheets: usize,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

fn md(x: i64, m: usize) -> usize {
    x.rem_euclid(m as i64) as usize
}

/// The `m`-sheeted cyclic cover dual to `c`.
pub fn cyclic_cover(d: &Diagram, c: &CocycleClass, m: u64) -> Result<Cover> {
    if m < 2 {
        return Err(Error::Sheets(m));
    }
    if d.points.len() != 1 {
        return Err(Error::Points { expected: "1".into(), found: d.points.len() });
    }
    let betas = d.betas();
    if c.0.len() != betas.len() {
        return Err(Error::ClassLength { expected: betas.len(), found: c.0.len() });
    }
    let st = d.structure().map_err(|v| Error::Invalid(v[0].to_string()))?;
    let a = intersection_matrix(d)?;
    for j in 0..a.cols() {
        let s: BigInt = (0..a.rows()).map(|i| &c.0[i] * &a[(i, j)]).sum();
        if !s.is_zero() {
            return Err(Error::NotCocycle { relator: j + 1 });
        }
    }
    let mb = BigInt::from(m);
    let h = c.0.iter().fold(mb.clone(), |acc, x| acc.gcd(x));
    if h != BigInt::from(1) {
        return Err(Error::DisconnectedCover { generator: h.to_u64().unwrap_or(0), sheets: m });
    }
    let m = m as usize;
    let flips = d.beta_flips(&st);
    let mut weight_of_curve = vec![0i64; d.curves.len()];
    for (i, b) in betas.iter().enumerate() {
        let w = c.0[i].mod_floor(&mb).to_i64().unwrap();
        weight_of_curve[b.0] = if flips[b.0] { -w } else { w };
    }
    // crossing arc a from its left region to its right region shifts the sheet by w[a]
    let w: Vec<i64> = d.arcs.iter().map(|x| weight_of_curve[x.curve.0]).collect();

    // gauge: offsets along a breadth-first tree from the marked region
    let nr = d.regions.len();
    let root = d.points[0].region.0;
    let mut off: Vec<Option<i64>> = vec![None; nr];
    off[root] = Some(0);
    let mut q = VecDeque::from([root]);
    while let Some(r) = q.pop_front() {
        for cyc in &d.regions[r].cycles {
            for &x in cyc {
                let other = st.region_of(x.rev()).0;
                if off[other].is_none() {
                    let step = if x.forward { w[x.arc.0] } else { -w[x.arc.0] };
                    off[other] = Some(off[r].unwrap() + step);
                    q.push_back(other);
                }
            }
        }
    }
    let off: Vec<i64> = off
        .into_iter()
        .map(|o| o.ok_or_else(|| Error::Invalid("regions are not connected".into())))
        .collect::<Result<_>>()?;
    let shift: Vec<usize> = (0..d.arcs.len())
        .map(|x| md(w[x] + off[st.left(ArcId(x)).0] - off[st.right(ArcId(x)).0], m))
        .collect();

    let arc_lift = |x: usize, s: usize| x * m + s;
    // lifted dart of `x` seen from region copy `s` on its left
    let lift_dart = |x: Dart, s: usize| -> Dart {
        let left = if x.forward { s } else { md(s as i64 - shift[x.arc.0] as i64, m) };
        Dart::new(ArcId(arc_lift(x.arc.0, left)), x.forward)
    };
    let end = |x: Dart, head: bool| x.arc.0 * 2 + usize::from(head == x.forward);

    let na = d.arcs.len() * m;
    let mut dsu = Dsu((0..2 * na).collect());
    for reg in &d.regions {
        for s in 0..m {
            for cyc in &reg.cycles {
                for i in 0..cyc.len() {
                    let (x, y) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                    if d.arcs[x.arc.0].is_closed() {
                        continue;
                    }
                    dsu.union(end(lift_dart(x, s), true), end(lift_dart(y, s), false));
                }
            }
        }
    }
    // name each lifted vertex by its base vertex and the sheet of its alpha-out arc
    let mut vid = vec![usize::MAX; 2 * na];
    let mut members = vec![0usize; 2 * na];
    for x in 0..d.arcs.len() {
        let Some((from, _)) = d.arcs[x].ends else { continue };
        for s in 0..m {
            for e in [0, 1] {
                let root = dsu.find(arc_lift(x, s) * 2 + e);
                members[root] += 1;
            }
            if d.family_of_arc(ArcId(x)) == Family::Alpha {
                let root = dsu.find(arc_lift(x, s) * 2);
                if vid[root] != usize::MAX {
                    return Err(Error::Internal("two alpha arcs leave one lifted vertex".into()));
                }
                vid[root] = from.0 * m + s;
            }
        }
    }
    let mut arcs = Vec::with_capacity(na);
    for x in 0..d.arcs.len() {
        for s in 0..m {
            let ends = match d.arcs[x].ends {
                None => None,
                Some(_) => {
                    let t = dsu.find(arc_lift(x, s) * 2);
                    let h = dsu.find(arc_lift(x, s) * 2 + 1);
                    if vid[t] == usize::MAX || vid[h] == usize::MAX || members[t] != 4 || members[h] != 4 {
                        return Err(Error::Internal("lifted germs do not close up at a vertex".into()));
                    }
                    Some((VertexId(vid[t]), VertexId(vid[h])))
                }
            };
            arcs.push(Arc { curve: CurveId(usize::MAX), ends });
        }
    }
    let mut vertices = Vec::with_capacity(d.vertices.len() * m);
    for v in &d.vertices {
        for _ in 0..m {
            vertices.push(v.clone());
        }
    }

    // lifted curves: follow each copy around
    let mut out_arc = vec![[usize::MAX; 2]; vertices.len()];
    for (i, x) in arcs.iter().enumerate() {
        if let Some((f, _)) = x.ends {
            let fam = d.family_of_arc(ArcId(i / m));
            out_arc[f.0][usize::from(fam == Family::Beta)] = i;
        }
    }
    let mut curves = Vec::new();
    let mut lifted_counts = Vec::new();
    for fam in [Family::Alpha, Family::Beta] {
        let fc = d.family_curves(fam);
        for (j, &cv) in fc.iter().enumerate() {
            let seq = &st.curve_arcs[cv.0];
            let mut copies = 0;
            for s0 in 0..m {
                let start = arc_lift(seq[0].0, s0);
                if arcs[start].curve.0 != usize::MAX {
                    continue;
                }
                let id = curves.len();
                curves.push(Curve { family: fam, index: copies * fc.len() + j + 1 });
                copies += 1;
                let mut cur = start;
                let mut steps = 0;
                loop {
                    arcs[cur].curve = CurveId(id);
                    steps += 1;
                    let Some((_, h)) = arcs[cur].ends else { break };
                    cur = out_arc[h.0][usize::from(fam == Family::Beta)];
                    if cur == start {
                        break;
                    }
                    if arcs[cur].curve.0 != usize::MAX || steps > seq.len() {
                        return Err(match fam {
                            Family::Alpha => Error::NotCocycle { relator: j + 1 },
                            Family::Beta => Error::Internal("beta lift does not close up".into()),
                        });
                    }
                }
                if steps != seq.len() {
                    return Err(match fam {
                        Family::Alpha => Error::NotCocycle { relator: j + 1 },
                        Family::Beta => Error::Internal("beta lift does not close up".into()),
                    });
                }
            }
            lifted_counts.push(LiftedCurves { curve: d.curve_name(cv).to_string(), lifts: copies });
        }
    }

    let mut regions = Vec::with_capacity(nr * m);
    for reg in &d.regions {
        for s in 0..m {
            regions.push(Region {
                genus: reg.genus,
                cycles: reg.cycles.iter().map(|cyc| cyc.iter().map(|&x| lift_dart(x, s)).collect()).collect(),
            });
        }
    }
    let points: Vec<Point> = (0..m).map(|s| Point { region: RegionId(root * m + s) }).collect();
    let genus = (m as u32) * d.genus + 1 - m as u32;
    let mut up = Diagram { genus, curves, vertices, arcs, regions, points, names: Names::default() };
    // fix vertex curve references to the lifted copies
    for v in up.vertices.iter_mut() {
        v.alpha = CurveId(usize::MAX);
        v.beta = CurveId(usize::MAX);
    }
    for x in &up.arcs {
        if let Some((f, t)) = x.ends {
            let fam = up.curves[x.curve.0].family;
            for v in [f, t] {
                match fam {
                    Family::Alpha => up.vertices[v.0].alpha = x.curve,
                    Family::Beta => up.vertices[v.0].beta = x.curve,
                }
            }
        }
    }
    canonical_names(&mut up);
    if let Err(v) = up.structure() {
        return Err(Error::Internal(format!("cover is unsound: {}", v[0])));
    }
    let (up, ren) = renumber(&up);
    let report_v = up.validate();
    if let Some(v) = report_v.violations.first() {
        return Err(Error::Internal(format!("cover is invalid: {}", v)));
    }
    let mut region_map = vec![(RegionId(0), 0); up.regions.len()];
    for old in 0..nr * m {
        region_map[ren.regions[old]] = (RegionId(old / m), old % m);
    }
    let mut cover = Cover {
        diagram: up,
        report: CoverReport {
            sheets: m as u64,
            cover_genus: genus,
            lifted_curve_counts: lifted_counts,
            lifted_point_count: m,
            base_admissible: false,
            cover_admissible: false,
            admissibility_preserved: false,
        },
        region_map,
        sheets: m,
    };

    let base = check_weak_admissibility(d)?;
    let upstairs = check_weak_admissibility(&cover.diagram)?;
    // second check: transport witnesses in both directions
    let transported = match (&base.witness, &upstairs.witness) {
        (Some(wb), _) => is_positive_periodic(&cover.diagram, &pullback(&cover, wb)),
        (None, Some(wu)) => !is_positive_periodic(d, &pushforward(&cover, d.regions.len(), wu)),
        (None, None) => true,
    };
    cover.report.base_admissible = base.admissible;
    cover.report.cover_admissible = upstairs.admissible;
    cover.report.admissibility_preserved = base.admissible == upstairs.admissible && transported;
    Ok(cover)
}

fn is_positive_periodic(d: &Diagram, dom: &Domain) -> bool {
    let Ok(st) = d.structure() else { return false };
    !dom.is_zero()
        && dom.is_nonnegative()
        && d.marked_regions().iter().all(|r| dom.0[r.0].is_zero())
        && decompose(d, &st, &d.beta_flips(&st), dom).is_periodic
}

/// Domain upstairs taking each region's coefficient on all of its lifts.
pub fn pullback(cover: &Cover, dom: &Domain) -> Domain {
    Domain(cover.region_map.iter().map(|(r, _)| dom.0[r.0].clone()).collect())
}

/// Domain downstairs summing the coefficients over the lifts of each region.
pub fn pushforward(cover: &Cover, base_regions: usize, dom: &Domain) -> Domain {
    let mut out = Domain::zero(base_regions);
    for (i, (r, _)) in cover.region_map.iter().enumerate() {
        out.0[r.0] += &dom.0[i];
    }
    out
}

/// Coefficients of `dom` are all nonnegative and some are positive.
pub fn is_positive(dom: &Domain) -> bool {
    dom.is_nonnegative() && dom.0.iter().any(|x| x.is_positive())
}
