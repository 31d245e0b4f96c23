//! Combinatorial diagrams: curves, vertices, arcs, regions and marked points.
//!
//! Arcs are stored oriented along their curve. A region boundary cycle is a
//! cyclic list of darts traversed with the region on the left.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

macro_rules! id_type {
    ($name:ident) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        pub struct $name(pub usize);
    };
}

id_type!(CurveId);
id_type!(VertexId);
id_type!(ArcId);
id_type!(RegionId);
id_type!(PointId);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Alpha,
    Beta,
}

impl Family {
    pub fn other(self) -> Family {
        match self {
            Family::Alpha => Family::Beta,
            Family::Beta => Family::Alpha,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Alpha => "alpha",
            Family::Beta => "beta",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub family: Family,
    /// 1-based position within the family.
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub alpha: CurveId,
    pub beta: CurveId,
}

impl Vertex {
    pub fn on(&self, family: Family) -> CurveId {
        match family {
            Family::Alpha => self.alpha,
            Family::Beta => self.beta,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub curve: CurveId,
    /// `(from, to)` along the curve orientation, `None` for a closed arc.
    pub ends: Option<(VertexId, VertexId)>,
}

impl Arc {
    pub fn is_closed(&self) -> bool {
        self.ends.is_none()
    }
}

/// An arc traversed in one of its two directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub arc: ArcId,
    pub forward: bool,
}

impl Dart {
    pub fn new(arc: ArcId, forward: bool) -> Self {
        Dart { arc, forward }
    }
    pub fn fwd(arc: ArcId) -> Self {
        Dart { arc, forward: true }
    }
    pub fn rev(self) -> Self {
        Dart { arc: self.arc, forward: !self.forward }
    }
    /// Same dart if `keep`, reversed otherwise.
    pub fn oriented(self, keep: bool) -> Self {
        if keep {
            self
        } else {
            self.rev()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub genus: u32,
    pub cycles: Vec<Vec<Dart>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub region: RegionId,
}

/// Display names of every cell, in id order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Names {
    pub curves: Vec<String>,
    pub vertices: Vec<String>,
    pub arcs: Vec<String>,
    pub regions: Vec<String>,
    pub points: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub genus: u32,
    pub curves: Vec<Curve>,
    pub vertices: Vec<Vertex>,
    pub arcs: Vec<Arc>,
    pub regions: Vec<Region>,
    pub points: Vec<Point>,
    pub names: Names,
}

/// Germ slots at a vertex.
pub const ALPHA_OUT: usize = 0;
pub const ALPHA_IN: usize = 1;
pub const BETA_OUT: usize = 2;
pub const BETA_IN: usize = 3;

pub fn germ_slot(family: Family, outgoing: bool) -> usize {
    match (family, outgoing) {
        (Family::Alpha, true) => ALPHA_OUT,
        (Family::Alpha, false) => ALPHA_IN,
        (Family::Beta, true) => BETA_OUT,
        (Family::Beta, false) => BETA_IN,
    }
}

pub fn slot_family(slot: usize) -> Family {
    if slot < 2 {
        Family::Alpha
    } else {
        Family::Beta
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "points", rename_all = "lowercase")]
pub enum Kind {
    Unpointed,
    Pointed(usize),
}

/// Incidence data derived from a structurally sound diagram.
#[derive(Clone, Debug)]
pub struct Structure {
    /// Per arc: location `(region, cycle, position)` of the forward and backward dart.
    pub side: Vec<[(RegionId, usize, usize); 2]>,
    /// Per vertex: the arc at each germ slot.
    pub germ: Vec<[ArcId; 4]>,
    /// Per vertex: counterclockwise successor of each germ slot.
    pub ccw: Vec<[usize; 4]>,
    /// Per curve: its arcs in curve order, starting from the lowest-id arc.
    pub curve_arcs: Vec<Vec<ArcId>>,
}

impl Structure {
    pub fn left(&self, arc: ArcId) -> RegionId {
        self.side[arc.0][0].0
    }
    pub fn right(&self, arc: ArcId) -> RegionId {
        self.side[arc.0][1].0
    }
    /// Region on the left of a dart.
    pub fn region_of(&self, d: Dart) -> RegionId {
        self.side[d.arc.0][if d.forward { 0 } else { 1 }].0
    }
    pub fn cw(&self, v: VertexId, slot: usize) -> usize {
        let r = &self.ccw[v.0];
        (0..4).find(|&s| r[s] == slot).expect("rotation is a permutation")
    }
    /// Raw crossing sign from stored orientations: +1 iff the beta-outgoing
    /// germ immediately follows the alpha-outgoing germ counterclockwise.
    pub fn raw_sign(&self, v: VertexId) -> i32 {
        if self.ccw[v.0][ALPHA_OUT] == BETA_OUT {
            1
        } else {
            -1
        }
    }
}

impl Diagram {
    pub fn curve_name(&self, c: CurveId) -> &str {
        &self.names.curves[c.0]
    }

    pub fn family_of_arc(&self, a: ArcId) -> Family {
        self.curves[self.arcs[a.0].curve.0].family
    }

    pub fn family_curves(&self, family: Family) -> Vec<CurveId> {
        let mut v: Vec<CurveId> = (0..self.curves.len())
            .map(CurveId)
            .filter(|c| self.curves[c.0].family == family)
            .collect();
        v.sort_by_key(|c| self.curves[c.0].index);
        v
    }

    pub fn alphas(&self) -> Vec<CurveId> {
        self.family_curves(Family::Alpha)
    }

    pub fn betas(&self) -> Vec<CurveId> {
        self.family_curves(Family::Beta)
    }

    pub fn kind(&self) -> Kind {
        if self.points.is_empty() {
            Kind::Unpointed
        } else {
            Kind::Pointed(self.points.len())
        }
    }

    /// Vertex where a dart ends and the germ slot it arrives through.
    pub fn head(&self, d: Dart) -> Option<(VertexId, usize)> {
        let arc = &self.arcs[d.arc.0];
        let fam = self.curves[arc.curve.0].family;
        arc.ends.map(|(f, t)| {
            if d.forward {
                (t, germ_slot(fam, false))
            } else {
                (f, germ_slot(fam, true))
            }
        })
    }

    /// Vertex where a dart starts and the germ slot it leaves through.
    pub fn tail(&self, d: Dart) -> Option<(VertexId, usize)> {
        self.head(d.rev())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let segs = self.arcs.iter().filter(|a| !a.is_closed()).count() as i64;
        let faces: i64 = self
            .regions
            .iter()
            .map(|r| 2 - 2 * r.genus as i64 - r.cycles.len() as i64)
            .sum();
        self.vertices.len() as i64 - segs + faces
    }

    pub fn marked_regions(&self) -> Vec<RegionId> {
        let mut v: Vec<RegionId> = self.points.iter().map(|p| p.region).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Region holding the lowest-id marked point.
    pub fn base_region(&self) -> Option<RegionId> {
        self.points.first().map(|p| p.region)
    }

    /// Incidence data, or the list of structural violations.
    pub fn structure(&self) -> Result<Structure, Vec<Violation>> {
        let mut out = Vec::new();
        let side = self.check_sides(&mut out);
        let germ = self.check_germs(&mut out);
        if !out.is_empty() {
            return Err(out);
        }
        let side = side.expect("checked");
        let germ = germ.expect("checked");
        let ccw = self.check_corners(&mut out);
        let curve_arcs = self.check_curves(&germ, &mut out);
        if !out.is_empty() {
            return Err(out);
        }
        Ok(Structure { side, germ, ccw: ccw.expect("checked"), curve_arcs })
    }

    fn check_sides(&self, out: &mut Vec<Violation>) -> Option<Vec<[(RegionId, usize, usize); 2]>> {
        let mut seen: Vec<[Vec<(RegionId, usize, usize)>; 2]> =
            vec![[Vec::new(), Vec::new()]; self.arcs.len()];
        let mut ok = true;
        for (ri, r) in self.regions.iter().enumerate() {
            for (ci, cyc) in r.cycles.iter().enumerate() {
                if cyc.is_empty() {
                    out.push(Violation::new(
                        ViolationKind::Corner,
                        format!("region {} has an empty boundary cycle", self.names.regions[ri]),
                    ));
                    ok = false;
                }
                for (pi, d) in cyc.iter().enumerate() {
                    if d.arc.0 >= self.arcs.len() {
                        out.push(Violation::new(ViolationKind::Reference, "dart refers to a missing arc"));
                        ok = false;
                        continue;
                    }
                    seen[d.arc.0][if d.forward { 0 } else { 1 }].push((RegionId(ri), ci, pi));
                }
            }
        }
        let mut side = Vec::with_capacity(self.arcs.len());
        for (ai, s) in seen.iter().enumerate() {
            if s[0].len() != 1 || s[1].len() != 1 {
                out.push(Violation::new(
                    ViolationKind::ArcSignParity,
                    format!(
                        "arc {} appears {} times with + and {} times with -",
                        self.names.arcs[ai],
                        s[0].len(),
                        s[1].len()
                    ),
                ));
                ok = false;
                side.push([(RegionId(0), 0, 0); 2]);
            } else {
                side.push([s[0][0], s[1][0]]);
            }
        }
        if ok {
            for (ai, a) in self.arcs.iter().enumerate() {
                if a.is_closed() {
                    for s in side[ai] {
                        if self.regions[s.0 .0].cycles[s.1].len() != 1 {
                            out.push(Violation::new(
                                ViolationKind::Corner,
                                format!("closed arc {} must form a boundary cycle alone", self.names.arcs[ai]),
                            ));
                            ok = false;
                        }
                    }
                }
            }
        }
        ok.then_some(side)
    }

    fn check_germs(&self, out: &mut Vec<Violation>) -> Option<Vec<[ArcId; 4]>> {
        let mut germs: Vec<[Vec<ArcId>; 4]> = vec![Default::default(); self.vertices.len()];
        let mut ok = true;
        for (ai, a) in self.arcs.iter().enumerate() {
            let c = &self.curves[a.curve.0];
            match a.ends {
                None => {
                    let n = self.arcs.iter().filter(|b| b.curve == a.curve).count();
                    if n != 1 {
                        out.push(Violation::new(
                            ViolationKind::CurveNotSimple,
                            format!("closed arc {} shares its curve with other arcs", self.names.arcs[ai]),
                        ));
                        ok = false;
                    }
                }
                Some((f, t)) => {
                    for (v, outgoing) in [(f, true), (t, false)] {
                        let vx = &self.vertices[v.0];
                        if vx.on(c.family) != a.curve {
                            out.push(Violation::new(
                                ViolationKind::Germ,
                                format!(
                                    "arc {} on curve {} ends at vertex {} which is not on that curve",
                                    self.names.arcs[ai],
                                    self.names.curves[a.curve.0],
                                    self.names.vertices[v.0]
                                ),
                            ));
                            ok = false;
                        }
                        germs[v.0][germ_slot(c.family, outgoing)].push(ArcId(ai));
                    }
                }
            }
        }
        let mut res = Vec::with_capacity(self.vertices.len());
        for (vi, g) in germs.iter().enumerate() {
            if g.iter().any(|s| s.len() != 1) {
                out.push(Violation::new(
                    ViolationKind::Germ,
                    format!("vertex {} is not 4-valent with one arc per germ", self.names.vertices[vi]),
                ));
                ok = false;
                res.push([ArcId(0); 4]);
            } else {
                res.push([g[0][0], g[1][0], g[2][0], g[3][0]]);
            }
        }
        ok.then_some(res)
    }

    fn check_corners(&self, out: &mut Vec<Violation>) -> Option<Vec<[usize; 4]>> {
        let mut ccw: Vec<[Option<usize>; 4]> = vec![[None; 4]; self.vertices.len()];
        let mut ok = true;
        for (ri, r) in self.regions.iter().enumerate() {
            for cyc in &r.cycles {
                if cyc.len() == 1 && self.arcs[cyc[0].arc.0].is_closed() {
                    continue;
                }
                for i in 0..cyc.len() {
                    let d = cyc[i];
                    let e = cyc[(i + 1) % cyc.len()];
                    let (h, t) = match (self.head(d), self.tail(e)) {
                        (Some(h), Some(t)) => (h, t),
                        _ => {
                            out.push(Violation::new(
                                ViolationKind::Corner,
                                format!("closed arc inside a longer cycle of region {}", self.names.regions[ri]),
                            ));
                            ok = false;
                            continue;
                        }
                    };
                    if h.0 != t.0 {
                        out.push(Violation::new(
                            ViolationKind::Corner,
                            format!(
                                "region {}: consecutive arcs {} and {} do not meet at a vertex",
                                self.names.regions[ri],
                                self.names.arcs[d.arc.0],
                                self.names.arcs[e.arc.0]
                            ),
                        ));
                        ok = false;
                        continue;
                    }
                    let slot = &mut ccw[h.0 .0][t.1];
                    if slot.is_some() {
                        out.push(Violation::new(
                            ViolationKind::Rotation,
                            format!("vertex {} has a repeated corner", self.names.vertices[h.0 .0]),
                        ));
                        ok = false;
                    }
                    *slot = Some(h.1);
                }
            }
        }
        let mut res = Vec::with_capacity(self.vertices.len());
        for (vi, r) in ccw.iter().enumerate() {
            let name = &self.names.vertices[vi];
            if r.iter().any(|s| s.is_none()) {
                out.push(Violation::new(
                    ViolationKind::Rotation,
                    format!("vertex {} does not have four corners", name),
                ));
                ok = false;
                res.push([0; 4]);
                continue;
            }
            let r = [r[0].unwrap(), r[1].unwrap(), r[2].unwrap(), r[3].unwrap()];
            let mut s = 0;
            let mut len = 0;
            loop {
                s = r[s];
                len += 1;
                if s == 0 || len > 4 {
                    break;
                }
            }
            let alternates = (0..4).all(|g| slot_family(g) != slot_family(r[g]));
            if len != 4 || !alternates {
                out.push(Violation::new(
                    ViolationKind::Rotation,
                    format!("germs at vertex {} do not alternate alpha/beta in one cycle", name),
                ));
                ok = false;
            }
            res.push(r);
        }
        ok.then_some(res)
    }

    fn check_curves(&self, germ: &[[ArcId; 4]], out: &mut Vec<Violation>) -> Vec<Vec<ArcId>> {
        let mut per_curve: Vec<Vec<ArcId>> = vec![Vec::new(); self.curves.len()];
        for (ai, a) in self.arcs.iter().enumerate() {
            per_curve[a.curve.0].push(ArcId(ai));
        }
        let mut res = Vec::with_capacity(self.curves.len());
        for (ci, arcs) in per_curve.iter().enumerate() {
            let fam = self.curves[ci].family;
            if arcs.is_empty() {
                out.push(Violation::new(
                    ViolationKind::CurveNotSimple,
                    format!("curve {} has no arcs", self.names.curves[ci]),
                ));
                res.push(Vec::new());
                continue;
            }
            let start = arcs[0];
            let mut seq = vec![start];
            let mut cur = start;
            while let Some((_, to)) = self.arcs[cur.0].ends {
                let next = germ[to.0][germ_slot(fam, true)];
                if next == start || seq.len() > arcs.len() {
                    break;
                }
                seq.push(next);
                cur = next;
            }
            if seq.len() != arcs.len() {
                out.push(Violation::new(
                    ViolationKind::CurveNotSimple,
                    format!("arcs of curve {} do not form a single cycle", self.names.curves[ci]),
                ));
            }
            res.push(seq);
        }
        res
    }

    /// Regions grouped into components after cutting along `family`
    /// (regions stay joined across arcs of the other family).
    pub fn cut_components(&self, st: &Structure, family: Family) -> Vec<Vec<RegionId>> {
        let n = self.regions.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (ai, a) in self.arcs.iter().enumerate() {
            if self.curves[a.curve.0].family != family {
                let l = st.side[ai][0].0 .0;
                let r = st.side[ai][1].0 .0;
                adj[l].push(r);
                adj[r].push(l);
            }
        }
        components(n, &adj)
            .into_iter()
            .map(|c| c.into_iter().map(RegionId).collect())
            .collect()
    }

    /// Genus of each cut component, in the order of `cut_components`.
    pub fn cut_genera(&self, st: &Structure, family: Family, comps: &[Vec<RegionId>]) -> Vec<i64> {
        let mut comp_of = vec![0usize; self.regions.len()];
        for (ci, c) in comps.iter().enumerate() {
            for r in c {
                comp_of[r.0] = ci;
            }
        }
        let mut chi = vec![0i64; comps.len()];
        let mut bdry = vec![0i64; comps.len()];
        for (ri, r) in self.regions.iter().enumerate() {
            chi[comp_of[ri]] += 2 - 2 * r.genus as i64 - r.cycles.len() as i64;
        }
        for (ai, a) in self.arcs.iter().enumerate() {
            if self.curves[a.curve.0].family != family && !a.is_closed() {
                chi[comp_of[st.left(ArcId(ai)).0]] -= 1;
            }
        }
        for c in self.family_curves(family) {
            let first = st.curve_arcs[c.0][0];
            bdry[comp_of[st.left(first).0]] += 1;
            bdry[comp_of[st.right(first).0]] += 1;
        }
        (0..comps.len()).map(|i| (2 - bdry[i] - chi[i]) / 2).collect()
    }

    /// Regions connected across all arcs.
    pub fn region_components(&self, st: &Structure) -> usize {
        let n = self.regions.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for ai in 0..self.arcs.len() {
            let l = st.side[ai][0].0 .0;
            let r = st.side[ai][1].0 .0;
            adj[l].push(r);
            adj[r].push(l);
        }
        components(n, &adj).len()
    }

    /// Default orientation flags for beta curves: `true` when the stored
    /// orientation is reversed so that the lowest-id vertex on the curve is +1.
    pub fn beta_flips(&self, st: &Structure) -> Vec<bool> {
        let mut flip = vec![false; self.curves.len()];
        let mut seen = vec![false; self.curves.len()];
        for (vi, v) in self.vertices.iter().enumerate() {
            if !seen[v.beta.0] {
                seen[v.beta.0] = true;
                flip[v.beta.0] = st.raw_sign(VertexId(vi)) < 0;
            }
        }
        flip
    }

    /// Crossing signs under the default orientations.
    pub fn signs(&self, st: &Structure) -> Vec<i32> {
        let flip = self.beta_flips(st);
        (0..self.vertices.len())
            .map(|vi| {
                let s = st.raw_sign(VertexId(vi));
                if flip[self.vertices[vi].beta.0] {
                    -s
                } else {
                    s
                }
            })
            .collect()
    }

    /// Structural checks plus the Heegaard conditions.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport {
            violations: Vec::new(),
            genus: self.genus,
            computed_genus: None,
            alpha_cut_components: None,
            beta_cut_components: None,
            alpha_planar: None,
            beta_planar: None,
            kind: self.kind(),
        };
        let st = match self.structure() {
            Ok(st) => st,
            Err(v) => {
                report.violations = v;
                return report;
            }
        };
        let chi = self.euler_characteristic();
        if chi % 2 == 0 && chi <= 2 {
            report.computed_genus = Some(((2 - chi) / 2) as u32);
        }
        if chi != 2 - 2 * self.genus as i64 {
            report.violations.push(Violation::new(
                ViolationKind::Euler,
                format!("Euler characteristic {} does not match genus {}", chi, self.genus),
            ));
        }
        if self.regions.is_empty() || self.region_components(&st) != 1 {
            report.violations.push(Violation::new(ViolationKind::Disconnected, "surface is not connected"));
        }
        for (ri, r) in self.regions.iter().enumerate() {
            if r.cycles.is_empty() && self.regions.len() > 1 {
                report.violations.push(Violation::new(
                    ViolationKind::Disconnected,
                    format!("region {} has no boundary but is not the whole surface", self.names.regions[ri]),
                ));
            }
        }
        let l = self.points.len();
        let expected = self.genus as usize + l.max(1) - 1;
        for fam in [Family::Alpha, Family::Beta] {
            let n = self.family_curves(fam).len();
            if n != expected {
                report.violations.push(Violation::new(
                    ViolationKind::FamilyCount,
                    format!("{} family has {} curves, expected {}", fam.as_str(), n, expected),
                ));
            }
            let comps = self.cut_components(&st, fam);
            let genera = self.cut_genera(&st, fam, &comps);
            let planar = genera.iter().all(|&h| h == 0);
            if !planar {
                report.violations.push(Violation::new(
                    ViolationKind::CutTopology,
                    format!("cutting along the {} curves leaves a non-planar piece", fam.as_str()),
                ));
            }
            if comps.len() != l.max(1) {
                report.violations.push(Violation::new(
                    ViolationKind::CutTopology,
                    format!("cutting along the {} curves leaves {} pieces, expected {}", fam.as_str(), comps.len(), l.max(1)),
                ));
            } else if l > 0 {
                for c in &comps {
                    let n = self.points.iter().filter(|p| c.contains(&p.region)).count();
                    if n != 1 {
                        report.violations.push(Violation::new(
                            ViolationKind::MarkedPoint,
                            format!("a piece of the {} cut holds {} marked points", fam.as_str(), n),
                        ));
                    }
                }
            }
            match fam {
                Family::Alpha => {
                    report.alpha_cut_components = Some(comps.len());
                    report.alpha_planar = Some(planar);
                }
                Family::Beta => {
                    report.beta_cut_components = Some(comps.len());
                    report.beta_planar = Some(planar);
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Number of intersections on each curve, indexed by curve id.
    pub fn intersection_counts(&self) -> Vec<usize> {
        let mut k = vec![0; self.curves.len()];
        for v in &self.vertices {
            k[v.alpha.0] += 1;
            k[v.beta.0] += 1;
        }
        k
    }
}

pub(crate) fn components(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; n];
    let mut res = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = res.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &w in &adj[u] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    q.push_back(w);
                }
            }
        }
        members.sort();
        res.push(members);
    }
    res
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Reference,
    ArcSignParity,
    Germ,
    Corner,
    Rotation,
    CurveNotSimple,
    Euler,
    Disconnected,
    FamilyCount,
    CutTopology,
    MarkedPoint,
}

impl ViolationKind {
    pub fn code(self) -> &'static str {
        match self {
            ViolationKind::Reference => "E002",
            ViolationKind::ArcSignParity => "E003",
            ViolationKind::Euler => "E004",
            ViolationKind::FamilyCount => "E005",
            ViolationKind::MarkedPoint => "E006",
            ViolationKind::Germ => "E007",
            ViolationKind::Corner => "E008",
            ViolationKind::Rotation => "E009",
            ViolationKind::CurveNotSimple => "E010",
            ViolationKind::Disconnected => "E011",
            ViolationKind::CutTopology => "E012",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::Reference => "dangling reference",
            ViolationKind::ArcSignParity => "arc sign parity",
            ViolationKind::Germ => "vertex germs",
            ViolationKind::Corner => "region corners",
            ViolationKind::Rotation => "vertex rotation",
            ViolationKind::CurveNotSimple => "curve not simple",
            ViolationKind::Euler => "Euler characteristic",
            ViolationKind::Disconnected => "connectivity",
            ViolationKind::FamilyCount => "family count",
            ViolationKind::CutTopology => "cut topology",
            ViolationKind::MarkedPoint => "marked-point placement",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub code: &'static str,
    pub message: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, message: impl Into<String>) -> Self {
        Violation { kind, code: kind.code(), message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.code, self.kind.label(), self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub genus: u32,
    pub computed_genus: Option<u32>,
    pub alpha_cut_components: Option<usize>,
    pub beta_cut_components: Option<usize>,
    pub alpha_planar: Option<bool>,
    pub beta_planar: Option<bool>,
    pub kind: Kind,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e{}", if self.forward { '+' } else { '-' }, self.arc.0 + 1)
    }
}
