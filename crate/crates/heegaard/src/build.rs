//! Standard diagrams and seeded random diagrams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonical_names, renumber};
use crate::diagram::*;
use crate::moves::finger_raw;

/// A genus-one summand of a standard diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Handle {
    /// Alpha meets beta `p` times with equal signs: S^3 for 1, RP^3 for 2, L(p,1) in general.
    Lens(u32),
    /// Disjoint parallel curves, S^1 x S^2.
    Product,
}

struct Builder {
    d: Diagram,
}

impl Builder {
    fn curve(&mut self, family: Family, index: usize) -> CurveId {
        self.d.curves.push(Curve { family, index });
        CurveId(self.d.curves.len() - 1)
    }
    fn vertex(&mut self, alpha: CurveId, beta: CurveId) -> VertexId {
        self.d.vertices.push(Vertex { alpha, beta });
        VertexId(self.d.vertices.len() - 1)
    }
    fn arc(&mut self, curve: CurveId, ends: Option<(VertexId, VertexId)>) -> ArcId {
        self.d.arcs.push(Arc { curve, ends });
        ArcId(self.d.arcs.len() - 1)
    }
}

fn p(a: ArcId) -> Dart {
    Dart::new(a, true)
}
fn m(a: ArcId) -> Dart {
    Dart::new(a, false)
}

/// Connected sum of the given handles with `points - 1` extra curve pairs
/// carrying the extra marked points. `points == 0` gives an unpointed diagram.
pub fn standard(handles: &[Handle], points: usize) -> Diagram {
    let mut b = Builder {
        d: Diagram {
            genus: handles.len() as u32,
            curves: vec![],
            vertices: vec![],
            arcs: vec![],
            regions: vec![],
            points: vec![],
            names: Names::default(),
        },
    };
    let mut hub: Vec<Vec<Dart>> = Vec::new();
    let mut rest: Vec<(Vec<Vec<Dart>>, Option<()>)> = Vec::new();
    for (i, h) in handles.iter().enumerate() {
        let al = b.curve(Family::Alpha, i + 1);
        let be = b.curve(Family::Beta, i + 1);
        match *h {
            Handle::Lens(n) => {
                let n = n.max(1) as usize;
                let vs: Vec<VertexId> = (0..n).map(|_| b.vertex(al, be)).collect();
                let a: Vec<ArcId> = (0..n).map(|j| b.arc(al, Some((vs[j], vs[(j + 1) % n])))).collect();
                let t: Vec<ArcId> = (0..n).map(|j| b.arc(be, Some((vs[j], vs[(j + 1) % n])))).collect();
                for j in 0..n {
                    let c = vec![p(a[j]), p(t[(j + 1) % n]), m(a[(j + 1) % n]), m(t[j])];
                    if j == 0 {
                        hub.push(c);
                    } else {
                        rest.push((vec![c], None));
                    }
                }
            }
            Handle::Product => {
                let a = b.arc(al, None);
                let t = b.arc(be, None);
                hub.push(vec![p(a)]);
                hub.push(vec![m(t)]);
                rest.push((vec![vec![p(t)], vec![m(a)]], None));
            }
        }
    }
    let g = handles.len();
    let mut cores = Vec::new();
    for k in 1..points.max(1) {
        let al = b.curve(Family::Alpha, g + k);
        let be = b.curve(Family::Beta, g + k);
        let u1 = b.vertex(al, be);
        let u2 = b.vertex(al, be);
        let p1 = b.arc(al, Some((u1, u2)));
        let p2 = b.arc(al, Some((u2, u1)));
        let q1 = b.arc(be, Some((u2, u1)));
        let q2 = b.arc(be, Some((u1, u2)));
        cores.push(vec![p(p2), p(q2)]);
        rest.push((vec![vec![p(p1), m(q2)]], None));
        rest.push((vec![vec![p(q1), m(p2)]], None));
        hub.push(vec![m(q1), m(p1)]);
    }
    b.d.regions.push(Region { genus: 0, cycles: hub });
    if points >= 1 {
        b.d.points.push(Point { region: RegionId(0) });
    }
    for c in cores {
        b.d.regions.push(Region { genus: 0, cycles: vec![c] });
        b.d.points.push(Point { region: RegionId(b.d.regions.len() - 1) });
    }
    for (cycles, _) in rest {
        b.d.regions.push(Region { genus: 0, cycles });
    }
    canonical_names(&mut b.d);
    renumber(&b.d).0
}

pub fn standard_sphere(genus: u32, points: usize) -> Diagram {
    standard(&vec![Handle::Lens(1); genus as usize], points)
}

/// Candidate finger moves: every (alpha dart, beta dart) pair on a common
/// region, in a deterministic order, each usable in both directions.
pub fn finger_candidates(d: &Diagram) -> Vec<(Dart, Dart)> {
    let mut out = Vec::new();
    for r in &d.regions {
        let darts: Vec<Dart> = r.cycles.iter().flatten().copied().collect();
        for &x in &darts {
            if d.family_of_arc(x.arc) != Family::Alpha {
                continue;
            }
            for &y in &darts {
                if d.family_of_arc(y.arc) == Family::Beta {
                    out.push((x, y));
                }
            }
        }
    }
    out
}

/// Applies `budget` seeded random finger moves in place and returns how many were applied.
pub fn random_fingers(d: &mut Diagram, budget: usize, rng: &mut ChaCha8Rng) -> usize {
    let mut applied = 0;
    for _ in 0..budget {
        let cands = finger_candidates(d);
        if cands.is_empty() {
            break;
        }
        let (x, y) = cands[rng.gen_range(0..cands.len())];
        let (launch, target) = if rng.gen_bool(0.5) { (x, y) } else { (y, x) };
        finger_raw(d, launch, target).expect("candidate pairs share a region");
        applied += 1;
    }
    applied
}

/// Standard genus-`genus` diagram with `points` marked points, perturbed by
/// `budget` random finger moves.
pub fn random_diagram(genus: u32, points: usize, budget: usize, seed: u64) -> Diagram {
    random_from(&vec![Handle::Lens(1); genus as usize], points, budget, seed)
}

/// As [`random_diagram`] but starting from arbitrary handles.
pub fn random_from(handles: &[Handle], points: usize, budget: usize, seed: u64) -> Diagram {
    let mut d = standard(handles, points);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_fingers(&mut d, budget, &mut rng);
    renumber(&d).0
}
