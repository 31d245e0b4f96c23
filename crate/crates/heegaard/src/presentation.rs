//! Presentations read off along alpha curves, intersection matrices, homology,
//! and detection of short curves.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::diagram::*;
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntegerMatrix};
use crate::reduce::reduce_to_pointed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Letter {
    /// 0-based beta index.
    pub generator: usize,
    pub exponent: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generator_count: usize,
    pub relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn length(&self) -> usize {
        presentation_length(self)
    }
}

fn fmt_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let e = (j - i) as i32 * w[i].exponent;
        let g = w[i].generator + 1;
        parts.push(if e == 1 { format!("u{}", g) } else { format!("u{}^{}", g, e) });
        i = j;
    }
    parts.join(" ")
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generator_count).map(|i| format!("u{}", i)).collect();
        let rels: Vec<String> = self.relators.iter().map(|w| fmt_word(w)).collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

pub fn presentation_length(p: &Presentation) -> usize {
    p.relators.iter().map(|w| w.len().saturating_sub(2)).sum()
}

fn sound(d: &Diagram) -> Result<Structure> {
    d.structure().map_err(|v| Error::Invalid(v[0].to_string()))
}

fn beta_position(d: &Diagram) -> Vec<usize> {
    let mut pos = vec![usize::MAX; d.curves.len()];
    for (i, c) in d.betas().into_iter().enumerate() {
        pos[c.0] = i;
    }
    pos
}

/// Relators read along each alpha curve (by index), starting at the
/// lowest-id vertex on the curve, with default orientations.
pub fn u_beta_presentation(d: &Diagram) -> Result<Presentation> {
    let st = sound(d)?;
    Ok(presentation_with(d, &st, &d.signs(&st)))
}

pub(crate) fn presentation_with(d: &Diagram, st: &Structure, signs: &[i32]) -> Presentation {
    let bpos = beta_position(d);
    let relators = d
        .alphas()
        .into_iter()
        .map(|a| {
            let seq = &st.curve_arcs[a.0];
            if d.arcs[seq[0].0].is_closed() {
                return Vec::new();
            }
            let start = (0..seq.len())
                .min_by_key(|&i| d.arcs[seq[i].0].ends.unwrap().0)
                .unwrap();
            (0..seq.len())
                .map(|k| {
                    let v = d.arcs[seq[(start + k) % seq.len()].0].ends.unwrap().0;
                    Letter { generator: bpos[d.vertices[v.0].beta.0], exponent: signs[v.0] }
                })
                .collect()
        })
        .collect();
    Presentation { generator_count: d.betas().len(), relators }
}

/// Entry `(i, j)` is the signed count of crossings of beta_i with alpha_j.
pub fn intersection_matrix(d: &Diagram) -> Result<IntegerMatrix> {
    let st = sound(d)?;
    Ok(matrix_with(d, &d.signs(&st)))
}

pub(crate) fn matrix_with(d: &Diagram, signs: &[i32]) -> IntegerMatrix {
    let alphas = d.alphas();
    let betas = d.betas();
    let mut apos = vec![0; d.curves.len()];
    for (j, c) in alphas.iter().enumerate() {
        apos[c.0] = j;
    }
    let bpos = beta_position(d);
    let mut m = IntegerMatrix::zeros(betas.len(), alphas.len());
    for (vi, v) in d.vertices.iter().enumerate() {
        m[(bpos[v.beta.0], apos[v.alpha.0])] += signs[vi];
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    #[serde(serialize_with = "crate::domains::ser_big")]
    pub invariant_factors: Vec<BigInt>,
    pub betti_one: usize,
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{}", d)).collect();
        parts.extend(std::iter::repeat("Z".to_string()).take(self.betti_one));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn homology_of_matrix(a: &IntegerMatrix) -> HomologySummary {
    let s = smith_normal_form(a);
    let diag = s.diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    HomologySummary {
        invariant_factors: diag.into_iter().filter(|x| x.abs() > BigInt::one()).collect(),
        betti_one: a.rows() - rank,
    }
}

/// First homology as the cokernel of the intersection matrix; diagrams with
/// several marked points are reduced to one point first.
pub fn first_homology(d: &Diagram) -> Result<HomologySummary> {
    if d.points.len() > 1 {
        let r = reduce_to_pointed(d)?;
        return first_homology(&r);
    }
    Ok(homology_of_matrix(&intersection_matrix(d)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum ShortCase {
    Disjoint,
    SingleCrossing { partner: String, destabilization_candidate: bool },
    TwoOnOneCurve { partner: String },
    TwoOnTwoCurves { partners: [String; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortCurve {
    pub curve: String,
    pub family: Family,
    pub intersections: usize,
    #[serde(flatten)]
    pub case: ShortCase,
}

/// Curves with at most two intersections.
pub fn short_curve_report(d: &Diagram) -> Result<Vec<ShortCurve>> {
    sound(d)?;
    let k = d.intersection_counts();
    let mut out = Vec::new();
    for fam in [Family::Alpha, Family::Beta] {
        for c in d.family_curves(fam) {
            if k[c.0] > 2 {
                continue;
            }
            let partners: Vec<CurveId> = d
                .vertices
                .iter()
                .filter(|v| v.on(fam) == c)
                .map(|v| v.on(fam.other()))
                .collect();
            let name = |x: CurveId| d.curve_name(x).to_string();
            let case = match partners.as_slice() {
                [] => ShortCase::Disjoint,
                [p] => ShortCase::SingleCrossing { partner: name(*p), destabilization_candidate: k[p.0] == 1 },
                [p, q] if p == q => ShortCase::TwoOnOneCurve { partner: name(*p) },
                [p, q] => ShortCase::TwoOnTwoCurves { partners: [name(*p), name(*q)] },
                _ => unreachable!(),
            };
            out.push(ShortCurve { curve: name(c), family: fam, intersections: k[c.0], case });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionStats {
    pub g: u32,
    pub k_per_alpha: Vec<usize>,
    pub k_per_beta: Vec<usize>,
    pub k: usize,
    pub k_min: usize,
    pub o_alpha: usize,
    pub o_beta: usize,
}

pub fn intersection_stats(d: &Diagram) -> IntersectionStats {
    let k = d.intersection_counts();
    let ka: Vec<usize> = d.alphas().iter().map(|c| k[c.0]).collect();
    let kb: Vec<usize> = d.betas().iter().map(|c| k[c.0]).collect();
    IntersectionStats {
        g: d.genus,
        k: d.vertices.len(),
        k_min: ka.iter().copied().min().unwrap_or(0),
        o_alpha: ka.iter().filter(|&&x| x == 0).count(),
        o_beta: kb.iter().filter(|&&x| x == 0).count(),
        k_per_alpha: ka,
        k_per_beta: kb,
    }
}

/// Signed generator counts of a relator.
pub fn abelianize(word: &[Letter], generators: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); generators];
    for l in word {
        v[l.generator] += l.exponent;
    }
    v
}
