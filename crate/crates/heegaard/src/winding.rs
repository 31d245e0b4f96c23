//! Dual curves, the monotone periodic basis, and winding alpha curves until
//! the diagram is weakly admissible.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::canon::renumber;
use crate::diagram::*;
use crate::domains::{check_weak_admissibility, decompose, lattice_with, Domain};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::moves::finger_raw;
use crate::presentation::{intersection_matrix, intersection_stats};

/// A closed dual curve: leaves `launch`'s region, crosses `betas` in order and
/// closes up across the arc of `launch`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPath {
    pub launch: Dart,
    /// Beta darts crossed, each on the side of the region being left.
    pub betas: Vec<Dart>,
}

/// Shortest dual curve through `alpha` using only beta arcs not in `blocked`.
pub fn shortest_dual(d: &Diagram, st: &Structure, alpha: CurveId, blocked: &[bool]) -> Option<DualPath> {
    let mut out_edges: Vec<Vec<Dart>> = vec![Vec::new(); d.regions.len()];
    for (ai, a) in d.arcs.iter().enumerate() {
        if d.curves[a.curve.0].family == Family::Beta && !blocked[ai] {
            for fwd in [true, false] {
                let x = Dart::new(ArcId(ai), fwd);
                out_edges[st.region_of(x).0].push(x);
            }
        }
    }
    let mut best: Option<DualPath> = None;
    for &a in &st.curve_arcs[alpha.0] {
        let mut cands = [Dart::new(a, true), Dart::new(a, false)];
        cands.sort();
        for launch in cands {
            let from = st.region_of(launch).0;
            let to = st.region_of(launch.rev()).0;
            let mut prev: Vec<Option<Dart>> = vec![None; d.regions.len()];
            let mut seen = vec![false; d.regions.len()];
            seen[from] = true;
            let mut q = VecDeque::from([from]);
            while let Some(r) = q.pop_front() {
                if r == to {
                    break;
                }
                for &x in &out_edges[r] {
                    let w = st.region_of(x.rev()).0;
                    if !seen[w] {
                        seen[w] = true;
                        prev[w] = Some(x);
                        q.push_back(w);
                    }
                }
            }
            if !seen[to] {
                continue;
            }
            let mut betas = Vec::new();
            let mut r = to;
            while r != from {
                let x = prev[r].unwrap();
                betas.push(x);
                r = st.region_of(x).0;
            }
            betas.reverse();
            if best.as_ref().map_or(true, |b| betas.len() < b.betas.len()) {
                best = Some(DualPath { launch, betas });
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualCurve {
    pub alpha: String,
    /// Alternating region / crossed-arc names, starting and ending at the launch region.
    pub path: Vec<String>,
    pub beta_crossings: usize,
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualCurveSystem {
    pub curves: Vec<DualCurve>,
    /// No two curves cross a common arc.
    pub arc_disjoint: bool,
}

/// Dual curves for every alpha curve; later curves avoid the beta arcs used
/// by earlier ones when possible.
pub fn dual_curves(d: &Diagram) -> Result<DualCurveSystem> {
    let st = d.structure().map_err(|v| Error::Invalid(v[0].to_string()))?;
    let stats = intersection_stats(d);
    let kb = (stats.k + stats.o_beta) as u64;
    let mut blocked = vec![false; d.arcs.len()];
    let mut curves = Vec::new();
    let mut disjoint = true;
    for (s, a) in d.alphas().into_iter().enumerate() {
        let path = match shortest_dual(d, &st, a, &blocked) {
            Some(p) => p,
            None => {
                disjoint = false;
                shortest_dual(d, &st, a, &vec![false; d.arcs.len()]).ok_or_else(|| {
                    Error::Internal(format!("beta arcs do not connect the sides of {}", d.curve_name(a)))
                })?
            }
        };
        let mut names = vec![d.names.regions[st.region_of(path.launch).0].clone()];
        for x in &path.betas {
            blocked[x.arc.0] = true;
            names.push(d.names.arcs[x.arc.0].clone());
            names.push(d.names.regions[st.region_of(x.rev()).0].clone());
        }
        names.push(d.names.arcs[path.launch.arc.0].clone());
        names.push(names[0].clone());
        let bound = kb << s.min(62);
        if path.betas.len() as u64 > bound {
            return Err(Error::Verification(format!(
                "dual curve of {} crosses beta {} times, above {}",
                d.curve_name(a),
                path.betas.len(),
                bound
            )));
        }
        curves.push(DualCurve {
            alpha: d.curve_name(a).to_string(),
            path: names,
            beta_crossings: path.betas.len(),
            bound,
        });
    }
    Ok(DualCurveSystem { curves, arc_disjoint: disjoint })
}

/// Kernel vectors `S` of an intersection matrix with a scalar block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixBasis {
    pub rank: usize,
    pub b: usize,
    /// g x b; column i is `R e_{p_i}` on the free columns.
    pub s: IntegerMatrix,
    pub r: BigInt,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Columns not in the block, ascending: the curves to wind.
    pub free: Vec<usize>,
    pub det: BigInt,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Maximal-minor basis of `{X : A X = 0}` for a square matrix `A`.
pub fn monotone_matrix_basis(a: &IntegerMatrix) -> MatrixBasis {
    let g = a.cols();
    let rank = a.rank();
    let b = g - rank;
    if rank == 0 {
        return MatrixBasis {
            rank,
            b,
            s: IntegerMatrix::identity(g),
            r: BigInt::one(),
            rows: vec![],
            cols: vec![],
            free: (0..g).collect(),
            det: BigInt::one(),
        };
    }
    let mut best: Option<(BigInt, Vec<usize>, Vec<usize>, BigInt)> = None;
    let col_sets = combinations(g, rank);
    for rows in combinations(a.rows(), rank) {
        for cols in &col_sets {
            let det = a.submatrix(&rows, cols).det();
            let abs = det.abs();
            if !abs.is_zero() && best.as_ref().map_or(true, |(m, ..)| abs > *m) {
                best = Some((abs, rows.clone(), cols.clone(), det));
            }
        }
    }
    let (r, rows, cols, det) = best.expect("nonzero rank has a nonzero minor");
    let free: Vec<usize> = (0..g).filter(|c| !cols.contains(c)).collect();
    let q = a.submatrix(&rows, &cols);
    let adj = q.adjugate();
    let ap = a.submatrix(&rows, &free);
    let s2 = adj.mul(&ap);
    let mut s = IntegerMatrix::zeros(g, b);
    for (i, &p) in free.iter().enumerate() {
        s[(p, i)] = det.clone();
        for (k, &c) in cols.iter().enumerate() {
            s[(c, i)] = -s2[(k, i)].clone();
        }
    }
    MatrixBasis { rank, b, s, r, rows, cols, free, det }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneBasis {
    pub domains: Vec<Domain>,
    pub matrix: MatrixBasis,
    /// Alpha curves (by position) carrying the scalar coefficient.
    pub wound: Vec<usize>,
}

fn solve_exact(cols: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<BigInt>> {
    // Gaussian elimination over Q on the augmented system
    let n = cols.len();
    let m = rhs.len();
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| BigRational::from_integer(c[i].clone())).collect();
            row.push(BigRational::from_integer(rhs[i].clone()));
            row
        })
        .collect();
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !t[i][c].is_zero()) else { continue };
        t.swap(r, p);
        let pv = t[r][c].clone();
        for x in t[r].iter_mut() {
            *x /= &pv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        piv_cols.push(c);
        r += 1;
    }
    if t[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigInt::zero(); n];
    for (i, &c) in piv_cols.iter().enumerate() {
        let v = &t[i][n];
        if !v.is_integer() {
            return None;
        }
        x[c] = v.to_integer();
    }
    Some(x)
}

/// Periodic domains whose alpha boundaries are the columns of the maximal-minor basis.
pub fn monotone_periodic_basis(d: &Diagram) -> Result<MonotoneBasis> {
    if d.points.len() != 1 {
        return Err(Error::Points { expected: "1".into(), found: d.points.len() });
    }
    let st = d.structure().map_err(|v| Error::Invalid(v[0].to_string()))?;
    let a = intersection_matrix(d)?;
    let mb = monotone_matrix_basis(&a);
    let lattice = lattice_with(d, &st);
    if lattice.len() != mb.b {
        return Err(Error::Rank(format!("lattice rank {} but b1 = {}", lattice.len(), mb.b)));
    }
    let flips = d.beta_flips(&st);
    let bd: Vec<Vec<BigInt>> = lattice.iter().map(|p| decompose(d, &st, &flips, p).alpha).collect();
    let mut domains = Vec::new();
    for i in 0..mb.b {
        let lam = solve_exact(&bd, &mb.s.col(i))
            .ok_or_else(|| Error::Rank("alpha boundaries do not reach the kernel vector".into()))?;
        let mut p = Domain::zero(d.regions.len());
        for (l, dom) in lam.iter().zip(&lattice) {
            p = p.add(&dom.scale(l));
        }
        let got = decompose(d, &st, &flips, &p);
        if !got.is_periodic || got.alpha != mb.s.col(i) {
            return Err(Error::Internal("monotone domain has the wrong alpha boundary".into()));
        }
        domains.push(p);
    }
    let wound = mb.free.clone();
    Ok(MonotoneBasis { domains, matrix: mb, wound })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindingReport {
    #[serde(rename = "K")]
    pub k_rounds: usize,
    pub b: usize,
    pub wound: Vec<String>,
    pub dual_crossings: Vec<usize>,
    /// Indexed by alpha position.
    pub per_curve_new_intersections: Vec<usize>,
    pub total_new: usize,
    pub budget: u64,
    pub r: String,
    pub verified_admissible: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct WindOptions {
    /// Rounds added on top of the required count.
    pub extra_rounds: usize,
}

/// Winds one curve along a dual path with `rounds` rounds per copy.
fn wind_one(d: &mut Diagram, path: &DualPath, rounds: usize) -> Result<()> {
    let c = path.betas.len();
    if c == 0 || rounds == 0 {
        return Ok(());
    }
    let fail = |e: crate::error::MoveError| Error::Verification(format!("winding step rejected: {}", e));
    // copy one: push along the path
    let mut tip = path.launch;
    let mut targets = path.betas.clone();
    let mut first_round = Vec::new();
    let mut base_e2 = None;
    for round in 0..rounds {
        let mut mids = Vec::with_capacity(c);
        for (s, &t) in targets.iter().enumerate() {
            let f = finger_raw(d, tip, t).map_err(fail)?;
            if round == 0 && s == 0 {
                base_e2 = Some(f.e2);
            }
            if round == 0 {
                first_round.push(f);
            }
            mids.push(f.t_mid);
            tip = f.e_tip;
        }
        targets = mids;
    }
    // copy two: push the other way, on the far side of the first copy
    let mut tip = base_e2.expect("first round ran").rev();
    let mut targets: Vec<Dart> = first_round.iter().rev().map(|f| f.t1.rev()).collect();
    for _ in 0..rounds {
        let mut mids = Vec::with_capacity(c);
        for &t in &targets {
            let f = finger_raw(d, tip, t).map_err(fail)?;
            mids.push(f.t_mid);
            tip = f.e_tip;
        }
        targets = mids;
    }
    Ok(())
}

fn alpha_sequences(d: &Diagram, st: &Structure) -> Vec<Vec<VertexId>> {
    d.alphas()
        .iter()
        .map(|c| st.curve_arcs[c.0].iter().filter_map(|a| d.arcs[a.0].ends.map(|e| e.0)).collect())
        .collect()
}

/// Winds the curves picked by the monotone basis until the diagram is weakly
/// admissible, then verifies the result.
pub fn wind(d: &Diagram) -> Result<(Diagram, WindingReport)> {
    wind_with(d, WindOptions::default())
}

pub fn wind_with(d: &Diagram, opts: WindOptions) -> Result<(Diagram, WindingReport)> {
    let (raw, report) = wind_raw(d, opts)?;
    Ok((renumber(&raw).0, report))
}

/// Like [`wind_with`] but without renumbering: original cells keep their ids
/// and new cells are appended.
pub fn wind_raw(d: &Diagram, opts: WindOptions) -> Result<(Diagram, WindingReport)> {
    let basis = monotone_periodic_basis(d)?;
    let stats = intersection_stats(d);
    let b = basis.matrix.b;
    let k_rounds = (stats.k + stats.o_alpha) * b + if b > 0 { opts.extra_rounds } else { 0 };
    let budget = (stats.k + stats.o_alpha) as u64 * (stats.k + stats.o_beta) as u64 * b as u64 * (1u64 << (b + 1));
    let st0 = d.structure().map_err(|v| Error::Invalid(v[0].to_string()))?;
    let before = alpha_sequences(d, &st0);
    let alphas = d.alphas();
    let mut work = d.clone();
    let mut dual_crossings = Vec::new();
    let mut per_curve = vec![0usize; alphas.len()];
    for &i in &basis.wound {
        let st = work.structure().map_err(|v| Error::Internal(v[0].to_string()))?;
        let blocked = vec![false; work.arcs.len()];
        let path = shortest_dual(&work, &st, alphas[i], &blocked).ok_or_else(|| {
            Error::Internal(format!("no dual curve for {}", d.curve_name(alphas[i])))
        })?;
        dual_crossings.push(path.betas.len());
        let nv = work.vertices.len();
        wind_one(&mut work, &path, k_rounds)?;
        per_curve[i] = work.vertices.len() - nv;
    }
    let report_v = work.validate();
    if let Some(v) = report_v.violations.first() {
        return Err(Error::Verification(format!("wound diagram is invalid: {}", v)));
    }
    // original vertices keep their ids and the untouched alpha curves keep their crossings
    let st1 = work.structure().map_err(|v| Error::Internal(v[0].to_string()))?;
    for (vi, v) in d.vertices.iter().enumerate() {
        if work.vertices[vi] != *v {
            return Err(Error::Verification(format!("vertex {} was not preserved", d.names.vertices[vi])));
        }
    }
    let after = alpha_sequences(&work, &st1);
    for (i, seq) in before.iter().enumerate() {
        if !basis.wound.contains(&i) && after[i] != *seq {
            return Err(Error::Verification(format!("{} changed", d.curve_name(alphas[i]))));
        }
        if basis.wound.contains(&i) {
            let old: Vec<&VertexId> = after[i].iter().filter(|v| v.0 < d.vertices.len()).collect();
            let cyc_ok = old.len() == seq.len()
                && (seq.is_empty()
                    || (0..seq.len()).any(|r| (0..seq.len()).all(|j| *old[(r + j) % seq.len()] == seq[j])));
            if !cyc_ok {
                return Err(Error::Verification(format!(
                    "original crossings on {} changed order",
                    d.curve_name(alphas[i])
                )));
            }
        }
    }
    for (i, &n) in per_curve.iter().enumerate() {
        if n as u64 > budget {
            return Err(Error::Verification(format!(
                "{} gained {} intersections, above the budget {}",
                d.curve_name(alphas[i]),
                n,
                budget
            )));
        }
    }
    let verdict = check_weak_admissibility(&work)?;
    if !verdict.admissible {
        let w = verdict.witness.map(|w| format!("{:?}", w.0.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
        return Err(Error::Verification(format!(
            "wound diagram is not weakly admissible; positive periodic domain {}",
            w.unwrap_or_default()
        )));
    }
    let report = WindingReport {
        k_rounds,
        b,
        wound: basis.wound.iter().map(|&i| d.curve_name(alphas[i]).to_string()).collect(),
        dual_crossings,
        total_new: per_curve.iter().sum(),
        per_curve_new_intersections: per_curve,
        budget,
        r: basis.matrix.r.to_string(),
        verified_admissible: true,
    };
    Ok((work, report))
}
