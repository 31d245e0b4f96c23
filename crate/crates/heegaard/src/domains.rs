//! Domains, periodic domains and weak admissibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::diagram::*;
use crate::error::{Error, Result};
use crate::matrix::{hermite_rows, IntegerMatrix};
use crate::simplex::feasible_point;

/// Integer coefficients indexed by region id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Domain(#[serde(serialize_with = "ser_big")] pub Vec<BigInt>);

pub(crate) fn ser_big<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut q = s.serialize_seq(Some(v.len()))?;
    for x in v {
        q.serialize_element(&x.to_string())?;
    }
    q.end()
}

impl Domain {
    pub fn zero(n: usize) -> Self {
        Domain(vec![BigInt::zero(); n])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        Domain(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Domain {
        Domain(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, o: &Domain) -> Domain {
        Domain(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Nonzero coefficients with their region indices.
    pub fn support(&self) -> Vec<(usize, &BigInt)> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn sup_norm(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn sound(d: &Diagram) -> Result<Structure> {
    d.structure().map_err(|v| Error::Invalid(v[0].to_string()))
}

/// Boundary coefficient on each arc: left coefficient minus right coefficient.
pub fn arc_boundary(st: &Structure, dom: &Domain) -> Vec<BigInt> {
    (0..st.side.len())
        .map(|a| &dom.0[st.left(ArcId(a)).0] - &dom.0[st.right(ArcId(a)).0])
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryDecomposition {
    /// Coefficients on alpha curves by index; empty unless periodic.
    #[serde(serialize_with = "ser_big")]
    pub alpha: Vec<BigInt>,
    /// Coefficients on beta curves by index under default orientations.
    #[serde(serialize_with = "ser_big")]
    pub beta: Vec<BigInt>,
    pub is_periodic: bool,
    pub offending_arc: Option<String>,
}

pub fn boundary_decomposition(d: &Diagram, dom: &Domain) -> Result<BoundaryDecomposition> {
    if dom.len() != d.regions.len() {
        return Err(Error::IndexMismatch { expected: d.regions.len(), found: dom.len() });
    }
    let st = sound(d)?;
    Ok(decompose(d, &st, &d.beta_flips(&st), dom))
}

pub(crate) fn decompose(d: &Diagram, st: &Structure, flips: &[bool], dom: &Domain) -> BoundaryDecomposition {
    let bd = arc_boundary(st, dom);
    let mut coeff = vec![BigInt::zero(); d.curves.len()];
    for (ci, seq) in st.curve_arcs.iter().enumerate() {
        let c0 = &bd[seq[0].0];
        if let Some(bad) = seq.iter().find(|a| bd[a.0] != *c0) {
            return BoundaryDecomposition {
                alpha: vec![],
                beta: vec![],
                is_periodic: false,
                offending_arc: Some(d.names.arcs[bad.0].clone()),
            };
        }
        coeff[ci] = if flips[ci] { -c0.clone() } else { c0.clone() };
    }
    BoundaryDecomposition {
        alpha: d.alphas().iter().map(|c| coeff[c.0].clone()).collect(),
        beta: d.betas().iter().map(|c| coeff[c.0].clone()).collect(),
        is_periodic: true,
        offending_arc: None,
    }
}

/// Basis of periodic domains vanishing at every marked region.
pub fn periodic_domain_lattice(d: &Diagram) -> Result<Vec<Domain>> {
    if d.points.is_empty() {
        return Err(Error::Points { expected: "at least 1".into(), found: 0 });
    }
    let st = sound(d)?;
    Ok(lattice_with(d, &st))
}

/// A periodic domain vanishing at the first marked region is fixed by its
/// curve coefficients `x`: across an arc of curve `c` the left value exceeds
/// the right one by `x_c`. Region values are read off a spanning tree as
/// integer forms in `x`; the remaining arcs and marked regions constrain `x`.
/// The change of coordinates is unimodular, so a kernel basis in `x` gives a
/// basis of the lattice. Callers must supply at least one marked point.
pub(crate) fn lattice_with(d: &Diagram, st: &Structure) -> Vec<Domain> {
    let n = d.regions.len();
    let nc = d.curves.len();
    let root = d.marked_regions()[0].0;
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
    for a in 0..st.side.len() {
        let (l, r) = (st.left(ArcId(a)).0, st.right(ArcId(a)).0);
        let c = d.arcs[a].curve.0;
        adj[r].push((l, c, 1));
        adj[l].push((r, c, -1));
    }
    let mut form: Vec<Option<Vec<i64>>> = vec![None; n];
    form[root] = Some(vec![0; nc]);
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &(y, c, s) in &adj[x] {
            if form[y].is_none() {
                let mut f = form[x].clone().expect("visited");
                f[c] += s;
                form[y] = Some(f);
                queue.push_back(y);
            }
        }
    }
    let form: Vec<Vec<i64>> = form.into_iter().map(|f| f.expect("connected surface")).collect();
    let mut rows: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
    for a in 0..st.side.len() {
        let (l, r) = (st.left(ArcId(a)).0, st.right(ArcId(a)).0);
        let mut row: Vec<i64> = form[l].iter().zip(&form[r]).map(|(p, q)| p - q).collect();
        row[d.arcs[a].curve.0] -= 1;
        rows.insert(row);
    }
    for m in d.marked_regions() {
        rows.insert(form[m.0].clone());
    }
    rows.remove(&vec![0; nc]);
    let xs: Vec<Vec<BigInt>> = if rows.is_empty() {
        (0..nc).map(|i| (0..nc).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
    } else {
        let reduced = hermite_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect());
        IntegerMatrix::from_rows(&reduced).kernel()
    };
    let domains: Vec<Vec<BigInt>> = xs
        .iter()
        .map(|x| form.iter().map(|f| f.iter().zip(x).map(|(&a, b)| b * a).sum()).collect())
        .collect();
    hermite_rows(domains).into_iter().map(Domain).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityVerdict {
    pub admissible: bool,
    pub witness: Option<Domain>,
}

/// Nonzero nonnegative periodic domain vanishing at marked regions, if any.
///
/// With `G` the region-by-basis coefficient matrix, a witness is `G l` for
/// some `l` with `G l >= 0` and `G l != 0`. By Stiemke's alternative no such
/// `l` exists exactly when `G^T y = 0` has a solution `y > 0`; that system has
/// only `rank` equations and settles the admissible case cheaply. Only when it
/// is infeasible is the larger primal system solved for a witness.
pub fn positive_periodic_domain(d: &Diagram, basis: &[Domain]) -> Option<Domain> {
    let m = d.regions.len();
    let r = basis.len();
    if r == 0 {
        return None;
    }
    // regions whose rows are positive multiples of one primitive row share a class
    let mut classes: Vec<Vec<BigInt>> = Vec::new();
    let mut class_of: Vec<Option<(usize, BigInt)>> = vec![None; m];
    let mut index = std::collections::HashMap::new();
    for (i, slot) in class_of.iter_mut().enumerate() {
        let row: Vec<BigInt> = basis.iter().map(|b| b.0[i].clone()).collect();
        let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            continue;
        }
        let prim: Vec<BigInt> = row.iter().map(|x| x / &g).collect();
        let c = *index.entry(prim.clone()).or_insert_with(|| {
            classes.push(prim);
            classes.len() - 1
        });
        *slot = Some((c, g));
    }
    let n = classes.len();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let zero = BigRational::zero();

    // y = 1 + u with u >= 0: sum_c u_c g_c = -sum_c g_c
    let dual: Vec<Vec<BigRational>> = (0..r).map(|j| classes.iter().map(|g| q(&g[j])).collect()).collect();
    let rhs: Vec<BigRational> =
        (0..r).map(|j| -classes.iter().fold(BigRational::zero(), |acc, g| acc + q(&g[j]))).collect();
    if feasible_point(&dual, &rhs).is_some() {
        return None;
    }

    // variables: l+ (r), l- (r), s (n); G l+ - G l- - s = 0, sum s = 1
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for (c, g) in classes.iter().enumerate() {
        let mut row = vec![zero.clone(); 2 * r + n];
        for (j, x) in g.iter().enumerate() {
            row[j] = q(x);
            row[r + j] = -q(x);
        }
        row[2 * r + c] = -BigRational::one();
        rows.push(row);
        rhs.push(zero.clone());
    }
    let mut last = vec![zero.clone(); 2 * r + n];
    for x in last[2 * r..].iter_mut() {
        *x = BigRational::one();
    }
    rows.push(last);
    rhs.push(BigRational::one());
    let x = feasible_point(&rows, &rhs)?;
    let s = &x[2 * r..];
    let den = s.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = s.iter().map(|v| v.numer() * (&den / v.denom())).collect();
    let vals: Vec<BigInt> =
        class_of.iter().map(|c| c.as_ref().map_or_else(BigInt::zero, |(c, k)| &ints[*c] * k)).collect();
    let g = vals.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let w = Domain(vals.iter().map(|v| v / &g).collect());
    Some(w)
}

pub(crate) fn is_positive_witness(d: &Diagram, st: &Structure, w: &Domain) -> bool {
    !w.is_zero()
        && w.is_nonnegative()
        && d.marked_regions().iter().all(|r| w.0[r.0].is_zero())
        && decompose(d, st, &d.beta_flips(st), w).is_periodic
}

pub fn check_weak_admissibility(d: &Diagram) -> Result<AdmissibilityVerdict> {
    if d.points.is_empty() {
        return Err(Error::Points { expected: "at least 1".into(), found: 0 });
    }
    let st = sound(d)?;
    let basis = lattice_with(d, &st);
    let witness = positive_periodic_domain(d, &basis);
    if let Some(w) = &witness {
        if !is_positive_witness(d, &st, w) {
            return Err(Error::Internal("admissibility witness failed verification".into()));
        }
    }
    Ok(AdmissibilityVerdict { admissible: witness.is_none(), witness })
}

/// `(|D|, |d_alpha D|, |d_beta D|)` in the sup norm.
pub fn domain_norms(d: &Diagram, dom: &Domain) -> Result<(BigInt, BigInt, BigInt)> {
    let b = boundary_decomposition(d, dom)?;
    if !b.is_periodic {
        return Err(Error::NotPeriodic { arc: b.offending_arc.unwrap_or_default() });
    }
    let sup = |v: &[BigInt]| v.iter().map(|x| x.abs()).max().unwrap_or_default();
    Ok((dom.sup_norm(), sup(&b.alpha), sup(&b.beta)))
}
