//! Counting and listing generators: one vertex on each alpha curve, on
//! pairwise distinct beta curves.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::diagram::*;
use crate::error::{Error, Result};

/// `N[i][j] = |alpha_i ∩ beta_j|`, by family index.
pub fn multiplicity_matrix(d: &Diagram) -> Vec<Vec<u64>> {
    let alphas = d.alphas();
    let betas = d.betas();
    let mut apos = vec![0; d.curves.len()];
    let mut bpos = vec![0; d.curves.len()];
    for (i, c) in alphas.iter().enumerate() {
        apos[c.0] = i;
    }
    for (j, c) in betas.iter().enumerate() {
        bpos[c.0] = j;
    }
    let mut n = vec![vec![0u64; betas.len()]; alphas.len()];
    for v in &d.vertices {
        n[apos[v.alpha.0]][bpos[v.beta.0]] += 1;
    }
    n
}

/// Permanent of a nonnegative square matrix by backtracking, rows taken in
/// order of increasing row sum.
pub fn permanent(n: &[Vec<u64>]) -> BigUint {
    let size = n.len();
    if size == 0 {
        return BigUint::one();
    }
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&i| (n[i].iter().sum::<u64>(), i));
    let mut used = vec![false; n[0].len()];
    fn rec(n: &[Vec<u64>], order: &[usize], k: usize, used: &mut [bool]) -> BigUint {
        if k == order.len() {
            return BigUint::one();
        }
        let row = &n[order[k]];
        let mut total = BigUint::zero();
        for j in 0..row.len() {
            if row[j] == 0 || used[j] {
                continue;
            }
            used[j] = true;
            let sub = rec(n, order, k + 1, used);
            used[j] = false;
            if !sub.is_zero() {
                total += sub * row[j];
            }
        }
        total
    }
    rec(n, &order, 0, &mut used)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorCount {
    #[serde(serialize_with = "crate::generators::ser_biguint")]
    pub count: BigUint,
    /// Product of the per-alpha intersection counts.
    #[serde(serialize_with = "crate::generators::ser_biguint")]
    pub product_bound: BigUint,
    /// Vertex names, one per alpha curve in index order.
    pub list: Option<Vec<Vec<String>>>,
}

pub(crate) fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Counts generators; lists up to `list_limit` of them when asked.
pub fn enumerate_generators(d: &Diagram, list_limit: Option<usize>) -> Result<GeneratorCount> {
    d.structure().map_err(|v| Error::Invalid(v[0].to_string()))?;
    let n = multiplicity_matrix(d);
    let count = permanent(&n);
    let product_bound = n.iter().map(|r| BigUint::from(r.iter().sum::<u64>())).product();
    let list = list_limit.map(|limit| {
        let alphas = d.alphas();
        let mut on_alpha: Vec<Vec<VertexId>> = vec![Vec::new(); alphas.len()];
        let mut apos = vec![0; d.curves.len()];
        for (i, c) in alphas.iter().enumerate() {
            apos[c.0] = i;
        }
        for (vi, v) in d.vertices.iter().enumerate() {
            on_alpha[apos[v.alpha.0]].push(VertexId(vi));
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let mut used = vec![false; d.curves.len()];
        fn rec(
            d: &Diagram,
            on_alpha: &[Vec<VertexId>],
            cur: &mut Vec<VertexId>,
            used: &mut [bool],
            out: &mut Vec<Vec<String>>,
            limit: usize,
        ) {
            if out.len() >= limit {
                return;
            }
            if cur.len() == on_alpha.len() {
                out.push(cur.iter().map(|v| d.names.vertices[v.0].clone()).collect());
                return;
            }
            for &v in &on_alpha[cur.len()] {
                let b = d.vertices[v.0].beta.0;
                if used[b] {
                    continue;
                }
                used[b] = true;
                cur.push(v);
                rec(d, on_alpha, cur, used, out, limit);
                cur.pop();
                used[b] = false;
            }
        }
        rec(d, &on_alpha, &mut cur, &mut used, &mut out, limit);
        out
    });
    Ok(GeneratorCount { count, product_bound, list })
}
