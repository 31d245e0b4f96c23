//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use heegaard::build::random_from;
use heegaard::{parse_diagram, Diagram, Handle};
use proptest::prelude::*;

pub fn fixture_text(name: &str) -> String {
    let p = format!("{}/../../fixtures/{}", env!("CARGO_MANIFEST_DIR"), name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {}", p, e))
}

pub fn fixture(name: &str) -> Diagram {
    parse_diagram(&fixture_text(name)).expect("fixture parses")
}

/// `(left, right)` region of every arc, read from the boundary cycles only.
pub fn sides(d: &Diagram) -> Vec<(usize, usize)> {
    let mut s = vec![(usize::MAX, usize::MAX); d.arcs.len()];
    for (r, reg) in d.regions.iter().enumerate() {
        for cyc in &reg.cycles {
            for x in cyc {
                if x.forward {
                    s[x.arc.0].0 = r;
                } else {
                    s[x.arc.0].1 = r;
                }
            }
        }
    }
    s
}

/// Search order for the curve-coefficient oracle: a spanning tree of the
/// region adjacency graph rooted at `root`, plus the remaining arcs.
struct Tree {
    root: usize,
    /// `(child, parent, curve, child_is_left)` in BFS order.
    tree: Vec<(usize, usize, usize, bool)>,
    /// `(left, right, curve)` for every arc.
    all: Vec<(usize, usize, usize)>,
}

fn tree(d: &Diagram, root: usize) -> Tree {
    let s = sides(d);
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); d.regions.len()];
    let mut all = Vec::new();
    for (a, &(l, r)) in s.iter().enumerate() {
        let c = d.arcs[a].curve.0;
        all.push((l, r, c));
        adj[l].push((r, c, false));
        adj[r].push((l, c, true));
    }
    let mut seen = vec![false; d.regions.len()];
    seen[root] = true;
    let mut q = VecDeque::from([root]);
    let mut out = Vec::new();
    while let Some(x) = q.pop_front() {
        for &(y, c, y_left) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                out.push((y, x, c, y_left));
                q.push_back(y);
            }
        }
    }
    assert!(seen.iter().all(|&b| b), "region graph connected");
    Tree { root, tree: out, all }
}

/// Brute force: a nonzero domain with coefficients in `0..=max`, vanishing at
/// every marked region, whose boundary is a combination of whole curves.
/// A periodic domain is fixed by its curve coefficients `x_c`, since across an
/// arc of `c` the left value minus the right value is `x_c`; so the search
/// runs over `x in [-max, max]^curves`.
pub fn brute_positive_periodic(d: &Diagram, max: i64) -> Option<Vec<i64>> {
    let marked: Vec<usize> = d.points.iter().map(|p| p.region.0).collect();
    let root = *marked.first()?;
    let t = tree(d, root);
    let nc = d.curves.len();
    let mut x = vec![-max; nc];
    let mut val = vec![0i64; d.regions.len()];
    loop {
        val[t.root] = 0;
        let mut ok = true;
        for &(child, parent, c, child_left) in &t.tree {
            let v = if child_left { val[parent] + x[c] } else { val[parent] - x[c] };
            if v < 0 || v > max {
                ok = false;
                break;
            }
            val[child] = v;
        }
        if ok
            && t.all.iter().all(|&(l, r, c)| val[l] - val[r] == x[c])
            && marked.iter().all(|&m| val[m] == 0)
            && val.iter().any(|&v| v != 0)
        {
            return Some(val);
        }
        let mut i = 0;
        loop {
            if i == nc {
                return None;
            }
            if x[i] < max {
                x[i] += 1;
                break;
            }
            x[i] = -max;
            i += 1;
        }
    }
}

/// Periodicity checked directly from region sides.
pub fn is_periodic(d: &Diagram, dom: &[i64]) -> bool {
    let s = sides(d);
    let mut coef: Vec<Option<i64>> = vec![None; d.curves.len()];
    for (a, &(l, r)) in s.iter().enumerate() {
        let c = d.arcs[a].curve.0;
        let v = dom[l] - dom[r];
        match coef[c] {
            None => coef[c] = Some(v),
            Some(w) if w != v => return false,
            _ => {}
        }
    }
    true
}

/// Signed crossing counts `[beta][alpha]` under the stored arc orientations.
pub fn raw_matrix(d: &Diagram) -> Vec<Vec<i64>> {
    let st = d.structure().expect("sound diagram");
    let (a, b) = (d.alphas(), d.betas());
    let mut m = vec![vec![0i64; a.len()]; b.len()];
    for (v, x) in d.vertices.iter().enumerate() {
        let i = b.iter().position(|&c| c == x.beta).unwrap();
        let j = a.iter().position(|&c| c == x.alpha).unwrap();
        m[i][j] += st.raw_sign(heegaard::VertexId(v)) as i64;
    }
    m
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

fn parity(p: &[usize]) -> i128 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Leibniz expansion.
pub fn naive_det(m: &[Vec<i64>]) -> i128 {
    permutations(m.len())
        .iter()
        .map(|p| parity(p) * p.iter().enumerate().map(|(i, &j)| m[i][j] as i128).product::<i128>())
        .sum()
}

pub fn brute_permanent(m: &[Vec<u64>]) -> u128 {
    if m.is_empty() {
        return 1;
    }
    permutations(m.len()).iter().map(|p| p.iter().enumerate().map(|(i, &j)| m[i][j] as u128).product::<u128>()).sum()
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Largest absolute `size x size` minor and the rank, by exhaustion.
pub fn max_minor(a: &[Vec<i64>]) -> (usize, i128) {
    let (r, c) = (a.len(), a.first().map_or(0, |x| x.len()));
    for size in (1..=r.min(c)).rev() {
        let mut best = 0i128;
        for rows in combinations(r, size) {
            for cols in combinations(c, size) {
                let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
                best = best.max(naive_det(&sub).abs());
            }
        }
        if best > 0 {
            return (size, best);
        }
    }
    (0, 1)
}

pub fn handle_strategy() -> impl Strategy<Value = Handle> {
    prop_oneof![(1u32..=4).prop_map(Handle::Lens), Just(Handle::Product)]
}

/// `(handles, points, budget, seed)` for `random_from`.
pub fn diagram_args(max_genus: usize, max_points: usize, max_budget: usize) -> impl Strategy<Value = (Vec<Handle>, usize, usize, u64)> {
    (prop::collection::vec(handle_strategy(), 1..=max_genus), 1..=max_points, 0..=max_budget, any::<u64>())
}

pub fn diagram_strategy(max_genus: usize, max_points: usize, max_budget: usize) -> impl Strategy<Value = Diagram> {
    diagram_args(max_genus, max_points, max_budget).prop_map(|(h, p, b, s)| random_from(&h, p, b, s))
}

/// Deterministic corpus of pointed diagrams with positive first Betti number.
pub fn betti_corpus(count: usize) -> Vec<Diagram> {
    let shapes: [&[Handle]; 5] = [
        &[Handle::Product],
        &[Handle::Product, Handle::Lens(2)],
        &[Handle::Product, Handle::Product],
        &[Handle::Lens(3), Handle::Product],
        &[Handle::Lens(1), Handle::Product, Handle::Lens(2)],
    ];
    (0..count).map(|i| random_from(shapes[i % shapes.len()], 1, (i / shapes.len()) % 4, i as u64)).collect()
}
