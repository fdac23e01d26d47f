use std::collections::{BTreeMap, BTreeSet};

use super::graph::Graph;
use crate::error::{Error, Result};
use crate::f2linalg::F2Vector;
use crate::permgroup::{FiniteGroup, Subgroup};

/// Cayley graph Cay(G, S): vertices are the elements of `G`, and `v` is
/// adjacent to `s·v` for every `s ∈ S`. Right multiplications are
/// automorphisms.
pub fn cayley_graph(g: &FiniteGroup, s: &[u32]) -> Result<Graph> {
    let n = g.order();
    let set: BTreeSet<u32> = s.iter().copied().collect();
    if let Some(&x) = set.iter().find(|&&x| x as usize >= n) {
        return Err(Error::domain(format!("connection set element {x} out of range")));
    }
    if set.contains(&0) {
        return Err(Error::precondition("connection set contains the identity"));
    }
    if set.iter().any(|&x| !set.contains(&g.inv(x))) {
        return Err(Error::precondition("connection set is not closed under inverses"));
    }
    let adj = (0..n as u32)
        .map(|v| {
            let mut l: Vec<u32> = set.iter().map(|&x| g.mul(x, v)).collect();
            l.sort_unstable();
            l
        })
        .collect();
    Ok(Graph::from_sorted_adj(adj))
}

/// Coset graph on the right cosets of `a`, with `Ax ~ Ay` whenever
/// `y x⁻¹ ∈ A{b, b⁻¹}A`. Cosets are numbered by their least element.
/// Right multiplication by `G` acts on it by automorphisms.
pub fn coset_graph(g: &FiniteGroup, a: &Subgroup, b: u32) -> Result<Graph> {
    let n = g.order();
    if b as usize >= n {
        return Err(Error::domain(format!("element {b} out of range")));
    }
    if a.contains(b) {
        return Err(Error::precondition("the element b lies in the subgroup"));
    }
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n as u32 {
        if coset_of[x as usize] == u32::MAX {
            let idx = reps.len() as u32;
            for &h in a.elements() {
                coset_of[g.mul(h, x) as usize] = idx;
            }
            reps.push(x);
        }
    }
    let mut double: BTreeSet<u32> = BTreeSet::new();
    for d in [b, g.inv(b)] {
        for &h in a.elements() {
            let hd = g.mul(h, d);
            for &k in a.elements() {
                double.insert(g.mul(hd, k));
            }
        }
    }
    let adj = reps
        .iter()
        .map(|&x| {
            let l: BTreeSet<u32> = double.iter().map(|&z| coset_of[g.mul(z, x) as usize]).collect();
            l.into_iter().collect()
        })
        .collect();
    Ok(Graph::from_sorted_adj(adj))
}

/// Regular elementary-abelian cover of `base` with voltages in `F_2^k`.
/// Vertex `(u, x)` gets index `u·2^k + x`, and each base edge `{u, v}`
/// with voltage `a` (keyed by `(min, max)`; absent means zero) lifts to the
/// edges `(u, x) ~ (v, x + a)`.
pub fn voltage_cover(base: &Graph, k: usize, voltages: &BTreeMap<(u32, u32), F2Vector>) -> Result<Graph> {
    if k > 20 {
        return Err(Error::domain(format!("voltage group rank {k} is too large")));
    }
    for (&(u, v), a) in voltages {
        if u >= v || !base.has_edge(u as usize, v as usize) {
            return Err(Error::domain(format!("voltage on ({u}, {v}), which is not a base edge")));
        }
        if a.dim() != k {
            return Err(Error::domain(format!(
                "voltage on ({u}, {v}) has dimension {}, expected {k}",
                a.dim()
            )));
        }
    }
    let fibre = 1usize << k;
    let n = base.order() * fibre;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (u, v) in base.edges() {
        let a = voltages.get(&(u as u32, v as u32)).map_or(0, |x| x.bits()) as usize;
        for x in 0..fibre {
            let p = u * fibre + x;
            let q = v * fibre + (x ^ a);
            adj[p].push(q as u32);
            adj[q].push(p as u32);
        }
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    Ok(Graph::from_sorted_adj(adj))
}
