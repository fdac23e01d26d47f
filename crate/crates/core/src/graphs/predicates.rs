use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;

use super::canon::canonical_labeling;
use super::graph::Graph;
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};

/// Largest `s` accepted by [`s_arc_transitivity`].
pub const S_ARC_CAP: usize = 8;

/// Upper bound on the number of s-arcs in a single orbit computation.
const ARC_ORBIT_CAP: usize = 50_000_000;

/// The full automorphism group, from the generators found by the
/// canonical-labeling search.
pub fn automorphism_group(g: &Graph) -> PermGroup {
    let gens = canonical_labeling(g).generators;
    PermGroup::new(g.order(), gens).expect("generators act on the vertex set")
}

pub fn is_vertex_transitive(g: &Graph) -> bool {
    automorphism_group(g).is_transitive()
}

/// Whether the automorphism group acts regularly on the vertices.
pub fn is_grr(g: &Graph) -> bool {
    automorphism_group(g).is_regular()
}

/// Transitivity of the automorphism group on s-arcs for `s = 0..=s_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SArcReport {
    /// Largest `s` such that the group is transitive on `t`-arcs for every
    /// `t ≤ s`; `None` if it is not even vertex-transitive.
    pub max_s: Option<usize>,
    /// `transitive_at[s]` for `s = 0..=s_max`.
    pub transitive_at: Vec<bool>,
}

/// Number of s-arcs, by dynamic programming over arcs.
pub fn count_s_arcs(g: &Graph, s: usize) -> BigUint {
    let n = g.order();
    if s == 0 {
        return BigUint::from(n);
    }
    // ways[(u, index of v in adj[u])]: s'-arcs ending in the arc u → v
    let offsets: Vec<usize> = std::iter::once(0)
        .chain(g.adjacency().iter().scan(0, |acc, l| {
            *acc += l.len();
            Some(*acc)
        }))
        .collect();
    let mut ways = vec![BigUint::from(1u32); offsets[n]];
    for _ in 1..s {
        let mut next = vec![BigUint::from(0u32); offsets[n]];
        for u in 0..n {
            for (k, &v) in g.neighbors(u).iter().enumerate() {
                let w = &ways[offsets[u] + k];
                for (k2, &x) in g.neighbors(v as usize).iter().enumerate() {
                    if x as usize != u {
                        next[offsets[v as usize] + k2] += w;
                    }
                }
            }
        }
        ways = next;
    }
    ways.into_iter().sum()
}

fn first_s_arc(g: &Graph, s: usize) -> Option<Vec<u32>> {
    let mut arc = vec![0u32];
    for i in 0..s {
        let last = arc[i] as usize;
        let prev = if i > 0 { Some(arc[i - 1]) } else { None };
        let next = g.neighbors(last).iter().copied().find(|&x| Some(x) != prev)?;
        arc.push(next);
    }
    Some(arc)
}

fn arc_orbit_size(gens: &[Permutation], start: Vec<u32>, cap: usize) -> Result<usize> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let b: Vec<u32> = a.iter().map(|&x| g.apply(x as usize) as u32).collect();
            if !seen.contains(&b) {
                if seen.len() >= cap {
                    return Err(Error::Resource(format!("s-arc orbit exceeds {cap} elements")));
                }
                seen.insert(b.clone());
                queue.push_back(b);
            }
        }
    }
    Ok(seen.len())
}

/// For each `s ≤ s_max`, whether the automorphism group is transitive on
/// s-arcs: the orbit of one s-arc is compared with the total count.
pub fn s_arc_transitivity(g: &Graph, s_max: usize) -> Result<SArcReport> {
    let aut = automorphism_group(g);
    s_arc_transitivity_with_group(g, &aut, s_max)
}

/// As [`s_arc_transitivity`], with the automorphism group supplied.
pub fn s_arc_transitivity_with_group(g: &Graph, aut: &PermGroup, s_max: usize) -> Result<SArcReport> {
    if s_max > S_ARC_CAP {
        return Err(Error::domain(format!("s_max {s_max} exceeds the cap {S_ARC_CAP}")));
    }
    if !g.is_connected() {
        return Err(Error::precondition("s-arc transitivity needs a connected graph"));
    }
    let gens = aut.generators();
    let mut transitive_at = Vec::with_capacity(s_max + 1);
    for s in 0..=s_max {
        let total = count_s_arcs(g, s);
        let transitive = match first_s_arc(g, s) {
            None => true,
            Some(arc) => {
                if total > BigUint::from(ARC_ORBIT_CAP) {
                    // the orbit can be no larger than the group
                    if aut.order() < total {
                        false
                    } else {
                        return Err(Error::Resource(format!(
                            "{total} {s}-arcs exceed the orbit cap"
                        )));
                    }
                } else {
                    BigUint::from(arc_orbit_size(gens, arc, ARC_ORBIT_CAP)?) == total
                }
            }
        };
        transitive_at.push(transitive);
    }
    let max_s = transitive_at.iter().take_while(|&&t| t).count().checked_sub(1);
    Ok(SArcReport {
        max_s,
        transitive_at,
    })
}

/// Elements of `a` mapping vertex 0 to each of its neighbours; the subgroup
/// they generate is checked to be transitive.
pub fn transitive_subgroup_gens(g: &Graph, a: &PermGroup) -> Result<Vec<Permutation>> {
    if a.degree() != g.order() || !a.is_transitive() {
        return Err(Error::precondition("the group must act transitively on the vertices"));
    }
    if g.order() == 0 {
        return Ok(Vec::new());
    }
    let reps = a.orbit_transversal(0);
    let mut out = Vec::new();
    for &v in g.neighbors(0) {
        let (_, rep) = reps
            .iter()
            .find(|(x, _)| *x == v as usize)
            .expect("transitive group reaches every vertex");
        out.push(rep.clone());
    }
    let h = PermGroup::new(g.order(), out.clone())?;
    if !h.is_transitive() {
        return Err(Error::precondition(
            "neighbour-moving elements do not generate a transitive group (graph disconnected?)",
        ));
    }
    Ok(out)
}
