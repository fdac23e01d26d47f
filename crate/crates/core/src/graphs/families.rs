//! Small named graphs used as test oracles and base graphs.

use super::graph::Graph;

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges).expect("valid edges")
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("n ≥ 3 for a simple cycle")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))).collect();
    Graph::from_edges(a + b, &edges).expect("valid edges")
}

/// Outer 5-cycle `0..5`, spokes `i — i+5`, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("valid edges")
}

/// The prism `C_n × K_2`.
pub fn prism(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    Graph::from_edges(2 * n, &edges).expect("valid edges")
}

/// The `k`-dimensional cube on bit strings.
pub fn hypercube(k: u32) -> Graph {
    let n = 1usize << k;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (0..k).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    Graph::from_edges(n, &edges).expect("valid edges")
}

/// The Tutte–Coxeter graph (Tutte's 8-cage), built as the incidence graph
/// of the duads and synthemes of a 6-set: vertices `0..15` are the 2-subsets
/// of `{0..5}` in lexicographic order, vertices `15..30` the perfect
/// matchings of `{0..5}` in lexicographic order, and a duad is adjacent to
/// every syntheme containing it.
pub fn tutte_coxeter() -> Graph {
    let duads: Vec<(usize, usize)> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
    let mut synthemes: Vec<[(usize, usize); 3]> = Vec::new();
    for b in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != b).collect();
        // pair 0 with b, then split the remaining four elements
        let (p, q, r, s) = (rest[0], rest[1], rest[2], rest[3]);
        for pairs in [[(p, q), (r, s)], [(p, r), (q, s)], [(p, s), (q, r)]] {
            synthemes.push([(0, b), pairs[0], pairs[1]]);
        }
    }
    let mut edges = Vec::new();
    for (i, d) in duads.iter().enumerate() {
        for (j, syn) in synthemes.iter().enumerate() {
            if syn.contains(d) {
                edges.push((i, 15 + j));
            }
        }
    }
    Graph::from_edges(30, &edges).expect("valid edges")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tutte_coxeter_shape() {
        let g = tutte_coxeter();
        assert_eq!(g.order(), 30);
        assert_eq!(g.size(), 45);
        assert_eq!(g.valency(), Some(3));
        assert_eq!(g.girth(), Some(8));
        assert!(g.is_connected());
    }

    #[test]
    fn family_sizes() {
        assert_eq!(hypercube(3).size(), 12);
        assert_eq!(prism(3).size(), 9);
        assert_eq!(complete_bipartite(3, 3).size(), 9);
        assert_eq!(petersen().valency(), Some(3));
    }
}
