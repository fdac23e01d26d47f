use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::permgroup::Permutation;

/// A finite simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    certificate: OnceLock<Vec<u8>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.order(), self.size())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph::from_sorted_adj(vec![Vec::new(); n])
    }

    pub(crate) fn from_sorted_adj(adj: Vec<Vec<u32>>) -> Self {
        Graph {
            adj,
            certificate: OnceLock::new(),
        }
    }

    /// Build from an edge list; rejects loops and out-of-range endpoints,
    /// merges repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!("edge {{{u}, {v}}} out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::domain(format!("loop at vertex {u}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph::from_sorted_adj(adj))
    }

    /// Build from adjacency lists, checking symmetry and simplicity.
    pub fn from_adjacency(adj: Vec<Vec<u32>>) -> Result<Self> {
        let n = adj.len();
        let mut adj = adj;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::domain(format!("repeated neighbour at vertex {u}")));
            }
            if list.iter().any(|&v| v as usize >= n || v as usize == u) {
                return Err(Error::domain(format!("bad neighbour at vertex {u}")));
            }
        }
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                if adj[v as usize].binary_search(&(u as u32)).is_err() {
                    return Err(Error::domain(format!("edge {u}→{v} has no reverse")));
                }
            }
        }
        Ok(Graph::from_sorted_adj(adj))
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v as usize {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    /// Common valency if the graph is regular.
    pub fn valency(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == k).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        n == 0 || self.component_of(0).len() == n
    }

    pub fn component_of(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[v] = true;
        let mut out = vec![v];
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y as usize);
                    queue.push_back(y as usize);
                }
            }
        }
        out
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.order();
        let mut best: Option<usize> = None;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            dist[s] = 0;
            parent[s] = u32::MAX;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[x] as usize + 1 >= b {
                        break;
                    }
                }
                for &y in &self.adj[x] {
                    let y = y as usize;
                    if dist[y] == u32::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x as u32;
                        queue.push_back(y);
                    } else if parent[x] as usize != y {
                        let len = (dist[x] + dist[y] + 1) as usize;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// The graph with vertex `v` renamed `perm.apply(v)`.
    pub fn relabel(&self, perm: &Permutation) -> Graph {
        let n = self.order();
        assert_eq!(perm.degree(), n, "relabeling of the wrong degree");
        let mut adj = vec![Vec::new(); n];
        for (u, list) in self.adj.iter().enumerate() {
            adj[perm.apply(u)] = list.iter().map(|&v| perm.apply(v as usize) as u32).collect();
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph::from_sorted_adj(adj)
    }

    /// Whether `perm` maps edges to edges.
    pub fn is_automorphism(&self, perm: &Permutation) -> bool {
        perm.degree() == self.order()
            && self.adj.iter().enumerate().all(|(u, list)| {
                let pu = perm.apply(u);
                self.adj[pu].len() == list.len()
                    && list.iter().all(|&v| self.has_edge(pu, perm.apply(v as usize)))
            })
    }

    pub(crate) fn cached_certificate(&self) -> &OnceLock<Vec<u8>> {
        &self.certificate
    }

    /// Adjacency-list text: `n`, then one line `v: a b c` per vertex.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.order()).unwrap();
        for (v, list) in self.adj.iter().enumerate() {
            let nbrs: Vec<String> = list.iter().map(u32::to_string).collect();
            if nbrs.is_empty() {
                writeln!(out, "{v}:").unwrap();
            } else {
                writeln!(out, "{v}: {}", nbrs.join(" ")).unwrap();
            }
        }
        out
    }

    pub fn from_adjacency_text(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, first) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::parse(ln, format!("expected the vertex count, found {first:?}")))?;
        let mut adj = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        for (ln, line) in lines {
            let (head, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, "expected \"v: neighbours\""))?;
            let v: usize = head
                .trim()
                .parse()
                .map_err(|_| Error::parse(ln, format!("bad vertex {head:?}")))?;
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::parse(ln, format!("vertex {v} out of range or repeated")));
            }
            for t in rest.split_whitespace() {
                let u: u32 = t
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("bad neighbour {t:?}")))?;
                adj[v].push(u);
            }
        }
        Graph::from_adjacency(adj).map_err(|e| Error::parse(0, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::families;

    #[test]
    fn basic_invariants() {
        let k4 = families::complete(4);
        assert_eq!(k4.size(), 6);
        assert_eq!(k4.valency(), Some(3));
        assert_eq!(k4.girth(), Some(3));
        assert!(k4.is_connected());
        let c6 = families::cycle(6);
        assert_eq!(c6.girth(), Some(6));
        assert_eq!(families::petersen().girth(), Some(5));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap().girth(), None);
        assert!(!Graph::empty(2).is_connected());
    }

    #[test]
    fn rejects_loops_and_asymmetry() {
        assert!(Graph::from_edges(2, &[(1, 1)]).is_err());
        assert!(Graph::from_adjacency(vec![vec![1], vec![]]).is_err());
    }

    #[test]
    fn adjacency_text_round_trip() {
        let p = families::petersen();
        let text = p.to_adjacency_text();
        assert_eq!(Graph::from_adjacency_text(&text).unwrap(), p);
        assert!(matches!(
            Graph::from_adjacency_text("2\n0: 1\nx: 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
