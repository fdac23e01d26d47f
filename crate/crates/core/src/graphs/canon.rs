//! Canonical labeling by individualization and equitable refinement.
//!
//! The search tree has the unit partition refined to equitable form at the
//! root; a node's children individualize each vertex of the first smallest
//! non-singleton cell. Every node carries a trace (hashes of the splitting
//! performed by refinement), and every leaf a code (the relabeled graph).
//! The canonical leaf maximizes `(trace sequence, code)`. Subtrees are
//! skipped when they are images of explored subtrees under automorphisms
//! already found, or when their trace falls below the best leaf's.

use std::collections::VecDeque;

use super::graph::Graph;
use crate::permgroup::Permutation;

#[derive(Clone)]
struct Partition {
    /// Vertices in cell order.
    lab: Vec<u32>,
    /// Position of each vertex in `lab`.
    pos: Vec<u32>,
    /// Start position of the cell containing each position.
    start_of: Vec<u32>,
    /// End (exclusive) of the cell starting at each start position.
    end: Vec<u32>,
    ncells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut end = vec![0u32; n];
        if n > 0 {
            end[0] = n as u32;
        }
        Partition {
            lab: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            start_of: vec![0; n],
            end,
            ncells: usize::from(n > 0),
        }
    }

    fn n(&self) -> usize {
        self.lab.len()
    }

    fn is_discrete(&self) -> bool {
        self.ncells == self.n()
    }

    fn cell_len(&self, start: usize) -> usize {
        self.end[start] as usize - start
    }

    /// First smallest non-singleton cell, by position.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut p = 0;
        while p < self.n() {
            let len = self.cell_len(p);
            if len > 1 && best.is_none_or(|(_, l)| len < l) {
                best = Some((p, len));
            }
            p = self.end[p] as usize;
        }
        best.map(|(p, _)| p)
    }

    /// Split `v` off the front of its cell. Returns the start of the new
    /// singleton cell.
    fn individualize(&mut self, v: u32) -> usize {
        let start = self.start_of[self.pos[v as usize] as usize] as usize;
        let end = self.end[start] as usize;
        let pv = self.pos[v as usize] as usize;
        let other = self.lab[start];
        self.lab.swap(start, pv);
        self.pos[other as usize] = pv as u32;
        self.pos[v as usize] = start as u32;
        self.end[start] = start as u32 + 1;
        self.end[start + 1] = end as u32;
        for p in start + 1..end {
            self.start_of[p] = start as u32 + 1;
        }
        self.ncells += 1;
        start
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    // splitmix64 finalizer over the running value
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Refiner<'g> {
    g: &'g Graph,
    count: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
}

impl<'g> Refiner<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.order();
        Refiner {
            g,
            count: vec![0; n],
            touched: Vec::new(),
            in_queue: vec![false; n],
        }
    }

    /// Refine to the coarsest equitable partition finer than `p`, starting
    /// from the given splitter cells. Returns the trace hash.
    fn refine(&mut self, p: &mut Partition, splitters: &[usize]) -> u64 {
        let mut trace = 0x5151_u64;
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in splitters {
            if !self.in_queue[s] {
                self.in_queue[s] = true;
                queue.push_back(s);
            }
        }
        let mut cells: Vec<usize> = Vec::new();
        let mut members: Vec<(u32, u32)> = Vec::new();
        while let Some(w) = queue.pop_front() {
            self.in_queue[w] = false;
            if p.is_discrete() {
                continue;
            }
            trace = mix(trace, w as u64);
            for q in w..p.end[w] as usize {
                let v = p.lab[q] as usize;
                for &u in self.g.neighbors(v) {
                    if self.count[u as usize] == 0 {
                        self.touched.push(u);
                    }
                    self.count[u as usize] += 1;
                }
            }
            cells.clear();
            for &u in &self.touched {
                cells.push(p.start_of[p.pos[u as usize] as usize] as usize);
            }
            cells.sort_unstable();
            cells.dedup();
            for &x in &cells {
                let end = p.end[x] as usize;
                if end - x == 1 {
                    trace = mix(trace, (x as u64) << 32 | self.count[p.lab[x] as usize] as u64);
                    continue;
                }
                members.clear();
                members.extend(p.lab[x..end].iter().map(|&v| (self.count[v as usize], v)));
                members.sort_unstable();
                if members[0].0 == members[members.len() - 1].0 {
                    trace = mix(trace, (x as u64) << 32 | members[0].0 as u64);
                    continue;
                }
                // rewrite the cell in count order and record the pieces
                let mut pieces: Vec<(usize, usize)> = Vec::new();
                let mut piece_start = x;
                for (k, &(c, v)) in members.iter().enumerate() {
                    let at = x + k;
                    p.lab[at] = v;
                    p.pos[v as usize] = at as u32;
                    if k > 0 && c != members[k - 1].0 {
                        pieces.push((piece_start, at));
                        piece_start = at;
                    }
                }
                pieces.push((piece_start, end));
                for &(a, b) in &pieces {
                    p.end[a] = b as u32;
                    for q in a..b {
                        p.start_of[q] = a as u32;
                    }
                    trace = mix(trace, ((a as u64) << 40) ^ ((b - a) as u64) << 20 ^ self.count[p.lab[a] as usize] as u64);
                }
                p.ncells += pieces.len() - 1;
                if self.in_queue[x] {
                    for &(a, _) in &pieces[1..] {
                        self.in_queue[a] = true;
                        queue.push_back(a);
                    }
                } else {
                    // all pieces but the first largest
                    let largest = pieces
                        .iter()
                        .enumerate()
                        .max_by_key(|&(k, &(a, b))| (b - a, std::cmp::Reverse(k)))
                        .map(|(k, _)| k)
                        .expect("nonempty");
                    for (k, &(a, _)) in pieces.iter().enumerate() {
                        if k != largest {
                            self.in_queue[a] = true;
                            queue.push_back(a);
                        }
                    }
                }
            }
            for &u in &self.touched {
                self.count[u as usize] = 0;
            }
            self.touched.clear();
        }
        mix(trace, p.ncells as u64)
    }
}

struct Leaf {
    trace: Vec<u64>,
    code: Vec<u32>,
    lab: Vec<u32>,
    path: Vec<u32>,
}

/// Result of the canonical-labeling search.
pub struct CanonResult {
    /// `labeling[i]` is the vertex placed at position `i` of the canonical
    /// form, i.e. the canonical graph relabels `labeling[i]` as `i`.
    pub labeling: Vec<u32>,
    /// Generators of the automorphism group.
    pub generators: Vec<Permutation>,
    /// Number of search-tree nodes visited.
    pub nodes: usize,
}

struct Search<'g> {
    g: &'g Graph,
    refiner: Refiner<'g>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Permutation>,
    nodes: usize,
}

fn leaf_code(g: &Graph, p: &Partition) -> Vec<u32> {
    let mut code = Vec::with_capacity(g.order() + 2 * g.size());
    let mut nbrs: Vec<u32> = Vec::new();
    for &v in &p.lab {
        nbrs.clear();
        nbrs.extend(g.neighbors(v as usize).iter().map(|&u| p.pos[u as usize]));
        nbrs.sort_unstable();
        code.push(nbrs.len() as u32);
        code.extend_from_slice(&nbrs);
    }
    code
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<'g> Search<'g> {
    /// Returns `Some(level)` to unwind the recursion up to that depth.
    fn visit(&mut self, p: Partition, trace: Vec<u64>, path: Vec<u32>) -> Option<usize> {
        self.nodes += 1;
        let depth = path.len();
        if let Some(best) = &self.best {
            let on_first = self
                .first
                .as_ref()
                .is_some_and(|f| f.trace.len() >= trace.len() && f.trace[..trace.len()] == trace[..]);
            let k = trace.len().min(best.trace.len());
            if !on_first && trace[..k] < best.trace[..k] {
                return None;
            }
        }
        if p.is_discrete() {
            return self.leaf(p, trace, path);
        }
        let target = p.target_cell().expect("non-discrete partition has a target cell");
        let mut cell: Vec<u32> = p.lab[target..p.end[target] as usize].to_vec();
        cell.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.equivalent_to_explored(v, &explored, &path) {
                continue;
            }
            explored.push(v);
            let mut child = p.clone();
            let s = child.individualize(v);
            let h = self.refiner.refine(&mut child, &[s]);
            let mut child_trace = trace.clone();
            child_trace.push(h);
            let mut child_path = path.clone();
            child_path.push(v);
            if let Some(level) = self.visit(child, child_trace, child_path) {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    /// Whether some found automorphism fixing `path` pointwise maps an
    /// explored sibling to `v`.
    fn equivalent_to_explored(&self, v: u32, explored: &[u32], path: &[u32]) -> bool {
        let n = self.g.order();
        let gens: Vec<&Permutation> = self
            .gens
            .iter()
            .filter(|g| path.iter().all(|&x| g.apply(x as usize) == x as usize))
            .collect();
        if gens.is_empty() {
            return false;
        }
        // orbit of v under the filtered generators
        let mut seen = vec![false; n];
        seen[v as usize] = true;
        let mut stack = vec![v as usize];
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y = g.apply(x);
                if !seen[y] {
                    if explored.contains(&(y as u32)) {
                        return true;
                    }
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    fn leaf(&mut self, p: Partition, trace: Vec<u64>, path: Vec<u32>) -> Option<usize> {
        let code = leaf_code(self.g, &p);
        let leaf = Leaf {
            trace,
            code,
            lab: p.lab,
            path,
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                trace: leaf.trace.clone(),
                code: leaf.code.clone(),
                lab: leaf.lab.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if leaf.code == first.code {
            let level = common_prefix(&first.path, &leaf.path);
            let auto = automorphism_between(&first.lab, &leaf.lab);
            self.add_generator(auto);
            return Some(level);
        }
        let best = self.best.as_ref().expect("set with first");
        if leaf.code == best.code {
            let level = common_prefix(&best.path, &leaf.path);
            let auto = automorphism_between(&best.lab, &leaf.lab);
            self.add_generator(auto);
            return Some(level);
        }
        if (&leaf.trace, &leaf.code) > (&best.trace, &best.code) {
            self.best = Some(leaf);
        }
        None
    }

    fn add_generator(&mut self, g: Permutation) {
        debug_assert!(self.g.is_automorphism(&g));
        if !g.is_identity() && !self.gens.contains(&g) {
            self.gens.push(g);
        }
    }
}

/// The permutation sending `a[i]` to `b[i]`.
fn automorphism_between(a: &[u32], b: &[u32]) -> Permutation {
    let mut image = vec![0u32; a.len()];
    for (&x, &y) in a.iter().zip(b) {
        image[x as usize] = y;
    }
    Permutation::new(image).expect("two labelings differ by a permutation")
}

/// Canonical labeling and automorphism-group generators of `g`.
pub fn canonical_labeling(g: &Graph) -> CanonResult {
    let n = g.order();
    if n == 0 {
        return CanonResult {
            labeling: Vec::new(),
            generators: Vec::new(),
            nodes: 0,
        };
    }
    let mut refiner = Refiner::new(g);
    let mut root = Partition::unit(n);
    // split by degree first, then refine against every cell
    let h = refiner.refine(&mut root, &[0]);
    let mut search = Search {
        g,
        refiner,
        first: None,
        best: None,
        gens: Vec::new(),
        nodes: 0,
    };
    search.visit(root, vec![h], Vec::new());
    let best = search.best.expect("the search reaches at least one leaf");
    CanonResult {
        labeling: best.lab,
        generators: search.gens,
        nodes: search.nodes,
    }
}

/// The canonical form of `g` as a graph.
pub fn canonical_form(g: &Graph) -> Graph {
    let labeling = canonical_labeling(g).labeling;
    let mut to_canon = vec![0u32; g.order()];
    for (i, &v) in labeling.iter().enumerate() {
        to_canon[v as usize] = i as u32;
    }
    g.relabel(&Permutation::new(to_canon).expect("labeling is a permutation"))
}

/// Isomorphism-invariant byte string: the graph6 encoding of the canonical
/// form. Equal certificates mean isomorphic graphs.
pub fn canonical_certificate(g: &Graph) -> Vec<u8> {
    g.cached_certificate()
        .get_or_init(|| super::graph6::to_graph6(&canonical_form(g)))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::families;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shuffled(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
        let mut img: Vec<u32> = (0..g.order() as u32).collect();
        img.shuffle(rng);
        g.relabel(&Permutation::new(img).unwrap())
    }

    #[test]
    fn certificates_are_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [
            families::petersen(),
            families::complete(4),
            families::cycle(6),
            families::prism(5),
            families::hypercube(4),
            families::tutte_coxeter(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap(),
        ] {
            let c = canonical_certificate(&g);
            for _ in 0..10 {
                assert_eq!(canonical_certificate(&shuffled(&g, &mut rng)), c);
            }
        }
    }

    #[test]
    fn certificates_separate() {
        let c6 = canonical_certificate(&families::cycle(6));
        assert_ne!(c6, canonical_certificate(&families::prism(3)));
        assert_ne!(c6, canonical_certificate(&families::complete_bipartite(3, 3)));
        assert_ne!(
            canonical_certificate(&families::complete(4)),
            canonical_certificate(&families::cycle(4))
        );
    }

    #[test]
    fn generators_are_automorphisms() {
        let g = families::tutte_coxeter();
        let r = canonical_labeling(&g);
        assert!(!r.generators.is_empty());
        assert!(r.generators.iter().all(|a| g.is_automorphism(a)));
    }
}
