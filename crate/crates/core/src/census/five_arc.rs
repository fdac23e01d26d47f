use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::record::{dedup_records, parallel_map, CensusRecord, PipelineConfig, Provenance};
use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Subspace, F2Vector};
use crate::graphs::{automorphism_group, families, voltage_cover, Graph};
use crate::permgroup::PermGroup;

/// Largest voltage rank accepted by the cover search.
pub const MAX_VOLTAGE_RANK: usize = 4;

/// Cycle-space coordinates of the base graph: a spanning tree, the cotree
/// edges, and the fundamental cycle of each cotree edge as an edge mask.
#[derive(Clone, Debug)]
pub struct CycleSpace {
    pub edges: Vec<(usize, usize)>,
    pub cotree: Vec<usize>,
    cycles: Vec<Vec<u64>>,
}

fn mask_words(m: usize) -> usize {
    m.div_ceil(64)
}

impl CycleSpace {
    /// Breadth-first spanning tree from vertex 0.
    pub fn new(g: &Graph) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::precondition("cycle space of a disconnected graph"));
        }
        let edges = g.edges();
        let index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let n = g.order();
        let mut parent = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut in_tree = vec![false; edges.len()];
        let mut queue = VecDeque::from([0usize]);
        parent[0] = 0;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                let v = v as usize;
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    let e = index[&key(u, v)];
                    parent_edge[v] = e;
                    in_tree[e] = true;
                    queue.push_back(v);
                }
            }
        }
        let words = mask_words(edges.len());
        let mut cotree = Vec::new();
        let mut cycles = Vec::new();
        for (e, &(u, v)) in edges.iter().enumerate() {
            if in_tree[e] {
                continue;
            }
            let mut mask = vec![0u64; words];
            let mut flip = |i: usize| mask[i / 64] ^= 1 << (i % 64);
            flip(e);
            let (mut a, mut b) = (u, v);
            while a != b {
                if depth[a] >= depth[b] {
                    flip(parent_edge[a]);
                    a = parent[a];
                } else {
                    flip(parent_edge[b]);
                    b = parent[b];
                }
            }
            cotree.push(e);
            cycles.push(mask);
        }
        Ok(CycleSpace { edges, cotree, cycles })
    }

    /// Dimension of the cycle space.
    pub fn dim(&self) -> usize {
        self.cotree.len()
    }

    /// Restrict an edge functional (given as an edge mask) to the cycle
    /// space, in cotree coordinates.
    pub fn restrict(&self, edge_mask: &[u64]) -> u64 {
        self.cycles.iter().enumerate().fold(0u64, |acc, (i, c)| {
            let parity = c.iter().zip(edge_mask).map(|(a, b)| (a & b).count_ones()).sum::<u32>() & 1;
            acc | (parity as u64) << i
        })
    }

    /// Matrix of an automorphism on cycle-space functionals: row `i` is the
    /// functional obtained by moving the indicator of cotree edge `i`.
    pub fn functional_action(&self, sigma: &crate::permgroup::Permutation) -> Result<F2Matrix> {
        let index: HashMap<(usize, usize), usize> =
            self.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let words = mask_words(self.edges.len());
        let rows = self
            .cotree
            .iter()
            .map(|&e| {
                let (u, v) = self.edges[e];
                let (a, b) = (sigma.apply(u), sigma.apply(v));
                let img = index[&if a < b { (a, b) } else { (b, a) }];
                let mut mask = vec![0u64; words];
                mask[img / 64] |= 1 << (img % 64);
                self.restrict(&mask)
            })
            .collect();
        F2Matrix::from_rows(self.dim(), rows)
    }

    /// Edge voltages in `F_2^k` realizing the functionals `basis`: cotree
    /// edge `i` gets the vector whose `j`-th bit is bit `i` of `basis[j]`.
    pub fn voltages(&self, basis: &[u64]) -> BTreeMap<(u32, u32), F2Vector> {
        let k = basis.len();
        let mut out = BTreeMap::new();
        for (i, &e) in self.cotree.iter().enumerate() {
            let bits = basis
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &phi)| acc | (phi >> i & 1) << j);
            if bits != 0 {
                let (u, v) = self.edges[e];
                out.insert((u as u32, v as u32), F2Vector::new(k, bits).expect("fits in k bits"));
            }
        }
        out
    }
}

/// Least element of each orbit of non-zero vectors under the group
/// generated by `gens`.
pub fn vector_orbit_representatives(dim: usize, gens: &[F2Matrix]) -> Vec<u64> {
    let size = 1usize << dim;
    let mut seen = vec![false; size];
    let mut reps = Vec::new();
    for v in 1..size {
        if seen[v] {
            continue;
        }
        reps.push(v as u64);
        seen[v] = true;
        let mut stack = vec![v as u64];
        while let Some(x) = stack.pop() {
            for a in gens {
                let y = a.apply_bits(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    reps
}

/// Span of the orbit of `v`, or `None` once its dimension exceeds `k`.
fn cyclic_submodule(dim: usize, v: u64, gens: &[F2Matrix], k: usize) -> Option<F2Subspace> {
    let mut span = F2Subspace::span(dim, [v]).expect("vector fits");
    let mut stack = vec![v];
    let mut seen = BTreeSet::from([v]);
    while let Some(x) = stack.pop() {
        for a in gens {
            let y = a.apply_bits(x);
            if seen.insert(y) {
                if !span.contains_bits(y) {
                    span = F2Subspace::span(dim, span.basis().iter().copied().chain([y])).expect("fits");
                    if span.dim() > k {
                        return None;
                    }
                }
                stack.push(y);
            }
        }
    }
    Some(span)
}

/// All subspaces of dimension `k` invariant under every matrix in `gens`,
/// sorted.
pub fn invariant_subspaces(dim: usize, gens: &[F2Matrix], k: usize) -> Vec<F2Subspace> {
    if k == 0 {
        return vec![F2Subspace::zero(dim)];
    }
    // every invariant subspace is the sum of the cyclic submodules it contains
    let small: BTreeSet<F2Subspace> = (1..1u64 << dim)
        .filter_map(|v| cyclic_submodule(dim, v, gens, k))
        .collect();
    let mut all: BTreeSet<F2Subspace> = small.clone();
    let mut frontier: Vec<F2Subspace> = small.iter().cloned().collect();
    while let Some(a) = frontier.pop() {
        for b in &small {
            let sum = F2Subspace::span(dim, a.basis().iter().chain(b.basis()).copied()).expect("fits");
            if sum.dim() <= k && all.insert(sum.clone()) {
                frontier.push(sum);
            }
        }
    }
    all.into_iter().filter(|w| w.dim() == k).collect()
}

/// What happened to one voltage assignment.
#[derive(Clone, Debug)]
pub enum CoverOutcome {
    Disconnected,
    /// Connected, with the recorded s-arc data, but not 5-arc-transitive.
    Rejected { max_s: Option<usize> },
    FiveArc(Box<CensusRecord>),
}

/// Build the cover of the Tutte–Coxeter graph with the given voltages and
/// decide whether it is 5-arc-transitive.
pub fn five_arc_candidate(base: &Graph, k: usize, voltages: &BTreeMap<(u32, u32), F2Vector>) -> Result<CoverOutcome> {
    let cover = voltage_cover(base, k, voltages)?;
    if !cover.is_connected() {
        return Ok(CoverOutcome::Disconnected);
    }
    let aut: PermGroup = automorphism_group(&cover);
    let provenance = Provenance::FiveArc {
        k,
        voltages: voltages
            .iter()
            .filter(|(_, a)| !a.is_zero())
            .map(|(&(u, v), a)| (u, v, a.bits()))
            .collect(),
    };
    let record = CensusRecord::analyze_with_group(&cover, &aut, provenance)?;
    if let Some(s) = record.max_s {
        if record.valency == Some(3) && s > 5 {
            return Err(Error::Internal(format!(
                "cubic graph {} is {s}-arc-transitive",
                record.certificate
            )));
        }
    }
    if record.max_s != Some(5) {
        return Ok(CoverOutcome::Rejected { max_s: record.max_s });
    }
    let n = record.order;
    if record.aut_order != (48 * n).into() || aut.stabilizer_order(0) != 48u32.into() {
        return Err(Error::Internal(format!(
            "5-arc-transitive cubic graph of order {n} has |Aut| = {}",
            record.aut_order
        )));
    }
    Ok(CoverOutcome::FiveArc(Box::new(record)))
}

/// Counts from one cover search.
#[derive(Clone, Debug, Default, Serialize)]
pub struct FiveArcStats {
    /// `(k, candidates examined)`.
    pub candidates: Vec<(usize, usize)>,
    pub disconnected: usize,
    pub rejected: usize,
}

/// 5-arc-transitive elementary abelian covers of the Tutte–Coxeter graph
/// for voltage ranks in `cfg.k_range`.
pub fn five_arc_pipeline(cfg: &PipelineConfig) -> Result<Vec<CensusRecord>> {
    Ok(run_five_arc(cfg)?.0)
}

/// As [`five_arc_pipeline`], with statistics. Voltage assignments are taken
/// up to equivalence as subspaces of cycle-space functionals: for `k = 1`
/// one per orbit of the automorphism group of the base, for `k ≥ 2` only
/// the subspaces invariant under it.
pub fn run_five_arc(cfg: &PipelineConfig) -> Result<(Vec<CensusRecord>, FiveArcStats)> {
    let (k_lo, k_hi) = cfg.k_range;
    if k_lo > k_hi {
        return Err(Error::domain("empty voltage rank range"));
    }
    if k_hi > MAX_VOLTAGE_RANK {
        return Err(Error::Resource(format!(
            "voltage rank {k_hi} exceeds the cap {MAX_VOLTAGE_RANK}"
        )));
    }
    let base = families::tutte_coxeter();
    let space = CycleSpace::new(&base)?;
    let aut = automorphism_group(&base);
    let gens: Vec<F2Matrix> = aut
        .generators()
        .iter()
        .map(|s| space.functional_action(s))
        .collect::<Result<_>>()?;
    let dim = space.dim();
    let mut stats = FiveArcStats::default();
    let mut records = Vec::new();
    for k in k_lo..=k_hi {
        let bases: Vec<Vec<u64>> = match k {
            0 => vec![Vec::new()],
            1 => vector_orbit_representatives(dim, &gens).into_iter().map(|v| vec![v]).collect(),
            _ => invariant_subspaces(dim, &gens, k)
                .into_iter()
                .map(|w| w.basis().to_vec())
                .collect(),
        };
        stats.candidates.push((k, bases.len()));
        let outcomes = parallel_map(&bases, cfg.workers, |b| {
            five_arc_candidate(&base, k, &space.voltages(b))
        });
        for outcome in outcomes {
            match outcome? {
                CoverOutcome::Disconnected => stats.disconnected += 1,
                CoverOutcome::Rejected { .. } => stats.rejected += 1,
                CoverOutcome::FiveArc(r) => records.push(*r),
            }
        }
    }
    Ok((dedup_records(records), stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_space_of_tutte_coxeter() {
        let tc = families::tutte_coxeter();
        let space = CycleSpace::new(&tc).unwrap();
        assert_eq!(space.dim(), 45 - 29);
        // a cotree edge's indicator restricts to the matching unit vector
        for (i, &e) in space.cotree.iter().enumerate() {
            let mut mask = vec![0u64; 1];
            mask[0] |= 1 << e;
            assert_eq!(space.restrict(&mask), 1 << i);
        }
    }

    #[test]
    fn functional_action_is_a_representation() {
        let tc = families::tutte_coxeter();
        let space = CycleSpace::new(&tc).unwrap();
        let aut = automorphism_group(&tc);
        for s in aut.generators() {
            let a = space.functional_action(s).unwrap();
            assert!(a.is_invertible());
            let b = space.functional_action(&s.inverse()).unwrap();
            assert!(a.mul(&b).is_identity());
        }
    }

    #[test]
    fn rank_zero_is_the_base_graph() {
        let cfg = PipelineConfig {
            k_range: (0, 0),
            ..PipelineConfig::default()
        };
        let records = five_arc_pipeline(&cfg).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].order, 30);
        assert_eq!(records[0].max_s, Some(5));
        assert_eq!(records[0].aut_order, 1440u32.into());
    }

    #[test]
    fn zero_voltages_are_disconnected() {
        let tc = families::tutte_coxeter();
        let out = five_arc_candidate(&tc, 1, &BTreeMap::new()).unwrap();
        assert!(matches!(out, CoverOutcome::Disconnected));
    }

    #[test]
    fn invariant_subspaces_of_a_permutation_module() {
        // Sym(3) permuting coordinates of F_2^3: invariant lines are <111>,
        // invariant planes the sum-zero plane
        let gens = vec![
            F2Matrix::permutation(&[1, 0, 2]).unwrap(),
            F2Matrix::permutation(&[1, 2, 0]).unwrap(),
        ];
        assert_eq!(invariant_subspaces(3, &gens, 1).len(), 1);
        assert_eq!(invariant_subspaces(3, &gens, 2).len(), 1);
        assert_eq!(invariant_subspaces(3, &gens, 3).len(), 1);
        assert_eq!(vector_orbit_representatives(3, &gens), vec![1, 3, 7]);
    }
}
