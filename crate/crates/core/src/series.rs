//! The series `P_i`, its refinement `M(i,j)`, the rank `rr(H)` and the
//! `Sym(d)` action, all computed inside a finite marked quotient of `W_d`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Subspace};
use crate::permgroup::{FiniteGroup, Subgroup};
use crate::presentations::MarkedQuotient;

/// Lower central series of the quotient, the series `P_i`, and the
/// refinement between consecutive terms.
#[derive(Clone, Debug)]
pub struct SeriesData {
    /// `gamma[k]` is `γ_{k+1}`; the last entry is trivial.
    pub gamma: Vec<Subgroup>,
    /// `p_terms[k]` is `P_{k+1}`: `P_1 = ⟨y_1, …, y_{d-1}⟩` and `P_i = γ_i`
    /// for `i ≥ 2`. The last entry is trivial.
    pub p_terms: Vec<Subgroup>,
    /// `M(i,j)` for `1 ≤ i ≤ class`, `0 ≤ j ≤ i`.
    pub m_terms: BTreeMap<(usize, usize), Subgroup>,
    /// `rk(M(i,j) / M(i,j+1))` for `0 ≤ j < i`.
    pub ranks: BTreeMap<(usize, usize), u32>,
}

impl SeriesData {
    /// `P_i` for `i ≥ 1`, trivial beyond the computed range.
    pub fn p(&self, g: &FiniteGroup, i: usize) -> Subgroup {
        assert!(i >= 1, "P_i is indexed from 1");
        self.p_terms
            .get(i - 1)
            .cloned()
            .unwrap_or_else(|| Subgroup::trivial(g))
    }

    /// Largest `i` with `P_i` nontrivial.
    pub fn class(&self) -> usize {
        self.p_terms.iter().take_while(|s| s.order() > 1).count()
    }

    /// `rk(P_i / P_{i+1})` for `i = 1, …, class`.
    pub fn p_factor_ranks(&self) -> Vec<u32> {
        self.p_terms
            .windows(2)
            .map(|w| log2_index(&w[0], &w[1]))
            .collect()
    }

    /// `rk(γ_k / γ_{k+1})` for `k = 1, …`.
    pub fn gamma_factor_ranks(&self) -> Vec<u32> {
        self.gamma
            .windows(2)
            .map(|w| log2_index(&w[0], &w[1]))
            .collect()
    }

    pub fn summary(&self) -> SeriesSummary {
        SeriesSummary {
            gamma_ranks: self.gamma_factor_ranks(),
            p_ranks: self.p_factor_ranks(),
            m_ranks: self
                .ranks
                .iter()
                .map(|(&(i, j), &r)| MRank { i, j, rank: r })
                .collect(),
        }
    }
}

/// Serializable rank table.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeriesSummary {
    pub gamma_ranks: Vec<u32>,
    pub p_ranks: Vec<u32>,
    pub m_ranks: Vec<MRank>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MRank {
    pub i: usize,
    pub j: usize,
    /// `rk(M(i,j) / M(i,j+1))`.
    pub rank: u32,
}

fn log2_index(big: &Subgroup, small: &Subgroup) -> u32 {
    let idx = big.order() / small.order();
    debug_assert!(idx.is_power_of_two());
    idx.trailing_zeros()
}

/// `rk(A/B)` after checking that `B ≤ A` and that `A/B` is elementary
/// abelian (squares and commutators of generators of `A` lie in `B`).
pub fn section_rank(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Result<u32> {
    if !b.is_subgroup_of(a) {
        return Err(Error::Internal("section bottom is not contained in the top".into()));
    }
    let normal_in_a = b
        .gens()
        .iter()
        .all(|&x| a.gens().iter().all(|&y| b.contains(g.conjugate(x, y))));
    if !normal_in_a || !a.is_elementary_abelian_over(g, b) {
        return Err(Error::Internal(
            "section is not an elementary abelian 2-group".into(),
        ));
    }
    Ok(log2_index(a, b))
}

/// Compute `γ_i` by iterated commutators with the whole group, and
/// independently `P_i = [P_{i-1}, P_1] P_{i-1}²` from `P_1 = ⟨y⟩`; the two
/// must agree from `i = 2` on, and every factor must be elementary abelian.
pub fn p_series(q: &MarkedQuotient) -> Result<SeriesData> {
    let g = &q.group;
    let whole = Subgroup::whole(g);
    let mut gamma = vec![whole.clone()];
    while gamma.last().expect("nonempty").order() > 1 {
        let last = gamma.last().expect("nonempty");
        let next = Subgroup::commutator(g, last, &whole);
        if next.order() == last.order() {
            return Err(Error::Internal("lower central series stalls; group is not nilpotent".into()));
        }
        gamma.push(next);
    }
    for w in gamma.windows(2) {
        section_rank(g, &w[0], &w[1])?;
    }

    let p1 = Subgroup::generated(g, &q.ygens);
    let mut p_terms = vec![p1.clone()];
    while p_terms.last().expect("nonempty").order() > 1 {
        let last = p_terms.last().expect("nonempty");
        let comm = Subgroup::commutator(g, last, &p1);
        let next = Subgroup::join(g, &comm, &Subgroup::squares(g, last));
        if next.order() == last.order() {
            return Err(Error::Internal("series P_i stalls".into()));
        }
        p_terms.push(next);
    }
    for w in p_terms.windows(2) {
        section_rank(g, &w[0], &w[1])?;
    }
    for (k, p) in p_terms.iter().enumerate().skip(1) {
        let gk = gamma.get(k).cloned().unwrap_or_else(|| Subgroup::trivial(g));
        if p.elements() != gk.elements() {
            return Err(Error::Internal(format!(
                "P_{} and γ_{} differ ({} vs {} elements)",
                k + 1,
                k + 1,
                p.order(),
                gk.order()
            )));
        }
    }

    let mut data = SeriesData {
        gamma,
        p_terms,
        m_terms: BTreeMap::new(),
        ranks: BTreeMap::new(),
    };
    let class = data.class();
    for i in 1..=class {
        for j in 0..=i {
            let m = m_subgroup_in(q, &data, i, j);
            data.m_terms.insert((i, j), m);
        }
        for j in 0..i {
            let r = section_rank(g, &data.m_terms[&(i, j)], &data.m_terms[&(i, j + 1)])?;
            data.ranks.insert((i, j), r);
        }
    }
    Ok(data)
}

/// The power-commutators `[a_1, …, a_{i-s}]^{2^s}` with `a_k` drawn from the
/// marked `y` generators (tuples in lexicographic order) and `j ≤ s ≤ i-1`.
pub fn power_commutators(q: &MarkedQuotient, i: usize, j: usize) -> Vec<u32> {
    let g = &q.group;
    let y = &q.ygens;
    let mut out = Vec::new();
    if y.is_empty() {
        return out;
    }
    for s in j..i {
        let len = i - s;
        let mut tuple = vec![0usize; len];
        loop {
            let mut c = y[tuple[0]];
            for &t in &tuple[1..] {
                c = g.commutator(c, y[t]);
            }
            out.push(g.pow(c, 1u64 << s));
            let mut k = len;
            let mut advanced = false;
            while k > 0 {
                k -= 1;
                tuple[k] += 1;
                if tuple[k] < y.len() {
                    advanced = true;
                    break;
                }
                tuple[k] = 0;
            }
            if !advanced {
                break;
            }
        }
    }
    out
}

fn m_subgroup_in(q: &MarkedQuotient, data: &SeriesData, i: usize, j: usize) -> Subgroup {
    let g = &q.group;
    let mut gens = data.p(g, i + 1).gens().to_vec();
    gens.extend(power_commutators(q, i, j));
    Subgroup::generated(g, &gens)
}

/// `M(i,j)`: generated by `P_{i+1}` and the power-commutators of
/// [`power_commutators`]. Trivial once `P_i` is trivial.
pub fn m_subgroup(q: &MarkedQuotient, data: &SeriesData, i: usize, j: usize) -> Result<Subgroup> {
    if i < 1 || j > i {
        return Err(Error::domain(format!("M({i},{j}) needs i ≥ 1 and 0 ≤ j ≤ i")));
    }
    if let Some(m) = data.m_terms.get(&(i, j)) {
        return Ok(m.clone());
    }
    if data.p(&q.group, i).order() == 1 {
        return Ok(Subgroup::trivial(&q.group));
    }
    Ok(m_subgroup_in(q, data, i, j))
}

/// `K = [H, Q] H²` for a normal subgroup `H`.
pub fn rr_kernel(q: &MarkedQuotient, h: &Subgroup) -> Result<Subgroup> {
    let g = &q.group;
    if !h.is_normal(g) {
        return Err(Error::precondition("rr is defined for normal subgroups only"));
    }
    let comm = Subgroup::commutator(g, h, &Subgroup::whole(g));
    Ok(Subgroup::join(g, &comm, &Subgroup::squares(g, h)))
}

/// `rr(H) = rk(H / [H, Q] H²)`.
pub fn rr_rank(q: &MarkedQuotient, h: &Subgroup) -> Result<u32> {
    let k = rr_kernel(q, h)?;
    section_rank(&q.group, h, &k)
}

/// The automorphisms of the quotient induced by permuting `x_1, …, x_d`.
#[derive(Clone, Debug)]
pub struct SymdAction {
    /// `perms[k][i]` is the index `σ(i)`; permutations in lexicographic order,
    /// starting with the identity.
    pub perms: Vec<Vec<usize>>,
    /// `maps[k][e]` is the image of element `e` under the automorphism
    /// sending `x_i` to `x_{σ(i)}`.
    pub maps: Vec<Vec<u32>>,
}

impl SymdAction {
    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    /// Index of a permutation in `perms`.
    pub fn position(&self, sigma: &[usize]) -> Option<usize> {
        self.perms.iter().position(|p| p == sigma)
    }

    /// Whether every automorphism maps `h` onto itself.
    pub fn preserves(&self, h: &Subgroup) -> bool {
        self.maps
            .iter()
            .all(|m| h.gens().iter().all(|&x| h.contains(m[x as usize])))
    }
}

fn lex_permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..d).collect();
    loop {
        out.push(p.clone());
        // next permutation in lexicographic order
        let Some(i) = (1..d).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..d).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Extend every relabeling of the marked involutions to an automorphism of
/// the table, verifying each one.
pub fn symd_action(q: &MarkedQuotient) -> Result<SymdAction> {
    let g = &q.group;
    let perms = lex_permutations(q.d);
    let mut maps = Vec::with_capacity(perms.len());
    for sigma in &perms {
        let images: Vec<u32> = sigma.iter().map(|&k| q.xgens[k]).collect();
        let phi = g.extend_homomorphism(g, &images).ok_or_else(|| {
            Error::Internal(format!("relabeling {sigma:?} does not extend to a homomorphism"))
        })?;
        let mut hit = vec![false; g.order()];
        for &y in &phi {
            if std::mem::replace(&mut hit[y as usize], true) {
                return Err(Error::Internal(format!("relabeling {sigma:?} is not injective")));
            }
        }
        maps.push(phi);
    }
    Ok(SymdAction { perms, maps })
}

/// Whether `Sym(d)` acts faithfully on `M(i,i-2) / M(i,i)`.
pub fn faithfulness_check(
    q: &MarkedQuotient,
    data: &SeriesData,
    action: &SymdAction,
    i: usize,
) -> Result<bool> {
    if i < 2 {
        return Err(Error::domain("the section M(i,i-2)/M(i,i) needs i ≥ 2"));
    }
    let top = m_subgroup(q, data, i, i - 2)?;
    let bottom = m_subgroup(q, data, i, i)?;
    acts_faithfully_on(q, action, &top, &bottom)
}

/// Whether no non-identity automorphism in `action` acts trivially on the
/// section `top / bottom`. Both subgroups must be invariant.
pub fn acts_faithfully_on(
    q: &MarkedQuotient,
    action: &SymdAction,
    top: &Subgroup,
    bottom: &Subgroup,
) -> Result<bool> {
    let g = &q.group;
    if top.order() == bottom.order() {
        return Err(Error::domain("degenerate section: top equals bottom"));
    }
    if !action.preserves(top) || !action.preserves(bottom) {
        return Err(Error::domain("section is not invariant under the action"));
    }
    for (sigma, phi) in action.perms.iter().zip(&action.maps) {
        if sigma.iter().enumerate().all(|(i, &s)| i == s) {
            continue;
        }
        let trivial = top
            .gens()
            .iter()
            .all(|&a| bottom.contains(g.mul(phi[a as usize], g.inv(a))));
        if trivial {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An elementary abelian section `H/K` of the quotient identified with
/// `F_2^r` through a chosen basis.
#[derive(Clone, Debug)]
pub struct Section {
    pub h: Subgroup,
    pub k: Subgroup,
    /// Coset representatives of a basis of `H/K`.
    pub basis: Vec<u32>,
    /// Coordinates of each element of `H` (indexed by element; garbage
    /// outside `H`).
    coords: Vec<u64>,
}

impl Section {
    /// Requires `K ≤ H`, `K` normal in the group, `H/K` elementary abelian.
    pub fn new(g: &FiniteGroup, h: Subgroup, k: Subgroup) -> Result<Self> {
        let r = section_rank(g, &h, &k)?;
        if r > 20 {
            return Err(Error::UnsupportedScale(format!("section of rank {r} is too large")));
        }
        let mut basis = Vec::new();
        let mut span = k.clone();
        for &x in h.elements() {
            if !span.contains(x) {
                basis.push(x);
                let mut gens = k.gens().to_vec();
                gens.extend_from_slice(&basis);
                span = Subgroup::generated(g, &gens);
            }
        }
        debug_assert_eq!(basis.len(), r as usize);
        let mut coords = vec![u64::MAX; g.order()];
        for bits in 0..1u64 << r {
            let mut rep = 0u32;
            for (t, &b) in basis.iter().enumerate() {
                if bits >> t & 1 == 1 {
                    rep = g.mul(rep, b);
                }
            }
            for &kk in k.elements() {
                coords[g.mul(rep, kk) as usize] = bits;
            }
        }
        Ok(Section { h, k, basis, coords })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x ∈ H` in `F_2^r`.
    pub fn coords(&self, x: u32) -> u64 {
        debug_assert!(self.h.contains(x));
        self.coords[x as usize]
    }

    /// Matrix (row-vector convention) of an automorphism preserving `H`
    /// and `K`, given as an element map.
    pub fn action_matrix(&self, phi: &[u32]) -> F2Matrix {
        let rows = self
            .basis
            .iter()
            .map(|&b| self.coords(phi[b as usize]))
            .collect();
        F2Matrix::from_rows(self.rank(), rows).expect("coordinates fit the rank")
    }

    /// The subgroup `N` with `K ≤ N ≤ H` and `N/K = W`.
    pub fn preimage(&self, g: &FiniteGroup, w: &F2Subspace) -> Subgroup {
        let mut gens = self.k.gens().to_vec();
        for &v in w.basis() {
            let mut rep = 0u32;
            for (t, &b) in self.basis.iter().enumerate() {
                if v >> t & 1 == 1 {
                    rep = g.mul(rep, b);
                }
            }
            gens.push(rep);
        }
        Subgroup::generated(g, &gens)
    }
}
