use super::chain::PermGroup;
use super::finite::{FiniteGroup, Subgroup};
use super::perm::Permutation;
use crate::error::{Error, Result};

/// All automorphisms `σ` of `g` with `S^σ = S`, as permutations of the
/// positions of `S` sorted ascending.
///
/// Images are assigned to a generating prefix of `S` by backtracking in
/// ascending element order, pruned by element orders and the orders of
/// pairwise products, and each complete assignment is extended through the
/// multiplication table.
pub fn set_preserving_automorphisms(g: &FiniteGroup, s: &[u32]) -> Result<PermGroup> {
    let mut set: Vec<u32> = s.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.iter().any(|&x| x as usize >= g.order()) {
        return Err(Error::domain("connection set element out of range"));
    }
    if set.contains(&0) {
        return Err(Error::precondition("connection set contains the identity"));
    }
    let base = generating_prefix(g, &set);
    if Subgroup::generated(g, &base).order() != g.order() {
        return Err(Error::precondition("connection set does not generate the group"));
    }
    let k = set.len();
    if k == 0 {
        return Ok(PermGroup::trivial(0));
    }
    let source = g.with_gens(base.clone())?;
    let orders: Vec<usize> = set.iter().map(|&x| g.element_order(x)).collect();
    let base_pos: Vec<usize> = base
        .iter()
        .map(|b| set.binary_search(b).expect("base is drawn from S"))
        .collect();

    let mut found: Vec<Permutation> = Vec::new();
    let mut images: Vec<usize> = Vec::with_capacity(base.len());
    let mut used = vec![false; k];
    let mut search = Search {
        g,
        source: &source,
        set: &set,
        orders: &orders,
        base_pos: &base_pos,
        found: &mut found,
    };
    search.extend(&mut images, &mut used);
    let gens: Vec<Permutation> = found.into_iter().filter(|p| !p.is_identity()).collect();
    PermGroup::new(k, gens)
}

fn generating_prefix(g: &FiniteGroup, set: &[u32]) -> Vec<u32> {
    let mut base = Vec::new();
    let mut current = Subgroup::trivial(g);
    for &x in set {
        if !current.contains(x) {
            base.push(x);
            current = Subgroup::generated(g, &base);
            if current.order() == g.order() {
                break;
            }
        }
    }
    base
}

struct Search<'a> {
    g: &'a FiniteGroup,
    source: &'a FiniteGroup,
    set: &'a [u32],
    orders: &'a [usize],
    base_pos: &'a [usize],
    found: &'a mut Vec<Permutation>,
}

impl Search<'_> {
    fn extend(&mut self, images: &mut Vec<usize>, used: &mut [bool]) {
        let depth = images.len();
        if depth == self.base_pos.len() {
            self.try_complete(images);
            return;
        }
        let src = self.base_pos[depth];
        for cand in 0..self.set.len() {
            if used[cand] || self.orders[cand] != self.orders[src] {
                continue;
            }
            let consistent = (0..depth).all(|e| {
                let a = self.g.mul(self.set[self.base_pos[e]], self.set[src]);
                let b = self.g.mul(self.set[images[e]], self.set[cand]);
                self.g.element_order(a) == self.g.element_order(b)
            });
            if !consistent {
                continue;
            }
            used[cand] = true;
            images.push(cand);
            self.extend(images, used);
            images.pop();
            used[cand] = false;
        }
    }

    fn try_complete(&mut self, images: &[usize]) {
        let targets: Vec<u32> = images.iter().map(|&i| self.set[i]).collect();
        let Some(phi) = self.source.extend_homomorphism(self.g, &targets) else {
            return;
        };
        let mut hit = vec![false; self.g.order()];
        for &y in &phi {
            if std::mem::replace(&mut hit[y as usize], true) {
                return;
            }
        }
        let mut perm = Vec::with_capacity(self.set.len());
        for &x in self.set {
            match self.set.binary_search(&phi[x as usize]) {
                Ok(pos) => perm.push(pos as u32),
                Err(_) => return,
            }
        }
        self.found.push(Permutation::new(perm).expect("automorphism permutes S"));
    }
}
