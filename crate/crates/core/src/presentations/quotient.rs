use std::collections::VecDeque;

use super::presentation::{left_normed_commutator, Presentation, Word};
use super::todd_coxeter::{todd_coxeter, CosetTable};
use crate::error::{Error, Result};
use crate::permgroup::{FiniteGroup, TABLE_CAP};

/// Presentation of `W_d / γ_{c+1}(W_d)`: the squares `x_i²` and every
/// left-normed commutator `[x_{i_1}, …, x_{i_{c+1}}]` over all generator
/// tuples (trivially reducing ones dropped), tuples in lexicographic order.
pub fn wd_class_relators(d: usize, c: usize) -> Result<Presentation> {
    if d < 3 {
        return Err(Error::domain(format!("need d ≥ 3, got {d}")));
    }
    if c < 1 {
        return Err(Error::domain("need class c ≥ 1"));
    }
    let mut relators: Vec<Word> = (1..=d as i32).map(|g| vec![g, g]).collect();
    let mut tuple = vec![0usize; c + 1];
    loop {
        let w = left_normed_commutator(&tuple);
        if !w.is_empty() {
            relators.push(w);
        }
        let mut k = c + 1;
        loop {
            if k == 0 {
                return Presentation::new(d, relators);
            }
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < d {
                break;
            }
            tuple[k] = 0;
        }
    }
}

/// Multiplication table of the regular action on the cosets of the trivial
/// subgroup. Element `i` is the coset `i`; the distinguished generators are
/// the images of the presentation generators.
fn regular_table(t: &CosetTable) -> Result<FiniteGroup> {
    let n = t.index();
    if n > TABLE_CAP {
        return Err(Error::UnsupportedScale(format!(
            "group of order {n} exceeds the multiplication-table cap {TABLE_CAP}"
        )));
    }
    let letters: Vec<i32> = (1..=t.ngens() as i32).flat_map(|g| [g, -g]).collect();
    // BFS tree: every coset j ≠ 0 is parent[j]·letter[j]
    let mut parent = vec![(usize::MAX, 0i32); n];
    let mut order = Vec::with_capacity(n);
    parent[0] = (0, 0);
    order.push(0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &l in &letters {
            let y = t.act(x, l);
            if parent[y].0 == usize::MAX {
                parent[y] = (x, l);
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        table[i * n] = i as u32;
        for &j in &order[1..] {
            let (p, l) = parent[j];
            table[i * n + j] = t.act(table[i * n + p] as usize, l) as u32;
        }
    }
    let gens = (1..=t.ngens() as i32).map(|g| t.act(0, g) as u32).collect();
    FiniteGroup::from_table(n, table, gens)
}

/// The finite group presented by `pres`, as a table whose distinguished
/// generators are the images of the presentation generators.
pub fn group_from_presentation(pres: &Presentation, coset_cap: usize) -> Result<FiniteGroup> {
    let t = todd_coxeter(pres, &[], coset_cap)?;
    regular_table(&t)
}

/// A finite quotient of `W_d` with the images of `x_1, …, x_d` marked, and
/// `y_i = x_i x_d` for `i < d`.
#[derive(Clone, Debug)]
pub struct MarkedQuotient {
    pub group: FiniteGroup,
    pub xgens: Vec<u32>,
    pub ygens: Vec<u32>,
    pub d: usize,
    pub c: usize,
}

impl MarkedQuotient {
    /// Mark a group generated by `d` involutions.
    pub fn new(group: FiniteGroup, xgens: Vec<u32>, c: usize) -> Result<Self> {
        let d = xgens.len();
        for &x in &xgens {
            if x as usize >= group.order() || group.mul(x, x) != 0 {
                return Err(Error::domain(format!("marked generator {x} is not an involution or identity")));
            }
        }
        let group = group.with_gens(xgens.clone())?;
        let last = *xgens.last().ok_or_else(|| Error::domain("no marked generators"))?;
        let ygens = xgens[..d - 1].iter().map(|&x| group.mul(x, last)).collect();
        Ok(MarkedQuotient {
            group,
            xgens,
            ygens,
            d,
            c,
        })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `log_2` of the order (the order is always a power of two here).
    pub fn log2_order(&self) -> u32 {
        self.group.order().trailing_zeros()
    }
}

/// `W_d / γ_{c+1}(W_d)` as a marked multiplication-table group.
pub fn build_quotient(d: usize, c: usize, coset_cap: usize) -> Result<MarkedQuotient> {
    let pres = wd_class_relators(d, c)?;
    let t = todd_coxeter(&pres, &[], coset_cap)?;
    if !t.index().is_power_of_two() {
        return Err(Error::Internal(format!(
            "quotient order {} is not a power of two",
            t.index()
        )));
    }
    let group = regular_table(&t)?;
    let xgens = group.gens().to_vec();
    MarkedQuotient::new(group, xgens, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::DEFAULT_COSET_CAP;

    #[test]
    fn relator_counts() {
        let p = wd_class_relators(3, 1).unwrap();
        // 3 squares and the 6 commutators [x_i, x_j] with i ≠ j
        assert_eq!(p.relators().len(), 9);
        assert!(wd_class_relators(2, 1).is_err());
        assert!(wd_class_relators(3, 0).is_err());
    }

    #[test]
    fn abelian_quotients() {
        let q = build_quotient(3, 1, DEFAULT_COSET_CAP).unwrap();
        assert_eq!(q.order(), 8);
        let mut x = q.xgens.clone();
        x.sort_unstable();
        x.dedup();
        assert_eq!(x.len(), 3);
        assert_eq!(build_quotient(4, 1, DEFAULT_COSET_CAP).unwrap().order(), 16);
    }

    #[test]
    fn class_two_quotient_of_w3() {
        let q = build_quotient(3, 2, DEFAULT_COSET_CAP).unwrap();
        assert_eq!(q.order(), 64);
        assert!(q.xgens.iter().all(|&x| q.group.element_order(x) == 2));
        assert!(q.ygens.iter().all(|&y| q.group.element_order(y) <= 4));
        for (i, &y) in q.ygens.iter().enumerate() {
            assert_eq!(y, q.group.mul(q.xgens[i], q.xgens[2]));
        }
    }

    #[test]
    fn regular_table_matches_direct_dihedral_table() {
        let p = Presentation::new(2, vec![vec![1, 1], vec![2, 2], vec![1, 2, 1, 2, 1, 2, 1, 2, 1, 2]])
            .unwrap();
        let g = group_from_presentation(&p, 1000).unwrap();
        assert_eq!(g.order(), 10);
        assert!(crate::permgroup::are_isomorphic(&g, &FiniteGroup::dihedral(5).unwrap()));
    }

    #[test]
    fn coset_cap_is_echoed() {
        match build_quotient(3, 3, 100) {
            Err(Error::CosetCap { cap }) => assert_eq!(cap, 100),
            other => panic!("unexpected {other:?}"),
        }
    }
}
