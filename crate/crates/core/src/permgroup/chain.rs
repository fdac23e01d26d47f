use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::One;

use super::perm::Permutation;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: Vec::new(),
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base as u32];
        let mut i = 0;
        while i < self.orbit.len() {
            let b = self.orbit[i] as usize;
            let u = self.transversal[b].clone().expect("orbit point has a transversal");
            for s in &self.gens {
                let c = s.apply(b);
                if self.transversal[c].is_none() {
                    self.transversal[c] = Some(u.then(s));
                    self.orbit.push(c as u32);
                }
            }
            i += 1;
        }
    }
}

/// Permutation group with a deterministic Schreier–Sims stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    /// Build the group and its stabilizer chain.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::domain(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        let mut group = PermGroup {
            degree,
            gens,
            levels: Vec::new(),
        };
        group.schreier_sims();
        Ok(group)
    }

    /// Group generated by `gens`; all must share one degree.
    pub fn stabilizer_chain(gens: &[Permutation]) -> Result<Self> {
        let degree = gens.first().map_or(0, Permutation::degree);
        PermGroup::new(degree, gens.to_vec())
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            gens: Vec::new(),
            levels: Vec::new(),
        }
    }

    fn schreier_sims(&mut self) {
        let degree = self.degree;
        let nontrivial: Vec<Permutation> =
            self.gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &nontrivial {
            if self.levels.iter().all(|l| g.apply(l.base) == l.base) {
                let b = g.first_moved_point().expect("non-identity");
                self.levels.push(Level::new(b, degree));
            }
        }
        for i in 0..self.levels.len() {
            let fixing: Vec<Permutation> = nontrivial
                .iter()
                .filter(|g| self.levels[..i].iter().all(|l| g.apply(l.base) == l.base))
                .cloned()
                .collect();
            self.levels[i].gens = fixing;
            self.levels[i].rebuild_orbit(degree);
        }

        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            match self.failing_schreier_generator(level) {
                None => i -= 1,
                Some((residue, drop)) => {
                    if drop == self.levels.len() {
                        let b = residue.first_moved_point().expect("non-identity residue");
                        self.levels.push(Level::new(b, degree));
                    }
                    for l in level + 1..=drop {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].rebuild_orbit(degree);
                    }
                    i = drop + 1;
                }
            }
        }
    }

    fn failing_schreier_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for &b in &lv.orbit {
            let u = lv.transversal[b as usize].as_ref().expect("orbit point");
            for s in &lv.gens {
                let c = s.apply(b as usize);
                let uc = lv.transversal[c].as_ref().expect("orbit closed");
                let h = u.then(s).then(&uc.inverse());
                if h.is_identity() {
                    continue;
                }
                let (res, drop) = self.sift(h, level + 1);
                if !res.is_identity() {
                    return Some((res, drop));
                }
            }
        }
        None
    }

    /// Strip `g` through the levels starting at `start`; returns the residue
    /// and the level at which sifting stopped (`levels.len()` if it passed
    /// every level).
    fn sift(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, lv) in self.levels.iter().enumerate().skip(start) {
            let b = g.apply(lv.base);
            match &lv.transversal[b] {
                None => return (g, l),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Union of the strong generators over all levels.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Exact group order: the product of the transversal sizes.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order as a machine integer, if it fits.
    pub fn order_u128(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, drop) = self.sift(g.clone(), 0);
        drop == self.levels.len() && res.is_identity()
    }

    /// Least set containing `point` and closed under the generators.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        if point >= self.degree {
            return Vec::new();
        }
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        let mut out = vec![point];
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Orbit of `point` with, for every orbit element `y`, a group element
    /// mapping `point` to `y` (words in the generators).
    pub fn orbit_transversal(&self, point: usize) -> Vec<(usize, Permutation)> {
        let mut reps: Vec<Option<Permutation>> = vec![None; self.degree];
        reps[point] = Some(Permutation::identity(self.degree));
        let mut order = vec![point];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            let u = reps[x].clone().expect("visited");
            for g in &self.gens {
                let y = g.apply(x);
                if reps[y].is_none() {
                    reps[y] = Some(u.then(g));
                    order.push(y);
                }
            }
            i += 1;
        }
        order
            .into_iter()
            .map(|x| (x, reps[x].take().expect("visited")))
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Transitive with order equal to the degree.
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == BigUint::from(self.degree)
    }

    /// Order of the stabilizer of `point`, by the orbit–stabilizer theorem.
    pub fn stabilizer_order(&self, point: usize) -> BigUint {
        self.order() / BigUint::from(self.orbit(point).len())
    }

    /// Every element, for groups up to `cap` elements, in a deterministic
    /// order starting with the identity.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        match self.order_u128() {
            Some(n) if n <= cap as u128 => {}
            _ => {
                return Err(Error::Resource(format!(
                    "group of order {} exceeds the element-listing cap {cap}",
                    self.order()
                )))
            }
        }
        let mut elems = vec![Permutation::identity(self.degree)];
        for lv in self.levels.iter().rev() {
            let reps: Vec<&Permutation> = lv
                .orbit
                .iter()
                .map(|&b| lv.transversal[b as usize].as_ref().expect("orbit point"))
                .collect();
            let mut next = Vec::with_capacity(elems.len() * reps.len());
            for u in &reps {
                for e in &elems {
                    next.push(e.then(u));
                }
            }
            elems = next;
        }
        Ok(elems)
    }

    /// Whether `g` maps the point set `set` onto itself.
    pub fn stabilizes_set(g: &Permutation, set: &[usize]) -> bool {
        let mut inside = vec![false; g.degree()];
        for &x in set {
            inside[x] = true;
        }
        set.iter().all(|&x| inside[g.apply(x)])
    }
}
