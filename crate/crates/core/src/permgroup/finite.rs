use std::collections::VecDeque;
use std::fmt::Write as _;

use super::chain::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Largest order stored as a multiplication table.
pub const TABLE_CAP: usize = 4096;

/// A finite group given by its multiplication table. Element 0 is the
/// identity; `mul(a, b)` is the product `a·b`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    gens: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {}, gens {:?})", self.n, self.gens)
    }
}

impl FiniteGroup {
    /// Validate a row-major table and a generating list.
    pub fn from_table(n: usize, table: Vec<u32>, gens: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a group has at least one element"));
        }
        if n > TABLE_CAP {
            return Err(Error::UnsupportedScale(format!(
                "order {n} exceeds the multiplication-table cap {TABLE_CAP}"
            )));
        }
        if table.len() != n * n {
            return Err(Error::domain(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(Error::domain("table entry out of range"));
        }
        if let Some(&g) = gens.iter().find(|&&g| g as usize >= n) {
            return Err(Error::domain(format!("generator {g} out of range")));
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::domain("element 0 is not a two-sided identity"));
            }
        }
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let x = table[a * n + b] as usize;
                if seen[x] == a {
                    return Err(Error::domain(format!("row {a} repeats element {x}")));
                }
                seen[x] = a;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for b in 0..n {
            for a in 0..n {
                let x = table[a * n + b] as usize;
                if seen[x] == b {
                    return Err(Error::domain(format!("column {b} repeats element {x}")));
                }
                seen[x] = b;
            }
        }
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            let b = (0..n).find(|&b| table[a * n + b] == 0).expect("Latin square row");
            inverses[a] = b as u32;
        }
        let group = FiniteGroup {
            n,
            table,
            inverses,
            gens,
            labels: None,
        };
        group.check_generates()?;
        group.check_associative()?;
        Ok(group)
    }

    fn check_generates(&self) -> Result<()> {
        let reached = self.closure_from(&self.gens);
        if reached.len() != self.n {
            return Err(Error::domain(format!(
                "generators reach {} of {} elements",
                reached.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// Light's associativity test, run for every generator. A loop with
    /// identity in which every generator associates with all pairs is a group.
    fn check_associative(&self) -> Result<()> {
        let n = self.n;
        for &g in &self.gens {
            for x in 0..n {
                let xg = self.mul(x as u32, g);
                for y in 0..n {
                    let lhs = self.mul(xg, y as u32);
                    let rhs = self.mul(x as u32, self.mul(g, y as u32));
                    if lhs != rhs {
                        return Err(Error::domain(format!(
                            "table is not associative: ({x}·{g})·{y} ≠ {x}·({g}·{y})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Group generated by permutations of a common degree, with the
    /// generators as the distinguished generating list.
    pub fn from_permutations(perms: &[Permutation], cap: usize) -> Result<Self> {
        Ok(Self::from_permutations_with_elements(perms, cap)?.0)
    }

    /// As [`FiniteGroup::from_permutations`], also returning the permutation
    /// of each table element.
    pub fn from_permutations_with_elements(
        perms: &[Permutation],
        cap: usize,
    ) -> Result<(Self, Vec<Permutation>)> {
        let degree = perms.first().map_or(0, Permutation::degree);
        if perms.iter().any(|p| p.degree() != degree) {
            return Err(Error::domain("permutations of different degrees"));
        }
        let cap = cap.min(TABLE_CAP);
        let mut elems = vec![Permutation::identity(degree)];
        let mut index = std::collections::HashMap::new();
        index.insert(elems[0].clone(), 0u32);
        let mut i = 0;
        while i < elems.len() {
            for p in perms {
                let q = elems[i].then(p);
                if !index.contains_key(&q) {
                    if elems.len() == cap {
                        return Err(Error::Resource(format!(
                            "permutation group exceeds {cap} elements"
                        )));
                    }
                    index.insert(q.clone(), elems.len() as u32);
                    elems.push(q);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&elems[a].then(&elems[b])];
            }
        }
        let gens = perms.iter().map(|p| index[p]).collect();
        Ok((FiniteGroup::from_table(n, table, gens)?, elems))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
            .collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        FiniteGroup::from_table(n, table, gens)
    }

    /// `C_2^k` with elements as bit masks and XOR as product.
    pub fn elementary_abelian(k: u32) -> Result<Self> {
        if k > 12 {
            return Err(Error::UnsupportedScale(format!("2^{k} exceeds the table cap")));
        }
        let n = 1usize << k;
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a ^ b) as u32))
            .collect();
        FiniteGroup::from_table(n, table, (0..k).map(|i| 1u32 << i).collect())
    }

    /// Dihedral group of order `2m`: element `r^i s^e` has index `2i + e`.
    pub fn dihedral(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("dihedral group needs m ≥ 1"));
        }
        let n = 2 * m;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let (i, e) = (a / 2, a % 2);
            for b in 0..n {
                let (j, f) = (b / 2, b % 2);
                // r^i s^e r^j s^f = r^(i ± j) s^(e+f)
                let k = if e == 0 { (i + j) % m } else { (i + m - j) % m };
                table[a * n + b] = (2 * k + (e ^ f)) as u32;
            }
        }
        let gens = if m > 1 { vec![2, 1] } else { vec![1] };
        FiniteGroup::from_table(n, table, gens)
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let (a, b) = (g.order(), h.order());
        let n = a * b;
        if n > TABLE_CAP {
            return Err(Error::UnsupportedScale(format!("order {n} exceeds the table cap")));
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let p = g.mul((x / b) as u32, (y / b) as u32) as usize;
                let q = h.mul((x % b) as u32, (y % b) as u32) as usize;
                table[x * n + y] = (p * b + q) as u32;
            }
        }
        let mut gens: Vec<u32> = g.gens.iter().map(|&x| x * b as u32).collect();
        gens.extend(h.gens.iter().copied());
        FiniteGroup::from_table(n, table, gens)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// `[a, b] = a⁻¹b⁻¹ab`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        self.mul(self.mul(self.inv(a), self.inv(b)), ab)
    }

    /// `g⁻¹ a g`.
    pub fn conjugate(&self, a: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let mut acc = 0;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.n as u32).map(|a| self.element_order(a)).collect()
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::domain("one label per element required"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Same table with a different generating list.
    pub fn with_gens(&self, gens: Vec<u32>) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g as usize >= self.n) {
            return Err(Error::domain(format!("generator {g} out of range")));
        }
        let group = FiniteGroup {
            gens,
            ..self.clone()
        };
        group.check_generates()?;
        Ok(group)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements reachable from the identity by right multiplication by
    /// `gens`, in discovery order.
    pub fn closure_from(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// For every element, a shortest word in the generators (BFS tree):
    /// `(parent, generator position)` with the identity's entry unused.
    pub fn spanning_tree(&self) -> Vec<(u32, usize)> {
        let mut tree = vec![(u32::MAX, usize::MAX); self.n];
        tree[0] = (0, usize::MAX);
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in self.gens.iter().enumerate() {
                let y = self.mul(x, g);
                if tree[y as usize].0 == u32::MAX {
                    tree[y as usize] = (x, k);
                    queue.push_back(y);
                }
            }
        }
        tree
    }

    /// The right-regular representation: `g` acts by `x ↦ x·g`.
    pub fn regular_representation(&self) -> PermGroup {
        PermGroup::new(self.n, self.gens.iter().map(|&g| self.right_mult(g)).collect())
            .expect("degrees agree")
    }

    pub fn right_mult(&self, g: u32) -> Permutation {
        Permutation::from_vec_unchecked((0..self.n as u32).map(|x| self.mul(x, g)).collect())
    }

    pub fn center(&self) -> Vec<u32> {
        (0..self.n as u32)
            .filter(|&z| self.gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Number of steps in the derived series down to the trivial group.
    pub fn derived_length(&self) -> usize {
        let mut current = Subgroup::whole(self);
        let mut len = 0;
        while current.order() > 1 {
            let next = Subgroup::commutator(self, &current, &current);
            if next.order() == current.order() {
                // perfect subgroup; the group is not solvable
                return usize::MAX;
            }
            current = next;
            len += 1;
        }
        len
    }

    /// Extend `gens[k] ↦ images[k]` to a homomorphism into `target`,
    /// returning the element map, or `None` if no such homomorphism exists.
    pub fn extend_homomorphism(&self, target: &FiniteGroup, images: &[u32]) -> Option<Vec<u32>> {
        if images.len() != self.gens.len() || images.iter().any(|&x| x as usize >= target.n) {
            return None;
        }
        let tree = self.spanning_tree();
        let mut phi = vec![u32::MAX; self.n];
        phi[0] = 0;
        // closure_from lists elements in the same BFS order as the tree
        let bfs = self.closure_from(&self.gens);
        for &y in &bfs[1..] {
            let (p, k) = tree[y as usize];
            phi[y as usize] = target.mul(phi[p as usize], images[k]);
        }
        for x in 0..self.n as u32 {
            for (k, &g) in self.gens.iter().enumerate() {
                if phi[self.mul(x, g) as usize] != target.mul(phi[x as usize], images[k]) {
                    return None;
                }
            }
        }
        Some(phi)
    }

    /// Quotient by a normal subgroup, with the projection map.
    pub fn quotient(&self, normal: &Subgroup) -> Result<(FiniteGroup, Vec<u32>)> {
        if !normal.is_normal(self) {
            return Err(Error::precondition("quotient by a non-normal subgroup"));
        }
        let mut coset_of = vec![u32::MAX; self.n];
        let mut reps = Vec::new();
        for x in self.closure_from(&self.gens) {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &h in normal.elements() {
                coset_of[self.mul(h, x) as usize] = id;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                table[a * m + b] = coset_of[self.mul(reps[a], reps[b]) as usize];
            }
        }
        let gens = self.gens.iter().map(|&g| coset_of[g as usize]).collect();
        Ok((FiniteGroup::from_table(m, table, gens)?, coset_of))
    }

    /// Text form: `n`, then `n` rows, then `gens: ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.n).unwrap();
        for a in 0..self.n {
            let row: Vec<String> = self.table[a * self.n..(a + 1) * self.n]
                .iter()
                .map(u32::to_string)
                .collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
        let gens: Vec<String> = self.gens.iter().map(u32::to_string).collect();
        writeln!(out, "gens: {}", gens.join(" ")).unwrap();
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, first) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::parse(ln, format!("expected the order, found {first:?}")))?;
        if n > TABLE_CAP {
            return Err(Error::UnsupportedScale(format!("order {n} exceeds the table cap")));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in 0..n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(ln + row + 1, "missing table row"))?;
            let entries: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad entry {t:?}"))))
                .collect::<Result<_>>()?;
            if entries.len() != n {
                return Err(Error::parse(ln, format!("row has {} entries, expected {n}", entries.len())));
            }
            table.extend(entries);
        }
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::parse(ln + n + 1, "missing generator line"))?;
        let rest = line
            .strip_prefix("gens:")
            .ok_or_else(|| Error::parse(ln, "expected \"gens:\""))?;
        let gens = rest
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad generator {t:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing content"));
        }
        FiniteGroup::from_table(n, table, gens)
    }
}

/// A subgroup of a [`FiniteGroup`], stored as a sorted element list plus a
/// membership mask. Operations take the parent group explicitly.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<u32>,
    member: Vec<bool>,
    gens: Vec<u32>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.elements.len(), self.gens)
    }
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut member = vec![false; g.order()];
        member[0] = true;
        Subgroup {
            elements: vec![0],
            member,
            gens: Vec::new(),
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            elements: (0..g.order() as u32).collect(),
            member: vec![true; g.order()],
            gens: g.gens().to_vec(),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[u32]) -> Self {
        let mut elements = g.closure_from(gens);
        let mut member = vec![false; g.order()];
        for &x in &elements {
            member[x as usize] = true;
        }
        elements.sort_unstable();
        let mut kept: Vec<u32> = gens.iter().copied().filter(|&x| x != 0).collect();
        kept.sort_unstable();
        kept.dedup();
        Subgroup {
            elements,
            member,
            gens: kept,
        }
    }

    /// Least normal subgroup containing `gens`.
    pub fn normal_closure(g: &FiniteGroup, gens: &[u32]) -> Self {
        let mut current = Subgroup::trivial(g);
        let mut new_gens: Vec<u32> = Vec::new();
        let mut pending: VecDeque<u32> = gens.iter().copied().collect();
        while let Some(x) = pending.pop_front() {
            if current.contains(x) {
                continue;
            }
            new_gens.push(x);
            current = Subgroup::generated(g, &new_gens);
            for &c in g.gens() {
                pending.push_back(g.conjugate(x, c));
            }
        }
        current
    }

    /// `[A, B]`, the subgroup generated by all commutators `[a, b]`.
    pub fn commutator(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Self {
        if a.is_normal(g) && b.is_normal(g) {
            // for normal A and B this is the normal closure of the
            // commutators of elements with generators
            let mut comms = Vec::new();
            for &x in &a.elements {
                for &y in &b.gens {
                    comms.push(g.commutator(x, y));
                }
            }
            for &x in &a.gens {
                for &y in &b.elements {
                    comms.push(g.commutator(x, y));
                }
            }
            comms.sort_unstable();
            comms.dedup();
            return Subgroup::normal_closure(g, &comms);
        }
        let mut comms: Vec<u32> = a
            .elements
            .iter()
            .flat_map(|&x| b.elements.iter().map(move |&y| g.commutator(x, y)))
            .collect();
        comms.sort_unstable();
        comms.dedup();
        Subgroup::generated(g, &comms)
    }

    /// Subgroup generated by the union of the two generating sets.
    pub fn join(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Self {
        let mut gens = a.gens.clone();
        gens.extend_from_slice(&b.gens);
        Subgroup::generated(g, &gens)
    }

    /// Subgroup generated by squares of the elements.
    pub fn squares(g: &FiniteGroup, a: &Subgroup) -> Self {
        let sq: Vec<u32> = a.elements.iter().map(|&x| g.mul(x, x)).collect();
        Subgroup::generated(g, &sq)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.member.get(x as usize).copied().unwrap_or(false)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        self.gens
            .iter()
            .all(|&h| g.gens().iter().all(|&c| self.contains(g.conjugate(h, c))))
    }

    /// Whether `self / below` is elementary abelian (so a vector space over
    /// `F_2`); `below` must be a normal subgroup of `self`.
    pub fn is_elementary_abelian_over(&self, g: &FiniteGroup, below: &Subgroup) -> bool {
        self.gens.iter().all(|&a| {
            below.contains(g.mul(a, a))
                && self.gens.iter().all(|&b| below.contains(g.commutator(a, b)))
        })
    }

    /// `log_2` of the order if it is a power of two.
    pub fn log2_order(&self) -> Option<u32> {
        let n = self.order();
        n.is_power_of_two().then(|| n.trailing_zeros())
    }
}
