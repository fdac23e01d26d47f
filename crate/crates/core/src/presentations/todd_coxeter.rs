use super::presentation::{Presentation, Word};
use crate::error::{Error, Result};

/// Default bound on the number of simultaneously allocated cosets.
pub const DEFAULT_COSET_CAP: usize = 1 << 20;

const NONE: u32 = u32::MAX;

/// Column of a letter: generator `i` is column `2i`, its inverse `2i + 1`.
#[inline]
fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    2 * g + usize::from(letter < 0)
}

#[inline]
fn inv(col: usize) -> usize {
    col ^ 1
}

/// A complete coset table: `act(c, letter)` is the coset `c·letter`.
/// Coset 0 is the subgroup itself; cosets are numbered in order of first
/// definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    ncosets: usize,
    rows: Vec<u32>,
}

impl CosetTable {
    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Number of cosets, i.e. the index of the subgroup.
    pub fn index(&self) -> usize {
        self.ncosets
    }

    /// Always true for tables returned by [`todd_coxeter`].
    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|&x| x != NONE)
    }

    #[inline]
    pub fn act(&self, coset: usize, letter: i32) -> usize {
        self.rows[coset * 2 * self.ngens + column(letter)] as usize
    }

    pub fn trace(&self, coset: usize, word: &[i32]) -> usize {
        word.iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Whether every relator traces to the starting coset from every coset.
    pub fn satisfies(&self, relators: &[Word]) -> bool {
        (0..self.ncosets).all(|c| relators.iter().all(|r| self.trace(c, r) == c))
    }
}

struct Enumerator<'a> {
    ncols: usize,
    relators: Vec<Vec<usize>>,
    table: Vec<u32>,
    /// Union-find forwarding; `parent[c] == c` for live cosets.
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    queue: Vec<usize>,
    pres: &'a Presentation,
}

enum Scan {
    Done,
    NeedSpace,
}

impl<'a> Enumerator<'a> {
    fn new(pres: &'a Presentation, cap: usize) -> Self {
        let ncols = 2 * pres.ngens();
        let relators = pres
            .relators()
            .iter()
            .map(|w| w.iter().map(|&l| column(l)).collect())
            .collect();
        Enumerator {
            ncols,
            relators,
            table: vec![NONE; ncols],
            parent: vec![0],
            live: 1,
            cap,
            queue: Vec::new(),
            pres,
        }
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.ncols + x] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn define(&mut self, c: usize, x: usize) -> Option<usize> {
        if self.allocated() >= self.cap {
            return None;
        }
        let n = self.allocated();
        self.parent.push(n as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.live += 1;
        self.set(c, x, n as u32);
        self.set(n, inv(x), c as u32);
        Some(n)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != root {
            let next = self.parent[x] as usize;
            self.parent[x] = root as u32;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo as u32;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                if self.get(d, inv(x)) as usize == g {
                    self.set(d, inv(x), NONE);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx as usize);
                } else {
                    let nx = self.get(nu, inv(x));
                    if nx != NONE {
                        self.merge(mu, nx as usize);
                    } else {
                        self.set(mu, x, nu as u32);
                        self.set(nu, inv(x), mu as u32);
                    }
                }
            }
        }
    }

    /// Scan `word` at coset `a`, defining new cosets to close gaps when
    /// `fill` is set. Returns `NeedSpace` if a definition hit the cap.
    fn scan(&mut self, a: usize, rel: usize, fill: bool) -> Scan {
        let len = self.relators[rel].len();
        let mut f = a;
        let mut i = 0usize;
        let mut b = a;
        let mut j = len as isize - 1;
        loop {
            while (i as isize) <= j {
                let x = self.relators[rel][i];
                let next = self.get(f, x);
                if next == NONE {
                    break;
                }
                f = next as usize;
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Scan::Done;
            }
            while j >= i as isize {
                let x = self.relators[rel][j as usize];
                let next = self.get(b, inv(x));
                if next == NONE {
                    break;
                }
                b = next as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Scan::Done;
            }
            if j == i as isize {
                let x = self.relators[rel][i];
                self.set(f, x, b as u32);
                self.set(b, inv(x), f as u32);
                return Scan::Done;
            }
            if !fill {
                return Scan::Done;
            }
            let x = self.relators[rel][i];
            if self.define(f, x).is_none() {
                return Scan::NeedSpace;
            }
        }
    }

    /// Scan every live coset under every relator without defining anything.
    fn lookahead(&mut self) {
        let mut c = 0;
        while c < self.allocated() {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r, false);
            }
            c += 1;
        }
    }

    /// Drop dead cosets, keeping live ones in definition order. Returns the
    /// new index of each old coset (or `NONE`).
    fn compact(&mut self) -> Vec<u32> {
        let n = self.allocated();
        let mut new_index = vec![NONE; n];
        let mut next = 0u32;
        for c in 0..n {
            if self.is_live(c) {
                new_index[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..n {
            if !self.is_live(c) {
                continue;
            }
            for x in 0..self.ncols {
                let d = self.get(c, x);
                table.push(if d == NONE { NONE } else { new_index[d as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.live = next as usize;
        new_index
    }

    fn run(mut self, subgens: &[Word]) -> Result<CosetTable> {
        let nrel = self.relators.len();
        self.relators
            .extend(subgens.iter().map(|w| w.iter().map(|&l| column(l)).collect::<Vec<_>>()));
        // subgroup generators are scanned at coset 0 only
        for k in nrel..self.relators.len() {
            while let Scan::NeedSpace = self.scan(0, k, true) {
                let mut zero = 0;
                self.make_room(&mut zero)?;
            }
        }
        self.relators.truncate(nrel);

        let mut c = 0usize;
        'cosets: while c < self.allocated() {
            if !self.is_live(c) {
                c += 1;
                continue;
            }
            let mut r = 0;
            while r < self.relators.len() {
                if !self.is_live(c) {
                    c += 1;
                    continue 'cosets;
                }
                match self.scan(c, r, true) {
                    Scan::Done => r += 1,
                    Scan::NeedSpace => {
                        if !self.make_room(&mut c)? {
                            continue 'cosets;
                        }
                    }
                }
            }
            let mut x = 0;
            while x < self.ncols {
                if !self.is_live(c) {
                    break;
                }
                if self.get(c, x) == NONE && self.define(c, x).is_none() {
                    if !self.make_room(&mut c)? {
                        continue 'cosets;
                    }
                    continue;
                }
                x += 1;
            }
            c += 1;
        }
        self.compact();
        Ok(CosetTable {
            ngens: self.pres.ngens(),
            ncosets: self.allocated(),
            rows: self.table,
        })
    }

    /// Lookahead and compaction. `current` is renumbered; if it died it
    /// moves to the next live coset and `false` is returned. Fails with
    /// [`Error::CosetCap`] if no space was freed.
    fn make_room(&mut self, current: &mut usize) -> Result<bool> {
        self.lookahead();
        if self.live == self.allocated() {
            return Err(Error::CosetCap { cap: self.cap });
        }
        let survived = self.is_live(*current);
        let next_live = (*current..self.allocated()).find(|&k| self.is_live(k));
        let map = self.compact();
        *current = match next_live {
            Some(k) => map[k] as usize,
            None => self.allocated(),
        };
        Ok(survived)
    }
}

/// Enumerate the cosets of the subgroup generated by `subgens` in the group
/// presented by `pres`, with at most `coset_cap` cosets allocated at once.
///
/// Strategy: HLT (relators scanned and filled coset by coset) with a
/// lookahead pass and table compaction whenever the cap is reached.
pub fn todd_coxeter(pres: &Presentation, subgens: &[Word], coset_cap: usize) -> Result<CosetTable> {
    if coset_cap == 0 {
        return Err(Error::domain("coset cap must be at least 1"));
    }
    if pres.relators().is_empty() && subgens.is_empty() && pres.ngens() > 0 {
        return Err(Error::Resource(
            "free group on at least one generator: enumeration cannot terminate".into(),
        ));
    }
    for w in subgens {
        if let Some(&l) = w.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > pres.ngens()) {
            return Err(Error::domain(format!("letter {l} out of range in subgroup generator")));
        }
    }
    if pres.ngens() == 0 {
        return Ok(CosetTable {
            ngens: 0,
            ncosets: 1,
            rows: Vec::new(),
        });
    }
    Enumerator::new(pres, coset_cap).run(subgens)
}
