use std::fmt;

use super::matrix::{F2Matrix, F2Vector, MAX_DIM};
use crate::error::{Error, Result};

/// A subspace of `F_2^r` stored by its reduced row echelon basis.
///
/// The pivot of a row is its lowest set bit; pivots strictly increase down
/// the basis and every pivot column is zero outside its own row. Two equal
/// subspaces therefore have bit-identical bases, so the derived `Eq`, `Hash`
/// and `Ord` are equality, hashing and a total order on subspaces.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Subspace {
    ambient_dim: usize,
    basis: Vec<u64>,
}

impl F2Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        F2Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        F2Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| 1u64 << i).collect(),
        }
    }

    /// Span of arbitrary vectors given as bit patterns.
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = u64>) -> Result<Self> {
        if ambient_dim > MAX_DIM {
            return Err(Error::domain(format!("dimension {ambient_dim} exceeds {MAX_DIM}")));
        }
        let m = super::matrix::mask(ambient_dim);
        let mut by_pivot = [0u64; 64];
        for v in vectors {
            if v & !m != 0 {
                return Err(Error::domain("vector does not fit the ambient dimension"));
            }
            let mut v = v;
            while v != 0 {
                let p = v.trailing_zeros() as usize;
                if by_pivot[p] == 0 {
                    by_pivot[p] = v;
                    break;
                }
                v ^= by_pivot[p];
            }
        }
        Ok(Self::from_echelon(ambient_dim, by_pivot))
    }

    fn from_echelon(ambient_dim: usize, mut by_pivot: [u64; 64]) -> Self {
        // back-substitute so that each pivot column is clear in the other rows
        for p in (0..ambient_dim).rev() {
            let row = by_pivot[p];
            if row == 0 {
                continue;
            }
            for q in 0..p {
                if by_pivot[q] >> p & 1 == 1 {
                    by_pivot[q] ^= row;
                }
            }
        }
        F2Subspace {
            ambient_dim,
            basis: by_pivot[..ambient_dim].iter().copied().filter(|&r| r != 0).collect(),
        }
    }

    /// Trusted constructor for bases already in reduced row echelon form.
    pub(crate) fn from_rref_unchecked(ambient_dim: usize, basis: Vec<u64>) -> Self {
        debug_assert!(Self::span(ambient_dim, basis.iter().copied()).unwrap().basis == basis);
        F2Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.basis.len()
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> F2Matrix {
        F2Matrix::from_rows(self.ambient_dim, self.basis.clone()).expect("basis fits")
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().map(|r| r.trailing_zeros() as usize)
    }

    /// Reduce `v` modulo the subspace; the result is zero iff `v` lies in it.
    #[inline]
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &row in &self.basis {
            let p = row.trailing_zeros();
            if v >> p & 1 == 1 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains_bits(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        v.dim() == self.ambient_dim && self.contains_bits(v.bits())
    }

    pub fn is_subspace_of(&self, other: &F2Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|&r| other.contains_bits(r))
    }

    /// Whether `W * alpha = W`.
    pub fn is_invariant_under(&self, alpha: &F2Matrix) -> bool {
        self.basis.iter().all(|&r| self.contains_bits(alpha.apply_bits(r)))
    }

    pub fn image(&self, alpha: &F2Matrix) -> F2Subspace {
        F2Subspace::span(alpha.ncols(), self.basis.iter().map(|&r| alpha.apply_bits(r)))
            .expect("image fits the target dimension")
    }
}

impl fmt::Debug for F2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Subspace(r={}; ", self.ambient_dim)?;
        for (i, &row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            for j in 0..self.ambient_dim {
                write!(f, "{}", row >> j & 1)?;
            }
        }
        write!(f, ")")
    }
}

/// Stream of all subspaces of a fixed codimension in canonical form.
///
/// Order: pivot sets in lexicographic order, then the free entries of the
/// echelon basis as a binary counter.
#[derive(Clone, Debug)]
pub struct SubspaceIter {
    ambient_dim: usize,
    dim: usize,
    pivots: Vec<usize>,
    /// If set, only pivot sets whose first pivot equals this column.
    leading: Option<usize>,
    free: Vec<(usize, usize)>,
    counter: u64,
    done: bool,
}

impl SubspaceIter {
    fn new(ambient_dim: usize, codim: usize, leading: Option<usize>) -> Self {
        let dim = ambient_dim - codim;
        let mut it = SubspaceIter {
            ambient_dim,
            dim,
            pivots: (0..dim).collect(),
            leading,
            free: Vec::new(),
            counter: 0,
            done: false,
        };
        if let Some(p) = leading {
            if dim == 0 || p + dim > ambient_dim {
                it.done = true;
                return it;
            }
            it.pivots = (p..p + dim).collect();
        }
        it.load_free_positions();
        it
    }

    fn load_free_positions(&mut self) {
        self.free.clear();
        for (i, &p) in self.pivots.iter().enumerate() {
            for col in p + 1..self.ambient_dim {
                if !self.pivots[i + 1..].contains(&col) {
                    self.free.push((i, col));
                }
            }
        }
        self.counter = 0;
    }

    fn advance_pivots(&mut self) -> bool {
        let k = self.dim;
        let n = self.ambient_dim;
        // the first pivot is frozen when a leading column is requested
        let lowest = usize::from(self.leading.is_some());
        let mut i = k;
        while i > lowest {
            i -= 1;
            if self.pivots[i] < n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.load_free_positions();
                return true;
            }
        }
        false
    }
}

impl Iterator for SubspaceIter {
    type Item = F2Subspace;

    fn next(&mut self) -> Option<F2Subspace> {
        if self.done {
            return None;
        }
        let mut basis: Vec<u64> = self.pivots.iter().map(|&p| 1u64 << p).collect();
        for (bit, &(row, col)) in self.free.iter().enumerate() {
            if self.counter >> bit & 1 == 1 {
                basis[row] |= 1 << col;
            }
        }
        let out = F2Subspace::from_rref_unchecked(self.ambient_dim, basis);
        let nfree = self.free.len();
        self.counter += 1;
        if nfree >= 64 {
            panic!("too many free echelon entries to enumerate");
        }
        if self.counter == 1u64 << nfree && !self.advance_pivots() {
            self.done = true;
        }
        Some(out)
    }
}

fn check_codim(r: usize, codim: usize) -> Result<()> {
    if r > MAX_DIM {
        return Err(Error::domain(format!("dimension {r} exceeds {MAX_DIM}")));
    }
    if codim > r {
        return Err(Error::domain(format!(
            "codimension {codim} out of range 0..={r}"
        )));
    }
    Ok(())
}

/// All subspaces of `F_2^r` of codimension `codim`, each exactly once.
pub fn enumerate_subspaces(r: usize, codim: usize) -> Result<SubspaceIter> {
    check_codim(r, codim)?;
    Ok(SubspaceIter::new(r, codim, None))
}

/// The same stream split by leading pivot column, for parallel consumers.
/// Concatenating the parts in order reproduces [`enumerate_subspaces`].
pub fn subspaces_by_leading_pivot(r: usize, codim: usize) -> Result<Vec<SubspaceIter>> {
    check_codim(r, codim)?;
    if codim == r {
        return Ok(vec![SubspaceIter::new(r, codim, None)]);
    }
    let dim = r - codim;
    Ok((0..=r - dim)
        .map(|p| SubspaceIter::new(r, codim, Some(p)))
        .collect())
}
