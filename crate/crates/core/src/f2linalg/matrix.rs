use std::fmt;

use crate::error::{Error, Result};

/// Largest dimension supported by the bit-packed row representation.
pub const MAX_DIM: usize = 64;

#[inline]
pub(crate) fn mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// A vector of `F_2^dim`; coordinate `j` is bit `j` of `bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    dim: usize,
    bits: u64,
}

impl F2Vector {
    pub fn new(dim: usize, bits: u64) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::domain(format!("dimension {dim} exceeds {MAX_DIM}")));
        }
        if bits & !mask(dim) != 0 {
            return Err(Error::domain(format!(
                "bit pattern {bits:#b} does not fit in dimension {dim}"
            )));
        }
        Ok(F2Vector { dim, bits })
    }

    pub fn zero(dim: usize) -> Self {
        F2Vector { dim, bits: 0 }
    }

    pub fn unit(dim: usize, j: usize) -> Self {
        assert!(j < dim);
        F2Vector { dim, bits: 1 << j }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, j: usize) -> bool {
        self.bits >> j & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn add(&self, other: &F2Vector) -> F2Vector {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        F2Vector {
            dim: self.dim,
            bits: self.bits ^ other.bits,
        }
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        (self.bits & other.bits).count_ones() % 2 == 1
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.dim {
            f.write_str(if self.get(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense matrix over `F_2`, one `u64` per row. Matrices act on row vectors
/// from the right: `v -> v * A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<u64>,
}

impl F2Matrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        assert!(ncols <= MAX_DIM);
        F2Matrix {
            nrows,
            ncols,
            rows: vec![0; nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        F2Matrix {
            nrows: n,
            ncols: n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<u64>) -> Result<Self> {
        if ncols > MAX_DIM {
            return Err(Error::domain(format!("{ncols} columns exceed {MAX_DIM}")));
        }
        if let Some(r) = rows.iter().find(|&&r| r & !mask(ncols) != 0) {
            return Err(Error::domain(format!(
                "row {r:#b} does not fit in {ncols} columns"
            )));
        }
        Ok(F2Matrix {
            nrows: rows.len(),
            ncols,
            rows,
        })
    }

    /// Permutation matrix sending `e_i` to `e_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::domain("not a permutation"));
            }
            seen[p] = true;
        }
        F2Matrix::from_rows(n, perm.iter().map(|&p| 1u64 << p).collect())
    }

    /// Block-diagonal sum of square blocks.
    pub fn block_diagonal(blocks: &[F2Matrix]) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.ncols).sum();
        if n > MAX_DIM {
            return Err(Error::domain(format!("dimension {n} exceeds {MAX_DIM}")));
        }
        let mut rows = Vec::with_capacity(n);
        let mut offset = 0;
        for b in blocks {
            if !b.is_square() {
                return Err(Error::domain("block-diagonal pieces must be square"));
            }
            rows.extend(b.rows.iter().map(|&r| r << offset));
            offset += b.ncols;
        }
        F2Matrix::from_rows(n, rows)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> F2Vector {
        F2Vector {
            dim: self.ncols,
            bits: self.rows[i],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    /// `v * self` on raw bits.
    #[inline]
    pub fn apply_bits(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut v = v;
        while v != 0 {
            let i = v.trailing_zeros() as usize;
            out ^= self.rows[i];
            v &= v - 1;
        }
        out
    }

    pub fn apply(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.dim, self.nrows, "dimension mismatch");
        F2Vector {
            dim: self.ncols,
            bits: self.apply_bits(v.bits),
        }
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        F2Matrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows: self.rows.iter().map(|&r| other.apply_bits(r)).collect(),
        }
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zero(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                if self.get(i, j) {
                    t.rows[j] |= 1 << i;
                }
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut basis = [0u64; 64];
        let mut rank = 0;
        for &r in &self.rows {
            let mut r = r;
            while r != 0 {
                let b = r.trailing_zeros() as usize;
                if basis[b] == 0 {
                    basis[b] = r;
                    rank += 1;
                    break;
                }
                r ^= basis[b];
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.nrows
    }

    pub fn inverse(&self) -> Result<F2Matrix> {
        if !self.is_square() {
            return Err(Error::domain("only square matrices can be inverted"));
        }
        let n = self.nrows;
        let mut a = self.rows.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&i| a[i] >> col & 1 == 1) else {
                return Err(Error::domain("matrix is singular over F2"));
            };
            a.swap(col, piv);
            inv.swap(col, piv);
            for i in 0..n {
                if i != col && a[i] >> col & 1 == 1 {
                    a[i] ^= a[col];
                    inv[i] ^= inv[col];
                }
            }
        }
        Ok(F2Matrix {
            nrows: n,
            ncols: n,
            rows: inv,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    /// Multiplicative order, or `None` if the matrix is singular or the
    /// order exceeds `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        if !self.is_invertible() {
            return None;
        }
        let mut power = self.clone();
        for k in 1..=cap {
            if power.is_identity() {
                return Some(k);
            }
            power = power.mul(self);
        }
        None
    }

    /// Text form: `"r c"` on the first line, then `r` lines of `c` characters
    /// from `{0,1}`.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.nrows, self.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<F2Matrix> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing dimension line"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::parse(1, e.to_string()))?;
        let [nrows, ncols] = dims[..] else {
            return Err(Error::parse(1, "expected \"rows cols\""));
        };
        if ncols > MAX_DIM {
            return Err(Error::parse(1, format!("{ncols} columns exceed {MAX_DIM}")));
        }
        let mut rows = Vec::with_capacity(nrows);
        for _ in 0..nrows {
            let (idx, line) = lines
                .next()
                .ok_or_else(|| Error::parse(rows.len() + 2, "missing matrix row"))?;
            let line = line.trim_end_matches('\r');
            if line.len() != ncols {
                return Err(Error::parse(
                    idx + 1,
                    format!("expected {ncols} characters, found {}", line.len()),
                ));
            }
            let mut bits = 0u64;
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => bits |= 1 << j,
                    other => return Err(Error::parse(idx + 1, format!("invalid character {other:?}"))),
                }
            }
            rows.push(bits);
        }
        if let Some((idx, line)) = lines.next() {
            if !line.trim().is_empty() {
                return Err(Error::parse(idx + 1, "trailing data after matrix"));
            }
        }
        F2Matrix::from_rows(ncols, rows)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Matrix({}x{}:", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            write!(f, " {}", self.row(i))?;
        }
        write!(f, ")")
    }
}

/// Polynomials over `F_2` packed as bit masks (bit `i` = coefficient of `x^i`).
pub mod poly {
    pub fn degree(f: u64) -> Option<u32> {
        (f != 0).then(|| 63 - f.leading_zeros())
    }

    pub fn rem(mut a: u64, f: u64) -> u64 {
        let df = degree(f).expect("division by zero polynomial");
        while let Some(da) = degree(a) {
            if da < df {
                break;
            }
            a ^= f << (da - df);
        }
        a
    }

    pub fn mulmod(a: u64, b: u64, f: u64) -> u64 {
        let mut acc = 0u64;
        let mut a = rem(a, f);
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a = rem(a << 1, f);
        }
        acc
    }

    pub fn is_irreducible(f: u64) -> bool {
        let Some(d) = degree(f) else { return false };
        if d == 0 {
            return false;
        }
        (2u64..(1 << (d / 2 + 1)))
            .filter(|&g| degree(g).is_some_and(|dg| dg >= 1 && 2 * dg <= d))
            .all(|g| rem(f, g) != 0)
    }

    /// Multiplicative order of `x` modulo `f`, for `f` with non-zero constant term.
    pub fn order_of_x(f: u64, cap: u64) -> Option<u64> {
        if f & 1 == 0 || degree(f).unwrap_or(0) == 0 {
            return None;
        }
        let mut p = rem(2, f);
        for k in 1..=cap {
            if p == 1 {
                return Some(k);
            }
            p = mulmod(p, 2, f);
        }
        None
    }
}

/// Companion matrix of a monic polynomial `f` of degree `l` acting on row
/// vectors: `e_i -> e_{i+1}` and `e_{l-1} -> sum of the low coefficients`.
pub fn companion_matrix(f: u64) -> Result<F2Matrix> {
    let l = poly::degree(f).ok_or_else(|| Error::domain("zero polynomial"))? as usize;
    if l == 0 || l > MAX_DIM {
        return Err(Error::domain("companion matrix needs degree in 1..=64"));
    }
    let mut rows: Vec<u64> = (0..l - 1).map(|i| 1u64 << (i + 1)).collect();
    rows.push(f & mask(l));
    F2Matrix::from_rows(l, rows)
}

/// Irreducible polynomials of degree `l = ord_p(2)` whose roots have
/// multiplicative order `p` (the irreducible factors of the `p`-th
/// cyclotomic polynomial over `F_2`), in increasing bit order.
pub fn cyclotomic_factors(p: u64) -> Result<Vec<u64>> {
    if p < 3 || !is_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    let l = multiplicative_order_of_two(p);
    if l > 20 {
        return Err(Error::UnsupportedScale(format!(
            "cyclotomic factors of degree {l} are out of range"
        )));
    }
    Ok(((1u64 << l)..(1u64 << (l + 1)))
        .filter(|&f| poly::is_irreducible(f) && poly::order_of_x(f, p) == Some(p))
        .collect())
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Smallest `l >= 1` with `2^l = 1 (mod p)`, for odd `p`.
pub fn multiplicative_order_of_two(p: u64) -> u32 {
    assert!(p % 2 == 1 && p > 1);
    let mut x = 2 % p;
    let mut l = 1;
    while x != 1 {
        x = x * 2 % p;
        l += 1;
    }
    l
}

/// Involution with `t` Jordan blocks of size 2 in `GL(r, 2)`; `t = 1` is a
/// transvection.
pub fn involution_with_blocks(r: usize, t: usize) -> Result<F2Matrix> {
    if t == 0 || 2 * t > r {
        return Err(Error::domain(format!(
            "an involution of GL({r},2) has between 1 and {} blocks of size 2",
            r / 2
        )));
    }
    let mut m = F2Matrix::identity(r);
    for b in 0..t {
        m.set(2 * b, 2 * b + 1, true);
    }
    Ok(m)
}

/// An element of odd prime order `p` in `GL(r, 2)` whose non-trivial part
/// consists of `t` copies of the same irreducible block (so it acts as a
/// scalar of `GL(t, 2^l)` on its commutator space).
pub fn odd_prime_order_element(r: usize, p: u64, t: usize) -> Result<F2Matrix> {
    let factors = cyclotomic_factors(p)?;
    let block = companion_matrix(factors[0])?;
    let l = block.ncols();
    if t == 0 || t * l > r {
        return Err(Error::domain(format!(
            "{t} blocks of size {l} do not fit in dimension {r}"
        )));
    }
    let mut blocks = vec![block; t];
    blocks.push(F2Matrix::identity(r - t * l));
    F2Matrix::block_diagonal(&blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let m = F2Matrix::from_rows(3, vec![0b011, 0b110, 0b100]).unwrap();
        let text = m.to_text();
        assert_eq!(text, "3 3\n110\n011\n001\n");
        assert_eq!(F2Matrix::from_text(&text).unwrap(), m);
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        match F2Matrix::from_text("2 2\n10\n1x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(F2Matrix::from_text("2 2\n10\n").is_err());
    }

    #[test]
    fn inverse_and_order() {
        let t = involution_with_blocks(3, 1).unwrap();
        assert_eq!(t.order(10), Some(2));
        assert_eq!(t.inverse().unwrap(), t);
        let c = odd_prime_order_element(2, 3, 1).unwrap();
        assert_eq!(c.order(10), Some(3));
        assert!(F2Matrix::from_rows(2, vec![1, 1]).unwrap().inverse().is_err());
    }

    #[test]
    fn cyclotomic_factor_lists() {
        assert_eq!(cyclotomic_factors(3).unwrap(), vec![0b111]);
        assert_eq!(cyclotomic_factors(7).unwrap().len(), 2);
        assert_eq!(cyclotomic_factors(5).unwrap(), vec![0b11111]);
        assert_eq!(cyclotomic_factors(31).unwrap().len(), 6);
        assert!(cyclotomic_factors(9).is_err());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = F2Matrix::from_rows(4, vec![0b0011, 0b0110, 0b0101, 0b1000]).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(F2Matrix::identity(5).rank(), 5);
    }
}
