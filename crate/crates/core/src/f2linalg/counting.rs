//! Exact counts of subspaces: Gaussian binomials, subspaces fixed by an
//! element of prime order, and subspaces moved by every non-identity
//! element of a matrix group.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::matrix::{is_prime, multiplicative_order_of_two, F2Matrix};
use super::subspace::{enumerate_subspaces, subspaces_by_leading_pivot, F2Subspace};
use crate::error::{Error, Result};
use crate::BigCount;

/// Number of `s`-dimensional subspaces of `F_q^r` (for `q` a prime power),
/// evaluated from the product formula with exact integer arithmetic.
pub fn gaussian_binomial(r: u32, s: u32, q: u32) -> Result<BigCount> {
    if q < 2 {
        return Err(Error::domain(format!("q = {q} must be at least 2")));
    }
    if s > r {
        return Err(Error::domain(format!("s = {s} exceeds r = {r}")));
    }
    Ok(gaussian_unchecked(r, s, q))
}

fn gaussian_unchecked(r: u32, s: u32, q: u32) -> BigUint {
    let s = s.min(r - s);
    let q = BigUint::from(q);
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..s {
        num *= q.pow(r - i) - &one;
        den *= q.pow(i + 1) - &one;
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Gaussian binomial that is zero outside `0 <= s <= r`.
fn gaussian_or_zero(r: i64, s: i64, q: u32) -> BigUint {
    if r < 0 || s < 0 || s > r {
        BigUint::zero()
    } else {
        gaussian_unchecked(r as u32, s as u32, q)
    }
}

/// Number of codimension-`s` subspaces of `F_2^r` invariant under an element
/// of prime order `p` with `t` non-trivial blocks.
///
/// For `p = 2` the element is an involution with `t` Jordan blocks of size 2.
/// For odd `p` it acts on its commutator space as a scalar of
/// `GL(t, 2^l)` with `l` the order of 2 modulo `p`; `ell`, when supplied,
/// must equal that order.
pub fn fix_count_formula(r: u32, s: u32, p: u64, t: u32, ell: Option<u32>) -> Result<BigCount> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if t == 0 {
        return Err(Error::domain("t = 0 describes the identity, which is excluded"));
    }
    if s > r {
        return Err(Error::domain(format!("codimension {s} exceeds dimension {r}")));
    }
    let (r, s, t) = (r as i64, s as i64, t as i64);
    let mut total = BigUint::zero();
    if p == 2 {
        if 2 * t > r {
            return Err(Error::domain(format!(
                "{t} Jordan blocks of size 2 do not fit in dimension {r}"
            )));
        }
        for x in 0..=t {
            let a = gaussian_or_zero(t, x, 2);
            let b = gaussian_or_zero(r - t - x, r - s - 2 * x, 2);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let e = (s - t + x) * x;
            debug_assert!(e >= 0);
            total += (a * b) << (e as u64);
        }
    } else {
        let l = multiplicative_order_of_two(p);
        if let Some(given) = ell {
            if given != l {
                return Err(Error::domain(format!(
                    "ell = {given} but the order of 2 modulo {p} is {l}"
                )));
            }
        }
        let l = l as i64;
        if t * l > r {
            return Err(Error::domain(format!(
                "{t} blocks of size {l} do not fit in dimension {r}"
            )));
        }
        let q = 1u32
            .checked_shl(l as u32)
            .filter(|_| l < 32)
            .ok_or_else(|| Error::UnsupportedScale(format!("field of order 2^{l}")))?;
        for x in 0..=t {
            let a = gaussian_or_zero(t, x, q);
            let b = gaussian_or_zero(r - t * l, r - s - x * l, 2);
            total += a * b;
        }
    }
    Ok(total)
}

/// Number of codimension-`s` subspaces `W` with `W * alpha = W`, by
/// exhaustive enumeration.
pub fn fix_count_bruteforce(alpha: &F2Matrix, s: usize) -> Result<BigCount> {
    if !alpha.is_square() {
        return Err(Error::domain("alpha must be square"));
    }
    if !alpha.is_invertible() {
        return Err(Error::domain("alpha is singular"));
    }
    let count = enumerate_subspaces(alpha.nrows(), s)?
        .filter(|w| w.is_invariant_under(alpha))
        .count();
    Ok(BigUint::from(count))
}

/// Upper bound for the number of fixed codimension-`s` subspaces of a
/// non-identity element, attained by transvections:
/// `[r-1, s-1]_2 + [r-2, s]_2 * 2^s`.
pub fn transvection_bound(r: u32, s: u32) -> Result<BigCount> {
    if s == 0 || s >= r {
        return Err(Error::domain(format!("need 0 < s < r, got r = {r}, s = {s}")));
    }
    let a = gaussian_or_zero(r as i64 - 1, s as i64 - 1, 2);
    let b = gaussian_or_zero(r as i64 - 2, s as i64, 2);
    Ok(a + (b << s as u64))
}

/// Exact number of subspaces moved by every non-identity element, together
/// with the guaranteed lower bound
/// `ceil([r,s]_2 * (1 - (|T|-1) * 2^(1 - min(r-s, s))))`, clamped at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSubspaceCount {
    pub exact: BigCount,
    pub lower_bound: BigCount,
    /// Order of the group generated by the supplied matrices.
    pub group_order: usize,
}

const GROUP_CLOSURE_CAP: usize = 1 << 16;

/// All elements of the matrix group generated by `gens` (identity first).
pub fn matrix_group_closure(r: usize, gens: &[F2Matrix]) -> Result<Vec<F2Matrix>> {
    for g in gens {
        if !g.is_square() || g.nrows() != r {
            return Err(Error::domain(format!("every matrix must be {r}x{r}")));
        }
        if !g.is_invertible() {
            return Err(Error::domain("matrix group contains a singular matrix"));
        }
    }
    let id = F2Matrix::identity(r);
    let mut seen: HashSet<F2Matrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let h = elements[i].mul(g);
            if seen.insert(h.clone()) {
                elements.push(h);
                if elements.len() > GROUP_CLOSURE_CAP {
                    return Err(Error::Resource(format!(
                        "matrix group exceeds {GROUP_CLOSURE_CAP} elements"
                    )));
                }
            }
        }
        i += 1;
    }
    Ok(elements)
}

fn lower_bound(r: u32, s: u32, group_order: usize) -> BigUint {
    let total = BigInt::from(gaussian_unchecked(r, s, 2));
    let m = (r - s).min(s);
    // [r,s]_2 * (|T|-1) * 2^(1-m), with m >= 1
    let subtract = total.clone() * BigInt::from(group_order - 1);
    let shift = (m - 1) as usize;
    // ceil(total - subtract / 2^shift) = total - floor(subtract / 2^shift)
    let value = total - (subtract >> shift);
    if value.is_positive() {
        value.to_biguint().expect("positive")
    } else {
        BigUint::zero()
    }
}

fn moved_by_all(w: &F2Subspace, nontrivial: &[F2Matrix]) -> bool {
    nontrivial.iter().all(|a| !w.is_invariant_under(a))
}

/// Count codimension-`s` subspaces of `F_2^r` not fixed by any non-identity
/// element of the group generated by `t`.
pub fn count_t_free_subspaces(r: u32, s: u32, t: &[F2Matrix]) -> Result<FreeSubspaceCount> {
    count_t_free_subspaces_with_workers(r, s, t, 1)
}

/// As [`count_t_free_subspaces`], splitting the subspace stream by leading
/// pivot column across `workers` threads; the per-part counts are summed,
/// so the result does not depend on `workers`.
pub fn count_t_free_subspaces_with_workers(
    r: u32,
    s: u32,
    t: &[F2Matrix],
    workers: usize,
) -> Result<FreeSubspaceCount> {
    if !(r > s && s > 0) {
        return Err(Error::domain(format!("need r > s > 0, got r = {r}, s = {s}")));
    }
    let group = matrix_group_closure(r as usize, t)?;
    let nontrivial: Vec<F2Matrix> = group.iter().filter(|g| !g.is_identity()).cloned().collect();
    let parts = subspaces_by_leading_pivot(r as usize, s as usize)?;
    let workers = workers.max(1);
    let counts: Vec<usize> = if workers == 1 {
        parts
            .into_iter()
            .map(|it| it.filter(|w| moved_by_all(w, &nontrivial)).count())
            .collect()
    } else {
        let nontrivial = &nontrivial;
        let mut buckets: Vec<Vec<(usize, _)>> = (0..workers).map(|_| Vec::new()).collect();
        for (i, part) in parts.into_iter().enumerate() {
            buckets[i % workers].push((i, part));
        }
        let mut indexed: Vec<(usize, usize)> = std::thread::scope(|scope| {
            let handles: Vec<_> = buckets
                .into_iter()
                .map(|bucket| {
                    scope.spawn(move || {
                        bucket
                            .into_iter()
                            .map(|(i, it)| (i, it.filter(|w| moved_by_all(w, nontrivial)).count()))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        indexed.sort_unstable();
        indexed.into_iter().map(|(_, c)| c).collect()
    };
    let exact = BigUint::from(counts.iter().sum::<usize>());
    Ok(FreeSubspaceCount {
        exact,
        lower_bound: lower_bound(r, s, group.len()),
        group_order: group.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2linalg::matrix::{involution_with_blocks, odd_prime_order_element};

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn gaussian_small_values() {
        assert_eq!(gaussian_binomial(5, 0, 2).unwrap(), big(1));
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), big(35));
        assert_eq!(gaussian_binomial(5, 2, 2).unwrap(), big(155));
        assert_eq!(gaussian_binomial(3, 1, 3).unwrap(), big(13));
        assert_eq!(gaussian_binomial(0, 0, 2).unwrap(), big(1));
    }

    #[test]
    fn gaussian_domain_errors() {
        assert!(matches!(gaussian_binomial(2, 3, 2), Err(Error::Domain(_))));
        assert!(matches!(gaussian_binomial(2, 1, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn fix_formula_examples() {
        assert_eq!(fix_count_formula(3, 1, 2, 1, None).unwrap(), big(3));
        assert_eq!(fix_count_formula(2, 1, 3, 1, Some(2)).unwrap(), big(0));
        assert_eq!(fix_count_formula(4, 0, 2, 1, None).unwrap(), big(1));
    }

    #[test]
    fn fix_formula_errors() {
        assert!(fix_count_formula(4, 1, 2, 0, None).is_err());
        assert!(fix_count_formula(4, 1, 2, 3, None).is_err());
        assert!(fix_count_formula(4, 1, 4, 1, None).is_err());
        assert!(fix_count_formula(4, 1, 3, 1, Some(3)).is_err());
        assert!(fix_count_formula(4, 1, 7, 2, None).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        for r in 1..=4 {
            for s in 0..=r {
                assert_eq!(
                    fix_count_bruteforce(&F2Matrix::identity(r), s).unwrap(),
                    gaussian_binomial(r as u32, s as u32, 2).unwrap()
                );
            }
        }
        let tv = involution_with_blocks(3, 1).unwrap();
        assert_eq!(fix_count_bruteforce(&tv, 1).unwrap(), big(3));
        let c3 = odd_prime_order_element(2, 3, 1).unwrap();
        assert_eq!(fix_count_bruteforce(&c3, 1).unwrap(), big(0));
        let singular = F2Matrix::from_rows(2, vec![1, 1]).unwrap();
        assert!(matches!(fix_count_bruteforce(&singular, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn transvection_bound_examples() {
        assert_eq!(transvection_bound(3, 1).unwrap(), big(3));
        assert_eq!(transvection_bound(2, 1).unwrap(), big(1));
        assert!(transvection_bound(3, 0).is_err());
        assert!(transvection_bound(3, 3).is_err());
    }

    #[test]
    fn trivial_group_counts_everything() {
        let c = count_t_free_subspaces(4, 2, &[F2Matrix::identity(4)]).unwrap();
        assert_eq!(c.exact, big(35));
        assert_eq!(c.group_order, 1);
        assert_eq!(c.lower_bound, big(35));
        let c = count_t_free_subspaces(5, 2, &[]).unwrap();
        assert_eq!(c.exact, big(155));
    }

    #[test]
    fn swap_matrix_example() {
        let swap = F2Matrix::permutation(&[1, 0, 2, 3]).unwrap();
        let c = count_t_free_subspaces(4, 2, std::slice::from_ref(&swap)).unwrap();
        // the swap is a transvection-conjugate involution (t = 1), so
        // exactly 35 - |Fix| subspaces are moved
        let fixed = fix_count_bruteforce(&swap, 2).unwrap();
        assert_eq!(fixed, fix_count_formula(4, 2, 2, 1, None).unwrap());
        assert_eq!(c.exact, big(35) - fixed);
        assert!(c.exact >= c.lower_bound);
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let gens = vec![
            F2Matrix::permutation(&[1, 0, 2, 4, 3, 5]).unwrap(),
            F2Matrix::permutation(&[1, 2, 0, 4, 5, 3]).unwrap(),
        ];
        let a = count_t_free_subspaces_with_workers(6, 3, &gens, 1).unwrap();
        let b = count_t_free_subspaces_with_workers(6, 3, &gens, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn singular_generator_rejected() {
        let bad = F2Matrix::from_rows(3, vec![1, 1, 4]).unwrap();
        assert!(matches!(count_t_free_subspaces(3, 1, &[bad]), Err(Error::Domain(_))));
    }
}
