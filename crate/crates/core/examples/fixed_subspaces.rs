//! Compare the closed-form count of subspaces fixed by a prime-order
//! element with brute-force enumeration, and show how many subspaces are
//! moved by every non-identity element of a small group.
//!
//! cargo run --release --example fixed_subspaces

use cayley_census::f2linalg::{
    count_t_free_subspaces, fix_count_bruteforce, fix_count_formula, involution_with_blocks,
    odd_prime_order_element, transvection_bound, F2Matrix,
};

fn main() -> cayley_census::Result<()> {
    let r = 6u32;
    println!("involutions in GL({r}, 2)");
    for t in 1..=3u32 {
        let a = involution_with_blocks(r as usize, t as usize)?;
        for s in 1..r {
            let formula = fix_count_formula(r, s, 2, t, None)?;
            let brute = fix_count_bruteforce(&a, s as usize)?;
            let bound = transvection_bound(r, s)?;
            println!("  t={t} s={s}: formula {formula:>4}  enumeration {brute:>4}  transvection bound {bound:>4}");
        }
    }
    println!("elements of order 3 in GL({r}, 2)");
    for t in 1..=3u32 {
        let a = odd_prime_order_element(r as usize, 3, t as usize)?;
        for s in 1..r {
            let formula = fix_count_formula(r, s, 3, t, None)?;
            let brute = fix_count_bruteforce(&a, s as usize)?;
            println!("  t={t} s={s}: formula {formula:>4}  enumeration {brute:>4}");
        }
    }
    // Sym(3) permuting two blocks of three coordinates
    let swap = F2Matrix::permutation(&[1, 0, 2, 4, 3, 5])?;
    let cycle = F2Matrix::permutation(&[1, 2, 0, 4, 5, 3])?;
    for s in 1..r {
        let c = count_t_free_subspaces(r, s, &[swap.clone(), cycle.clone()])?;
        println!(
            "Sym(3) on F_2^6, s={s}: {} subspaces moved by all of the {} non-identity elements (bound {})",
            c.exact,
            c.group_order - 1,
            c.lower_bound
        );
    }
    Ok(())
}
