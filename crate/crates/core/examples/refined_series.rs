//! Compute the lower central series, the refined subgroups M(i,j) and the
//! permutation action on a section of the class-3 quotient of the group
//! generated by three involutions.
//!
//! cargo run --release --example refined_series [-- c]

use cayley_census::presentations::{build_quotient, DEFAULT_COSET_CAP};
use cayley_census::series::{faithfulness_check, p_series, rr_rank, symd_action};

fn main() -> cayley_census::Result<()> {
    let c = std::env::args().nth(1).map_or(3, |s| s.parse().expect("class must be an integer"));
    let q = build_quotient(3, c, DEFAULT_COSET_CAP)?;
    let data = p_series(&q)?;
    println!("order 2^{}", q.log2_order());
    println!("lower central factor ranks {:?}", data.gamma_factor_ranks());
    println!("exponent-2 central factor ranks {:?}", data.p_factor_ranks());
    for (&(i, j), rank) in &data.ranks {
        println!("  rk M({i},{j})/M({i},{}) = {rank}", j + 1);
    }
    let action = symd_action(&q)?;
    for i in 2..=c {
        println!("Sym(3) faithful on M({i},{})/M({i},{i}): {}", i - 2, faithfulness_check(&q, &data, &action, i)?);
    }
    for (i, p) in data.p_terms.iter().enumerate().skip(1) {
        if p.order() > 1 {
            println!("rr(P_{}) = {}", i + 1, rr_rank(&q, p)?);
        }
    }
    Ok(())
}
