//! Print a table of Gaussian binomials [r, s]_2 and compare each with the
//! lower bound 2^(s(r-s)).
//!
//! cargo run --example gaussian_binomials [-- rmax]

use cayley_census::f2linalg::gaussian_binomial;
use num_bigint::BigUint;

fn main() -> cayley_census::Result<()> {
    let r_max: u32 = std::env::args().nth(1).map_or(8, |s| s.parse().expect("rmax must be an integer"));
    for r in 0..=r_max {
        let row: Vec<String> = (0..=r)
            .map(|s| gaussian_binomial(r, s, 2).map(|g| g.to_string()))
            .collect::<cayley_census::Result<_>>()?;
        println!("r={r:>2}: {}", row.join(" "));
    }
    let (r, s) = (r_max, r_max / 2);
    let g = gaussian_binomial(r, s, 2)?;
    let floor = BigUint::from(1u32) << (s * (r - s)) as usize;
    println!("[{r},{s}]_2 = {g} >= 2^{} = {floor}", s * (r - s));
    Ok(())
}
