//! Enumerate the class-c quotients of the group generated by d involutions
//! and print their orders.
//!
//! cargo run --release --example w3_quotients [-- --large]
//!
//! `--large` adds (d=3, c=4), whose 2^19 cosets take tens of seconds.

use std::time::Instant;

use cayley_census::presentations::{todd_coxeter, wd_class_relators, DEFAULT_COSET_CAP};

fn main() -> cayley_census::Result<()> {
    let mut cases = vec![(3, 1), (3, 2), (3, 3), (4, 1), (4, 2)];
    if std::env::args().any(|a| a == "--large") {
        cases.push((3, 4));
    }
    for (d, c) in cases {
        let pres = wd_class_relators(d, c)?;
        let start = Instant::now();
        match todd_coxeter(&pres, &[], DEFAULT_COSET_CAP) {
            Ok(table) => println!(
                "d={d} c={c}: {} relators, order {} = 2^{} ({:.2?})",
                pres.relators().len(),
                table.index(),
                table.index().trailing_zeros(),
                start.elapsed()
            ),
            Err(e) => println!("d={d} c={c}: {e} ({:.2?})", start.elapsed()),
        }
    }
    Ok(())
}
