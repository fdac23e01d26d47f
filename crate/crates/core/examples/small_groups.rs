//! List the catalog of small groups and count those generated by d
//! involutions.
//!
//! cargo run --example small_groups

use cayley_census::census::{g_count, generated_by_involutions, small_group_catalog};

fn main() -> cayley_census::Result<()> {
    let catalog = small_group_catalog(16)?;
    for e in &catalog.entries {
        let orders = e.group.element_orders();
        let involutions = orders.iter().filter(|&&o| o == 2).count();
        println!(
            "{:>3}  {:<6} abelian={:<5} involutions={:<2} 3-involution-generated={}",
            e.group.order(),
            e.name,
            e.group.is_abelian(),
            involutions,
            generated_by_involutions(&e.group, 3)
        );
    }
    println!("partial coverage above order 8: {}", catalog.partial);
    for m in 1..=3 {
        println!("g_3({m}) = {}", g_count(3, m)?);
    }
    Ok(())
}
