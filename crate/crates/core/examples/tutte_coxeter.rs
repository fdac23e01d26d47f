//! Verify the built-in Tutte–Coxeter graph: girth, automorphism group, s-arc
//! transitivity, and its reconstruction as a coset graph of its own
//! automorphism group.
//!
//! cargo run --release --example tutte_coxeter

use cayley_census::graphs::{
    automorphism_group, canonical_certificate, coset_graph, families, s_arc_transitivity,
    to_graph6_string,
};
use cayley_census::permgroup::{FiniteGroup, Subgroup, TABLE_CAP};

fn main() -> cayley_census::Result<()> {
    let tc = families::tutte_coxeter();
    let aut = automorphism_group(&tc);
    println!("graph6: {}", to_graph6_string(&tc));
    println!("order {}, size {}, girth {:?}", tc.order(), tc.size(), tc.girth());
    println!("|Aut| = {}, vertex stabilizer {}", aut.order(), aut.stabilizer_order(0));
    let report = s_arc_transitivity(&tc, 6)?;
    println!("s-arc transitive for s = 0..6: {:?}, max_s = {:?}", report.transitive_at, report.max_s);

    let (group, perm_of) = FiniteGroup::from_permutations_with_elements(aut.generators(), TABLE_CAP)?;
    let stab: Vec<u32> = (0..group.order() as u32).filter(|&x| perm_of[x as usize].apply(0) == 0).collect();
    let a = Subgroup::generated(&group, &stab);
    let b = (0..group.order() as u32)
        .find(|&x| {
            let p = &perm_of[x as usize];
            p.apply(0) == tc.neighbors(0)[0] as usize && p.apply(tc.neighbors(0)[0] as usize) == 0
        })
        .expect("the graph is arc-transitive");
    let rebuilt = coset_graph(&group, &a, b)?;
    println!(
        "coset graph on {} cosets isomorphic to the built-in copy: {}",
        rebuilt.order(),
        canonical_certificate(&rebuilt) == canonical_certificate(&tc)
    );
    Ok(())
}

