//! Read graph6 lines from standard input (or use built-in graphs), print
//! each graph's canonical certificate and symmetry data, and check that the
//! encoding round-trips.
//!
//! echo 'C~' | cargo run --example graph6_roundtrip

use std::io::{IsTerminal, Read};

use cayley_census::graphs::{
    automorphism_group, canonical_certificate, families, parse_graph6, to_graph6_string, Graph,
};

fn main() -> cayley_census::Result<()> {
    let graphs: Vec<Graph> = if std::io::stdin().is_terminal() {
        vec![families::petersen(), families::hypercube(3), families::tutte_coxeter()]
    } else {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        parse_graph6(&text)?
    };
    for g in &graphs {
        let encoded = to_graph6_string(g);
        let back = parse_graph6(&encoded)?;
        println!(
            "{encoded}  n={} m={} |Aut|={} certificate={} round-trip={}",
            g.order(),
            g.size(),
            automorphism_group(g).order(),
            String::from_utf8_lossy(&canonical_certificate(g)),
            back.len() == 1 && &back[0] == g
        );
    }
    Ok(())
}
