//! Search elementary abelian covers of the Tutte–Coxeter graph for
//! 5-arc-transitive graphs.
//!
//! cargo run --release --example five_arc_covers [-- kmax]

use std::time::Instant;

use cayley_census::census::{run_five_arc, PipelineConfig};

fn main() -> cayley_census::Result<()> {
    let k_max = std::env::args().nth(1).map_or(2, |s| s.parse().expect("kmax must be an integer"));
    let cfg = PipelineConfig {
        k_range: (0, k_max),
        workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        ..PipelineConfig::default()
    };
    let start = Instant::now();
    let (records, stats) = run_five_arc(&cfg)?;
    for (k, n) in &stats.candidates {
        println!("rank {k}: {n} voltage classes examined");
    }
    println!(
        "{} disconnected, {} not 5-arc-transitive ({:.2?})",
        stats.disconnected,
        stats.rejected,
        start.elapsed()
    );
    for r in &records {
        println!("order {:>4}  |Aut| = {:>6}  max_s = {:?}", r.order, r.aut_order, r.max_s);
    }
    Ok(())
}
