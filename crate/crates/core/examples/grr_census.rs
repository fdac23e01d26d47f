//! Run the cubic GRR construction on the class-c quotient of the group
//! generated by three involutions and tabulate the graphs per order.
//!
//! cargo run --release --example grr_census [-- c]

use std::time::Instant;

use cayley_census::census::{grr_plan, run_grr_lower, summarize, PipelineConfig};

fn main() -> cayley_census::Result<()> {
    let c = std::env::args().nth(1).map_or(3, |s| s.parse().expect("class must be an integer"));
    let cfg = PipelineConfig {
        d: 3,
        c,
        workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        ..PipelineConfig::default()
    };
    let plan = grr_plan(&cfg)?;
    println!(
        "quotient of order 2^{}, H = gamma_{} of rank {}, achievable exponents {:?}",
        plan.quotient.log2_order(),
        plan.level,
        plan.rank(),
        plan.achievable_exponents()
    );
    let start = Instant::now();
    let (records, stats) = run_grr_lower(&cfg)?;
    for (s, n) in &stats.free_orbits {
        println!("codimension {s}: {n} free orbit representatives");
    }
    println!("{} distinct GRRs in {:.2?}", records.len(), start.elapsed());
    for row in summarize(&records).rows {
        println!("  order {:>5}: {} GRRs", row.order, row.count_grr);
    }
    Ok(())
}
