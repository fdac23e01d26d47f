use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cayley_census::census::{
    census_report, g_count, grr_plan, ingest_census_crosscheck, run_five_arc, run_grr_lower,
    write_store, PipelineConfig,
};
use cayley_census::f2linalg::{count_t_free_subspaces_with_workers, gaussian_binomial, F2Matrix};
use cayley_census::presentations::{build_quotient, DEFAULT_COSET_CAP};
use cayley_census::series::p_series;
use cayley_census::{Error, Result};

#[derive(Parser)]
#[command(version, about = "Subspace counts, W_d quotients and verified Cayley-graph censuses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count codimension-s subspaces of F_2^r, optionally only those moved
    /// by every non-identity element of the group generated by the matrices.
    CountSubspaces {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        /// File holding one matrix in `rows cols` + 0/1 rows form.
        #[arg(long = "matrix")]
        matrices: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Build the class-c quotient of the group generated by d involutions.
    BuildQuotient {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, default_value_t = DEFAULT_COSET_CAP)]
        coset_cap: usize,
        /// Write the multiplication table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the ranks of the lower central and refined series.
    Series {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, default_value_t = DEFAULT_COSET_CAP)]
        coset_cap: usize,
    },
    /// Construct GRRs on quotients of the class-c quotient and store them.
    GrrPipeline {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 3)]
        c: usize,
        /// Target order 2^m.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        s_min: Option<u32>,
        #[arg(long)]
        s_max: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_COSET_CAP)]
        coset_cap: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search 5-arc-transitive covers of the Tutte–Coxeter graph.
    FiveArc {
        #[arg(long, default_value_t = 0)]
        k_min: usize,
        #[arg(long, default_value_t = 1)]
        k_max: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of groups of order 2^m generated by d involutions.
    GCount {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: u32,
    },
    /// Summarize a store as JSON.
    Report { store: PathBuf },
    /// Count graphs of an external graph6 census with more than n² automorphisms.
    Crosscheck {
        file: PathBuf,
        #[arg(long, default_value_t = 48)]
        order_cap: usize,
    },
}

fn read_matrix(path: &Path) -> Result<F2Matrix> {
    F2Matrix::from_text(&std::fs::read_to_string(path)?)
}

fn store_records(out: Option<&Path>, records: &[cayley_census::census::CensusRecord]) -> Result<Value> {
    Ok(match out {
        Some(dir) => {
            let update = write_store(dir, records)?;
            json!({"store": dir, "added": update.added, "already_present": update.already_present, "total": update.total})
        }
        None => Value::Null,
    })
}

fn run(command: Command) -> Result<Value> {
    match command {
        Command::CountSubspaces {
            r,
            s,
            matrices,
            workers,
        } => {
            let total = gaussian_binomial(r, s, 2)?;
            if matrices.is_empty() {
                return Ok(json!({"r": r, "s": s, "subspaces": total.to_string()}));
            }
            let t = matrices.iter().map(|p| read_matrix(p)).collect::<Result<Vec<_>>>()?;
            let count = count_t_free_subspaces_with_workers(r, s, &t, workers)?;
            Ok(json!({
                "r": r,
                "s": s,
                "subspaces": total.to_string(),
                "group_order": count.group_order,
                "moved_by_all": count.exact.to_string(),
                "lower_bound": count.lower_bound.to_string(),
            }))
        }
        Command::BuildQuotient { d, c, coset_cap, out } => {
            let q = build_quotient(d, c, coset_cap)?;
            if let Some(path) = &out {
                std::fs::write(path, q.group.to_text())?;
            }
            Ok(json!({"d": d, "c": c, "order": q.order(), "log2_order": q.log2_order()}))
        }
        Command::Series { d, c, coset_cap } => {
            let q = build_quotient(d, c, coset_cap)?;
            let data = p_series(&q)?;
            Ok(json!({"d": d, "c": c, "order": q.order(), "series": data.summary()}))
        }
        Command::GrrPipeline {
            d,
            c,
            m,
            s_min,
            s_max,
            coset_cap,
            workers,
            out,
        } => {
            let s_window = match (s_min, s_max) {
                (None, None) => None,
                (lo, hi) => Some((lo.unwrap_or(0), hi.unwrap_or(u32::MAX))),
            };
            let cfg = PipelineConfig {
                d,
                c,
                m,
                s_window,
                coset_cap,
                workers,
                output: out,
                ..PipelineConfig::default()
            };
            let plan = grr_plan(&cfg)?;
            let (records, stats) = run_grr_lower(&cfg)?;
            let store = store_records(cfg.output.as_deref(), &records)?;
            Ok(json!({
                "quotient_log2_order": plan.quotient.log2_order(),
                "section_rank": plan.rank(),
                "achievable_exponents": [plan.achievable_exponents().start(), plan.achievable_exponents().end()],
                "stats": stats,
                "records": records.len(),
                "store": store,
            }))
        }
        Command::FiveArc {
            k_min,
            k_max,
            workers,
            out,
        } => {
            let cfg = PipelineConfig {
                k_range: (k_min, k_max),
                workers,
                output: out,
                ..PipelineConfig::default()
            };
            let (records, stats) = run_five_arc(&cfg)?;
            let store = store_records(cfg.output.as_deref(), &records)?;
            let found: Vec<Value> = records
                .iter()
                .map(|r| json!({"order": r.order, "aut_order": r.aut_order.to_string(), "certificate": r.certificate}))
                .collect();
            Ok(json!({"stats": stats, "records": found, "store": store}))
        }
        Command::GCount { d, m } => Ok(json!({"d": d, "m": m, "count": g_count(d, m)?})),
        Command::Report { store } => Ok(serde_json::to_value(census_report(&store)?)?),
        Command::Crosscheck { file, order_cap } => {
            let report = ingest_census_crosscheck(&file, order_cap)?;
            let count = report.count();
            let mut v = serde_json::to_value(report)?;
            v["count"] = json!(count);
            Ok(v)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("JSON values serialize"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    e.exit_code() as u8
}
