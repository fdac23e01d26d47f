use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigUint;
use serde::Serialize;

use super::record::{CensusRecord, Provenance};
use super::store::load_store;
use crate::error::Result;
use crate::graphs::{automorphism_group, parse_graph6_line};

/// Counts for one `(order, valency)` pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub order: usize,
    pub valency: Option<usize>,
    pub count_vt: usize,
    /// Records produced as Cayley graphs by a pipeline.
    pub count_cay_found: usize,
    pub count_grr: usize,
    pub count_5at: usize,
}

impl ReportRow {
    fn add(&mut self, r: &CensusRecord) {
        self.count_vt += r.vertex_transitive as usize;
        self.count_cay_found += matches!(r.provenance, Provenance::GrrLower { .. }) as usize;
        self.count_grr += r.grr as usize;
        self.count_5at += r.max_s.is_some_and(|s| s >= 5) as usize;
    }

    fn absorb(&mut self, other: &ReportRow) {
        self.count_vt += other.count_vt;
        self.count_cay_found += other.count_cay_found;
        self.count_grr += other.count_grr;
        self.count_5at += other.count_5at;
    }
}

/// Per-order tallies of a store. The cumulative rows count records of
/// order at most `order` with the given valency; they are lower bounds
/// found by the pipelines, not complete counts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub records: usize,
    pub rows: Vec<ReportRow>,
    pub cumulative: Vec<ReportRow>,
}

pub fn summarize(records: &[CensusRecord]) -> CensusReport {
    let mut rows: BTreeMap<(usize, Option<usize>), ReportRow> = BTreeMap::new();
    for r in records {
        rows.entry((r.order, r.valency))
            .or_insert_with(|| ReportRow {
                order: r.order,
                valency: r.valency,
                ..ReportRow::default()
            })
            .add(r);
    }
    let rows: Vec<ReportRow> = rows.into_values().collect();
    let mut running: BTreeMap<Option<usize>, ReportRow> = BTreeMap::new();
    let mut cumulative = Vec::new();
    for row in &rows {
        let acc = running.entry(row.valency).or_default();
        acc.absorb(row);
        cumulative.push(ReportRow {
            order: row.order,
            valency: row.valency,
            ..acc.clone()
        });
    }
    CensusReport {
        records: records.len(),
        rows,
        cumulative,
    }
}

/// Tally the store at `dir`.
pub fn census_report(dir: &Path) -> Result<CensusReport> {
    Ok(summarize(&load_store(dir)?))
}

/// A graph from an external census with more than `n²` automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckHit {
    pub line: usize,
    pub order: usize,
    #[serde(serialize_with = "decimal")]
    pub aut_order: BigUint,
}

fn decimal<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_str_radix(10))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub ingested: usize,
    pub within_cap: usize,
    pub order_cap: usize,
    pub hits: Vec<CrosscheckHit>,
}

impl CrosscheckReport {
    pub fn count(&self) -> usize {
        self.hits.len()
    }
}

/// Count the graphs of order at most `order_cap` in a graph6 file whose
/// automorphism group has more than `n²` elements.
pub fn ingest_census_crosscheck(path: &Path, order_cap: usize) -> Result<CrosscheckReport> {
    let text = std::fs::read_to_string(path)?;
    crosscheck_text(&text, order_cap)
}

/// As [`ingest_census_crosscheck`], on file contents.
pub fn crosscheck_text(text: &str, order_cap: usize) -> Result<CrosscheckReport> {
    let mut report = CrosscheckReport {
        order_cap,
        ..CrosscheckReport::default()
    };
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let g = parse_graph6_line(line.trim_end(), i + 1)?;
        report.ingested += 1;
        let n = g.order();
        if n > order_cap {
            continue;
        }
        report.within_cap += 1;
        let aut_order = automorphism_group(&g).order();
        if aut_order > BigUint::from(n * n) {
            report.hits.push(CrosscheckHit {
                line: i + 1,
                order: n,
                aut_order,
            });
        }
    }
    Ok(report)
}
