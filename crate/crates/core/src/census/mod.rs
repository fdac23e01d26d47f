//! Pipelines producing verified, deduplicated censuses: small groups and
//! involution-generated counts, cubic GRRs from quotients of `W_d`, and
//! 5-arc-transitive covers of the Tutte–Coxeter graph.

mod catalog;
mod five_arc;
mod grr;
mod record;
mod report;
mod store;

pub use catalog::{
    g_count, generated_by_involutions, small_group_catalog, Catalog, CatalogEntry, CATALOG_MAX_ORDER,
    EXHAUSTIVE_ORDER,
};
pub use five_arc::{
    five_arc_candidate, five_arc_pipeline, invariant_subspaces, run_five_arc, vector_orbit_representatives,
    CoverOutcome, CycleSpace, FiveArcStats, MAX_VOLTAGE_RANK,
};
pub use grr::{free_orbit_representatives, grr_lower_pipeline, grr_plan, run_grr_lower, GrrPlan, GrrRunStats};
pub use record::{dedup_records, CensusRecord, PipelineConfig, Provenance, RECORD_S_MAX};
pub use report::{
    census_report, crosscheck_text, ingest_census_crosscheck, summarize, CensusReport, CrosscheckHit,
    CrosscheckReport, ReportRow,
};
pub use store::{certificate_digest, load_store, record_id, write_store, StoreUpdate, INDEX_FILE, RECORDS_DIR};
