use std::fs;
use std::path::Path;

use cayley_census::census::{
    census_report, dedup_records, five_arc_pipeline, grr_lower_pipeline, grr_plan, load_store, write_store,
    CensusRecord, PipelineConfig, Provenance,
};
use cayley_census::f2linalg::F2Subspace;
use cayley_census::graphs::{automorphism_group, canonical_certificate, cayley_graph};
use cayley_census::permgroup::set_preserving_automorphisms;

fn grr_cfg(m: Option<u32>, workers: usize) -> PipelineConfig {
    PipelineConfig {
        d: 3,
        c: 3,
        m,
        workers,
        ..PipelineConfig::default()
    }
}

fn store_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = vec![("index.tsv".to_string(), fs::read(dir.join("index.tsv")).unwrap())];
    let mut names: Vec<_> = fs::read_dir(dir.join("records"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    for n in names {
        out.push((n.clone(), fs::read(dir.join("records").join(&n)).unwrap()));
    }
    out
}

#[test]
fn grr_records_are_reverifiable() {
    let records = grr_lower_pipeline(&grr_cfg(Some(8), 1)).unwrap();
    assert!(!records.is_empty());
    for r in &records {
        assert_eq!(r.order, 256);
        r.reverify().unwrap();
        assert!(r.grr);
    }
    // rebuild each quotient from its provenance: the connection set has no
    // symmetry and the graph has exactly |G| automorphisms
    let plan = grr_plan(&grr_cfg(Some(8), 1)).unwrap();
    let g = &plan.quotient.group;
    for r in &records {
        let Provenance::GrrLower { subspace, s, .. } = &r.provenance else {
            panic!("unexpected provenance {:?}", r.provenance);
        };
        assert_eq!(*s, 2);
        let w = F2Subspace::span(plan.rank() as usize, subspace.iter().copied()).unwrap();
        let (quot, coset_of) = g.quotient(&plan.section.preimage(g, &w)).unwrap();
        let conn: Vec<u32> = plan.quotient.xgens.iter().map(|&x| coset_of[x as usize]).collect();
        assert_eq!(set_preserving_automorphisms(&quot, &conn).unwrap().order(), 1u32.into());
        let cay = cayley_graph(&quot, &conn).unwrap();
        assert_eq!(canonical_certificate(&cay), r.certificate.as_bytes());
        assert_eq!(automorphism_group(&cay).order(), 256u32.into());
    }
}

#[test]
fn stores_are_deterministic_across_worker_counts() {
    let one = tempfile::tempdir().unwrap();
    let four = tempfile::tempdir().unwrap();
    let again = tempfile::tempdir().unwrap();
    write_store(one.path(), &grr_lower_pipeline(&grr_cfg(Some(7), 1)).unwrap()).unwrap();
    write_store(again.path(), &grr_lower_pipeline(&grr_cfg(Some(7), 1)).unwrap()).unwrap();
    write_store(four.path(), &grr_lower_pipeline(&grr_cfg(Some(7), 4)).unwrap()).unwrap();
    assert_eq!(store_bytes(one.path()), store_bytes(again.path()));
    assert_eq!(store_bytes(one.path()), store_bytes(four.path()));
}

#[test]
fn store_round_trip_and_dedup() {
    let dir = tempfile::tempdir().unwrap();
    let mut records = grr_lower_pipeline(&grr_cfg(Some(7), 1)).unwrap();
    records.extend(five_arc_pipeline(&PipelineConfig {
        k_range: (0, 0),
        ..PipelineConfig::default()
    })
    .unwrap());
    let n = records.len();
    let mut doubled = records.clone();
    doubled.extend(records.clone());
    assert_eq!(dedup_records(doubled.clone()).len(), n);
    let first = write_store(dir.path(), &doubled).unwrap();
    assert_eq!((first.added, first.already_present), (n, n));
    let before = store_bytes(dir.path());
    write_store(dir.path(), &records).unwrap();
    assert_eq!(store_bytes(dir.path()), before);

    let loaded: Vec<CensusRecord> = load_store(dir.path()).unwrap();
    assert_eq!(loaded.len(), n);
    for r in &loaded {
        let g = r.graph().unwrap();
        assert_eq!(canonical_certificate(&g), r.certificate.as_bytes());
        r.reverify().unwrap();
    }
    let report = census_report(dir.path()).unwrap();
    let grr_rows: usize = report.rows.iter().map(|r| r.count_grr).sum();
    let cay_rows: usize = report.rows.iter().map(|r| r.count_cay_found).sum();
    assert_eq!(grr_rows, n - 1);
    assert_eq!(cay_rows, n - 1);
    assert_eq!(report.rows.iter().map(|r| r.count_5at).sum::<usize>(), 1);
}

#[test]
fn five_arc_records_satisfy_the_stabilizer_identity() {
    let records = five_arc_pipeline(&PipelineConfig {
        k_range: (0, 2),
        ..PipelineConfig::default()
    })
    .unwrap();
    assert_eq!(records.len(), 1);
    for r in &records {
        assert_eq!(r.max_s, Some(5));
        assert_eq!(r.aut_order, (48 * r.order).into());
        r.reverify().unwrap();
    }
}
