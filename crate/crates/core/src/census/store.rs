use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::record::CensusRecord;
use crate::error::{Error, Result};

pub const INDEX_FILE: &str = "index.tsv";
pub const RECORDS_DIR: &str = "records";
const INDEX_HEADER: &str = "id\tsha256\torder\tvalency\tcertificate";

/// Hex sha256 of a certificate.
pub fn certificate_digest(certificate: &str) -> String {
    Sha256::digest(certificate.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Record id: the first 16 hex digits of the certificate digest.
pub fn record_id(certificate: &str) -> String {
    certificate_digest(certificate)[..16].to_string()
}

fn record_paths(dir: &Path, id: &str) -> (PathBuf, PathBuf) {
    let records = dir.join(RECORDS_DIR);
    (records.join(format!("{id}.g6")), records.join(format!("{id}.json")))
}

fn integrity(record: &str, msg: impl Into<String>) -> Error {
    Error::Integrity {
        record: record.to_string(),
        msg: msg.into(),
    }
}

/// Outcome of merging records into a store.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoreUpdate {
    pub added: usize,
    pub already_present: usize,
    pub total: usize,
}

/// Merge `records` into the store at `dir`, creating it if needed. Records
/// whose certificate is already stored are skipped; the index is rewritten
/// sorted by certificate.
pub fn write_store(dir: &Path, records: &[CensusRecord]) -> Result<StoreUpdate> {
    fs::create_dir_all(dir.join(RECORDS_DIR))?;
    let mut all: BTreeMap<String, CensusRecord> = load_store(dir)?
        .into_iter()
        .map(|r| (r.certificate.clone(), r))
        .collect();
    let mut update = StoreUpdate {
        added: 0,
        already_present: 0,
        total: 0,
    };
    for r in records {
        if all.contains_key(&r.certificate) {
            update.already_present += 1;
            continue;
        }
        let id = record_id(&r.certificate);
        if let Some(other) = all.values().find(|o| record_id(&o.certificate) == id) {
            return Err(integrity(&id, format!("id collision with {}", other.certificate)));
        }
        let (g6, json) = record_paths(dir, &id);
        fs::write(g6, format!("{}\n", r.certificate))?;
        fs::write(json, format!("{}\n", serde_json::to_string_pretty(r)?))?;
        all.insert(r.certificate.clone(), r.clone());
        update.added += 1;
    }
    update.total = all.len();
    let mut index = String::from(INDEX_HEADER);
    index.push('\n');
    for r in all.values() {
        let valency = r.valency.map_or("-".to_string(), |v| v.to_string());
        index.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            record_id(&r.certificate),
            certificate_digest(&r.certificate),
            r.order,
            valency,
            r.certificate
        ));
    }
    let tmp = dir.join(format!("{INDEX_FILE}.tmp"));
    fs::write(&tmp, index)?;
    fs::rename(tmp, dir.join(INDEX_FILE))?;
    Ok(update)
}

/// Read every record of a store, checking the index against the record
/// files. A directory without an index is an empty store.
pub fn load_store(dir: &Path) -> Result<Vec<CensusRecord>> {
    if !dir.is_dir() {
        return Err(Error::precondition(format!("store {} does not exist", dir.display())));
    }
    let index_path = dir.join(INDEX_FILE);
    if !index_path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(index_path)?;
    let mut lines = text.lines();
    if lines.next() != Some(INDEX_HEADER) {
        return Err(integrity(INDEX_FILE, "missing or malformed header"));
    }
    let mut out: Vec<CensusRecord> = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split('\t').collect();
        let [id, digest, order, valency, certificate] = fields[..] else {
            return Err(integrity(INDEX_FILE, format!("malformed line {line:?}")));
        };
        if certificate_digest(certificate) != digest || record_id(certificate) != id {
            return Err(integrity(id, "digest does not match the certificate"));
        }
        let (g6, json) = record_paths(dir, id);
        let g6_text = fs::read_to_string(&g6).map_err(|e| integrity(id, format!("{}: {e}", g6.display())))?;
        if g6_text.trim_end() != certificate {
            return Err(integrity(id, "graph6 file differs from the certificate"));
        }
        let json_text =
            fs::read_to_string(&json).map_err(|e| integrity(id, format!("{}: {e}", json.display())))?;
        let record: CensusRecord =
            serde_json::from_str(&json_text).map_err(|e| integrity(id, format!("bad JSON: {e}")))?;
        if record.certificate != certificate {
            return Err(integrity(id, "JSON certificate differs from the index"));
        }
        let stored_valency = record.valency.map_or("-".to_string(), |v| v.to_string());
        if record.order.to_string() != order || stored_valency != valency {
            return Err(integrity(id, "order or valency differs from the index"));
        }
        if out.last().is_some_and(|prev| prev.certificate >= record.certificate) {
            return Err(integrity(id, "index is not strictly sorted by certificate"));
        }
        out.push(record);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::record::Provenance;
    use crate::graphs::families;

    fn rec(g: &crate::graphs::Graph) -> CensusRecord {
        CensusRecord::analyze(
            g,
            Provenance::External {
                source: "test".into(),
                line: 1,
            },
        )
        .unwrap()
    }

    #[test]
    fn write_is_idempotent() {
        let dir = tempfile::tempdir().unwrap();
        let records = vec![rec(&families::petersen()), rec(&families::complete(4))];
        let first = write_store(dir.path(), &records).unwrap();
        assert_eq!(first.added, 2);
        let index = fs::read(dir.path().join(INDEX_FILE)).unwrap();
        let again = write_store(dir.path(), &records).unwrap();
        assert_eq!((again.added, again.already_present, again.total), (0, 2, 2));
        assert_eq!(fs::read(dir.path().join(INDEX_FILE)).unwrap(), index);
        let loaded = load_store(dir.path()).unwrap();
        assert_eq!(loaded.len(), 2);
        assert!(loaded[0].certificate < loaded[1].certificate);
    }

    #[test]
    fn corruption_names_the_record() {
        let dir = tempfile::tempdir().unwrap();
        let r = rec(&families::cycle(5));
        write_store(dir.path(), std::slice::from_ref(&r)).unwrap();
        let id = record_id(&r.certificate);
        let (_, json) = record_paths(dir.path(), &id);
        fs::write(&json, "{").unwrap();
        match load_store(dir.path()) {
            Err(Error::Integrity { record, .. }) => assert_eq!(record, id),
            other => panic!("expected an integrity error, got {other:?}"),
        }
    }

    #[test]
    fn missing_store_is_a_precondition_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(load_store(&dir.path().join("nope")), Err(Error::Precondition(_))));
        assert!(load_store(dir.path()).unwrap().is_empty());
    }
}
