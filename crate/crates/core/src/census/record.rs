use std::path::PathBuf;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{
    automorphism_group, canonical_certificate, parse_graph6_line, s_arc_transitivity_with_group,
    Graph,
};
use crate::permgroup::PermGroup;

/// Largest `s` for which s-arc transitivity is recorded.
pub const RECORD_S_MAX: usize = 6;

/// How a record was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "pipeline", rename_all = "kebab-case")]
pub enum Provenance {
    /// Cayley graph of `Q/N` with `Q` the class-`c` quotient of `W_d` and
    /// `N/K` the subspace spanned by `subspace` (bit vectors in the section
    /// basis) of codimension `s`.
    GrrLower {
        d: usize,
        c: usize,
        m: u32,
        s: u32,
        subspace: Vec<u64>,
    },
    /// Elementary abelian cover of the Tutte–Coxeter graph; `voltages`
    /// lists the nonzero edge voltages as `(u, v, bits)`.
    FiveArc { k: usize, voltages: Vec<(u32, u32, u64)> },
    /// A graph read from an external file.
    External { source: String, line: usize },
}

/// One graph of a census with its verified symmetry data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    /// graph6 of the canonical form.
    pub certificate: String,
    pub order: usize,
    /// Common valency, or `None` for irregular graphs.
    pub valency: Option<usize>,
    pub connected: bool,
    pub vertex_transitive: bool,
    pub grr: bool,
    /// Largest `s ≤ RECORD_S_MAX` with s-arc transitivity; `None` when the
    /// graph is disconnected or not vertex-transitive.
    pub max_s: Option<usize>,
    #[serde(with = "decimal")]
    pub aut_order: BigUint,
    pub provenance: Provenance,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom(format!("not a decimal integer: {text:?}")))
    }
}

impl CensusRecord {
    /// Compute every field from the graph.
    pub fn analyze(g: &Graph, provenance: Provenance) -> Result<Self> {
        let aut = automorphism_group(g);
        Self::analyze_with_group(g, &aut, provenance)
    }

    pub(crate) fn analyze_with_group(g: &Graph, aut: &PermGroup, provenance: Provenance) -> Result<Self> {
        let certificate = String::from_utf8(canonical_certificate(g)).expect("graph6 is ASCII");
        let connected = g.is_connected();
        let vertex_transitive = aut.is_transitive();
        let grr = aut.is_regular();
        let max_s = if connected && vertex_transitive && g.order() > 1 {
            s_arc_transitivity_with_group(g, aut, RECORD_S_MAX)?.max_s
        } else {
            None
        };
        Ok(CensusRecord {
            certificate,
            order: g.order(),
            valency: g.valency(),
            connected,
            vertex_transitive,
            grr,
            max_s,
            aut_order: aut.order(),
            provenance,
        })
    }

    /// The canonical form stored in the certificate.
    pub fn graph(&self) -> Result<Graph> {
        parse_graph6_line(&self.certificate, 1)
    }

    /// Recompute the derived fields from the stored graph and compare.
    pub fn reverify(&self) -> Result<()> {
        let fresh = Self::analyze(&self.graph()?, self.provenance.clone())?;
        if &fresh != self {
            return Err(Error::Integrity {
                record: self.certificate.clone(),
                msg: format!("stored flags differ from recomputed ones: {fresh:?}"),
            });
        }
        Ok(())
    }
}

/// Parameters shared by the pipelines.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// Number of involutions generating the group.
    pub d: usize,
    /// Nilpotency class of the quotient.
    pub c: usize,
    /// Target order `2^m` of the Cayley graphs; when absent every
    /// codimension in `s_window` is tried.
    pub m: Option<u32>,
    /// Inclusive range of codimensions `s = log2 |H : N|`.
    pub s_window: Option<(u32, u32)>,
    /// Inclusive range of voltage ranks for the cover search.
    pub k_range: (usize, usize),
    pub coset_cap: usize,
    pub workers: usize,
    pub output: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            d: 3,
            c: 3,
            m: None,
            s_window: None,
            k_range: (0, 1),
            coset_cap: crate::presentations::DEFAULT_COSET_CAP,
            workers: 1,
            output: None,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.d < 3 {
            return Err(Error::domain(format!("d must be at least 3, got {}", self.d)));
        }
        if self.c == 0 || self.coset_cap == 0 || self.workers == 0 {
            return Err(Error::domain("class, coset cap and worker count must be positive"));
        }
        if let Some((lo, hi)) = self.s_window {
            if lo > hi {
                return Err(Error::domain(format!("empty codimension window {lo}..={hi}")));
            }
        }
        if self.k_range.0 > self.k_range.1 {
            return Err(Error::domain("empty voltage rank range"));
        }
        Ok(())
    }
}

/// Map `f` over `items` on `workers` threads, keeping the input order.
pub(crate) fn parallel_map<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let f = &f;
    let mut indexed: Vec<(usize, R)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    items
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, x)| (i, f(x)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    indexed.sort_unstable_by_key(|(i, _)| *i);
    indexed.into_iter().map(|(_, r)| r).collect()
}

/// Sort by certificate and keep the first record of each certificate.
pub fn dedup_records(mut records: Vec<CensusRecord>) -> Vec<CensusRecord> {
    records.sort_by(|a, b| a.certificate.cmp(&b.certificate));
    records.dedup_by(|a, b| a.certificate == b.certificate);
    records
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::families;

    #[test]
    fn record_round_trips_through_json() {
        let r = CensusRecord::analyze(
            &families::complete(4),
            Provenance::External {
                source: "test".into(),
                line: 1,
            },
        )
        .unwrap();
        assert_eq!(r.aut_order, BigUint::from(24u32));
        assert_eq!(r.max_s, Some(2));
        assert!(r.vertex_transitive && !r.grr);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"aut_order\":\"24\""));
        let back: CensusRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        back.reverify().unwrap();
    }

    #[test]
    fn tampered_record_fails_reverification() {
        let mut r = CensusRecord::analyze(
            &families::petersen(),
            Provenance::External {
                source: "test".into(),
                line: 1,
            },
        )
        .unwrap();
        r.grr = true;
        assert!(matches!(r.reverify(), Err(Error::Integrity { .. })));
    }

    #[test]
    fn parallel_map_keeps_order() {
        let xs: Vec<u32> = (0..100).collect();
        assert_eq!(parallel_map(&xs, 4, |x| x * 2), parallel_map(&xs, 1, |x| x * 2));
    }

    #[test]
    fn config_validation() {
        assert!(PipelineConfig::default().validate().is_ok());
        let bad = PipelineConfig {
            d: 2,
            ..PipelineConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
