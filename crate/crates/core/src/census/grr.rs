use serde::Serialize;

use super::record::{dedup_records, parallel_map, CensusRecord, PipelineConfig, Provenance};
use crate::error::{Error, Result};
use crate::f2linalg::{enumerate_subspaces, F2Matrix, F2Subspace};
use crate::graphs::{automorphism_group, cayley_graph};
use crate::permgroup::{set_preserving_automorphisms, Subgroup};
use crate::presentations::{build_quotient, MarkedQuotient};
use crate::series::{p_series, rr_kernel, symd_action, Section};

/// The data the GRR pipeline derives from the quotient before searching.
#[derive(Debug)]
pub struct GrrPlan {
    pub quotient: MarkedQuotient,
    /// Index of the lower central term used as `H`.
    pub level: usize,
    /// `H / K` with `K = [H, Q] H²`.
    pub section: Section,
    /// Matrices of the non-identity relabelings of the involutions on `H/K`.
    pub action: Vec<F2Matrix>,
    /// `log2 |Q : H|`.
    pub base_exponent: u32,
}

impl GrrPlan {
    pub fn rank(&self) -> u32 {
        self.section.rank() as u32
    }

    /// Graph orders `2^m` reachable with `K ≤ N ≤ H`.
    pub fn achievable_exponents(&self) -> std::ops::RangeInclusive<u32> {
        self.base_exponent..=self.base_exponent + self.rank()
    }

    /// Codimensions to search, from `m` or the window.
    pub fn codimensions(&self, cfg: &PipelineConfig) -> Result<Vec<u32>> {
        let r = self.rank();
        match (cfg.m, cfg.s_window) {
            (Some(m), _) => {
                if !self.achievable_exponents().contains(&m) {
                    let range = self.achievable_exponents();
                    return Err(Error::precondition(format!(
                        "order 2^{m} is not reachable; achievable exponents are {}..={}",
                        range.start(),
                        range.end()
                    )));
                }
                Ok(vec![m - self.base_exponent])
            }
            (None, Some((lo, hi))) => Ok((lo..=hi.min(r)).collect()),
            (None, None) => Ok((0..=r).collect()),
        }
    }
}

/// Summary of one pipeline run.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GrrRunStats {
    /// `(s, number of Sym(d)-free orbit representatives)`.
    pub free_orbits: Vec<(u32, usize)>,
    /// Candidates whose connection set admitted a non-trivial automorphism.
    pub rejected_by_normalizer: usize,
}

/// Build the quotient and the section `H/K` for `H` the deepest non-trivial
/// lower central term.
pub fn grr_plan(cfg: &PipelineConfig) -> Result<GrrPlan> {
    cfg.validate()?;
    let quotient = build_quotient(cfg.d, cfg.c, cfg.coset_cap)?;
    let data = p_series(&quotient)?;
    let g = &quotient.group;
    let (level, h) = data
        .gamma
        .iter()
        .enumerate()
        .rev()
        .find(|(_, s)| s.order() > 1)
        .map(|(i, s)| (i + 1, s.clone()))
        .ok_or_else(|| Error::precondition("the quotient is trivial"))?;
    let k = rr_kernel(&quotient, &h)?;
    let base_exponent = (g.order() / h.order()).trailing_zeros();
    let section = Section::new(g, h, k)?;
    let symd = symd_action(&quotient)?;
    let action = symd.maps[1..].iter().map(|phi| section.action_matrix(phi)).collect();
    Ok(GrrPlan {
        quotient,
        level,
        section,
        action,
        base_exponent,
    })
}

/// Subspaces of codimension `s` moved by every non-identity matrix, one per
/// orbit: the least subspace of its orbit.
pub fn free_orbit_representatives(r: usize, s: usize, action: &[F2Matrix]) -> Result<Vec<F2Subspace>> {
    Ok(enumerate_subspaces(r, s)?
        .filter(|w| action.iter().all(|a| *w < w.image(a)))
        .collect())
}

/// Cubic (or `d`-valent) Cayley graphs on quotients `Q/N`, re-verified and
/// deduplicated by certificate.
pub fn grr_lower_pipeline(cfg: &PipelineConfig) -> Result<Vec<CensusRecord>> {
    Ok(run_grr_lower(cfg)?.0)
}

/// As [`grr_lower_pipeline`], also returning run statistics.
pub fn run_grr_lower(cfg: &PipelineConfig) -> Result<(Vec<CensusRecord>, GrrRunStats)> {
    let plan = grr_plan(cfg)?;
    let r = plan.rank() as usize;
    let mut stats = GrrRunStats::default();
    let mut records = Vec::new();
    for s in plan.codimensions(cfg)? {
        let reps = free_orbit_representatives(r, s as usize, &plan.action)?;
        stats.free_orbits.push((s, reps.len()));
        let outcomes = parallel_map(&reps, cfg.workers, |w| grr_candidate(&plan, cfg, s, w));
        for outcome in outcomes {
            match outcome? {
                Some(rec) => records.push(rec),
                None => stats.rejected_by_normalizer += 1,
            }
        }
    }
    Ok((dedup_records(records), stats))
}

/// Build and verify `Cay(Q/N, S)` for one subspace; `None` when the
/// connection set has a non-trivial automorphism.
fn grr_candidate(plan: &GrrPlan, cfg: &PipelineConfig, s: u32, w: &F2Subspace) -> Result<Option<CensusRecord>> {
    let q = &plan.quotient;
    let g = &q.group;
    let n: Subgroup = plan.section.preimage(g, w);
    let (quot, coset_of) = g.quotient(&n)?;
    let conn: Vec<u32> = q.xgens.iter().map(|&x| coset_of[x as usize]).collect();
    let mut distinct = conn.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != q.d || distinct.contains(&0) {
        return Err(Error::Internal(format!(
            "involutions collapse in the quotient by the subspace {:?}",
            w.basis()
        )));
    }
    if set_preserving_automorphisms(&quot, &conn)?.order() != 1u32.into() {
        return Ok(None);
    }
    let graph = cayley_graph(&quot, &conn)?;
    let aut = automorphism_group(&graph);
    let m = plan.base_exponent + s;
    let record = CensusRecord::analyze_with_group(
        &graph,
        &aut,
        Provenance::GrrLower {
            d: q.d,
            c: q.c,
            m,
            s,
            subspace: w.basis().to_vec(),
        },
    )?;
    if record.order != 1 << m || record.valency != Some(q.d) || !record.connected || !record.vertex_transitive {
        return Err(Error::Internal(format!(
            "candidate graph fails its construction checks: {record:?}"
        )));
    }
    if cfg.d == 3 && !record.grr {
        return Err(Error::Internal(format!(
            "cubic Cayley graph with trivial connection-set automorphisms is not a GRR: {}",
            record.certificate
        )));
    }
    Ok(Some(record))
}
