//! Exact machinery for lower-bound constructions on vertex-transitive graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`f2linalg`]: subspaces of `F_2^r`, Gaussian binomials and counts of
//!   subspaces moved by every non-identity element of a matrix group.
//! * [`permgroup`]: multiplication-table groups, permutation groups with
//!   stabilizer chains, connection-set automorphisms, isomorphism testing.
//! * [`presentations`]: Todd–Coxeter coset enumeration and the class-`c`
//!   quotients of the free product of `d` copies of `C_2`.
//! * [`series`]: lower central series, the refined subgroups `M(i,j)` and
//!   the action of `Sym(d)` inside those quotients.
//! * [`graphs`]: Cayley, coset and voltage-cover graphs, canonical
//!   certificates, automorphism groups and s-arc transitivity.
//! * [`census`]: the pipelines that produce deduplicated, re-verified
//!   censuses of cubic GRRs and 5-arc-transitive covers.

pub mod census;
pub mod error;
pub mod f2linalg;
pub mod graphs;
pub mod permgroup;
pub mod presentations;
pub mod series;

pub use error::{Error, Result};
pub use num_bigint::BigUint as BigCount;
