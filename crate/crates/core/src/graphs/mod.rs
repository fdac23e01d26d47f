//! Simple graphs, graph6, canonical labeling, Cayley and coset graphs, and
//! symmetry predicates.

mod canon;
mod construct;
pub mod families;
mod graph;
mod graph6;
mod predicates;

pub use canon::{canonical_certificate, canonical_form, canonical_labeling, CanonResult};
pub use construct::{cayley_graph, coset_graph, voltage_cover};
pub use graph::Graph;
pub use graph6::{parse_graph6, parse_graph6_line, to_graph6, to_graph6_string, GRAPH6_MAX_ORDER};
pub use predicates::{
    automorphism_group, count_s_arcs, is_grr, is_vertex_transitive, s_arc_transitivity,
    s_arc_transitivity_with_group, transitive_subgroup_gens, SArcReport, S_ARC_CAP,
};
