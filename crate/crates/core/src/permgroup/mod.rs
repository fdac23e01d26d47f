//! Permutations, permutation groups and multiplication-table groups.

mod autos;
mod chain;
mod finite;
mod iso;
mod perm;

pub use autos::set_preserving_automorphisms;
pub use chain::PermGroup;
pub use finite::{FiniteGroup, Subgroup, TABLE_CAP};
pub use iso::{are_isomorphic, find_isomorphism};
pub use perm::Permutation;

/// The right-regular representation of `g`.
pub fn regular_representation(g: &FiniteGroup) -> PermGroup {
    g.regular_representation()
}

/// Group generated by `gens`, with a verified stabilizer chain.
pub fn stabilizer_chain(gens: &[Permutation]) -> crate::Result<PermGroup> {
    PermGroup::stabilizer_chain(gens)
}
