//! Linear algebra over the field with two elements.

mod counting;
mod matrix;
mod subspace;

pub use counting::{
    count_t_free_subspaces, count_t_free_subspaces_with_workers, fix_count_bruteforce,
    fix_count_formula, gaussian_binomial, matrix_group_closure, transvection_bound,
    FreeSubspaceCount,
};
pub use matrix::{
    companion_matrix, cyclotomic_factors, involution_with_blocks, is_prime,
    multiplicative_order_of_two, odd_prime_order_element, poly, F2Matrix, F2Vector, MAX_DIM,
};
pub use subspace::{enumerate_subspaces, subspaces_by_leading_pivot, F2Subspace, SubspaceIter};
