//! Finite presentations, coset enumeration, and the class-`c` quotients of
//! the group generated by `d` involutions.

mod presentation;
mod quotient;
mod todd_coxeter;

pub use presentation::{
    commutator_word, free_reduce, inverse_word, left_normed_commutator, word_to_letters,
    Presentation, Word,
};
pub use quotient::{build_quotient, group_from_presentation, wd_class_relators, MarkedQuotient};
pub use todd_coxeter::{todd_coxeter, CosetTable, DEFAULT_COSET_CAP};
