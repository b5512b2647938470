//! Exact equivariant Schubert calculus on the complete flag manifold of
//! `C^n`.
//!
//! Elements of the torus-equivariant cohomology ring are modeled by their
//! localizations: functions from `S_n` to polynomials in the simple roots.
//! The main entry point is [`pieri::pieri_expand`], which multiplies a
//! Schubert class `ξ^w` by the special class `ξ^{c[k,m]}` using a closed
//! combinatorial rule. [`pieri::monk_recursion_expand`] and
//! [`pieri::solve_expand`] compute the same product by independent routes.

pub mod error;
pub mod localization;
pub mod pieri;
pub mod poly;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use localization::{
    chevalley_expand, expand_schubert, xi_diagonal, xi_simple_value, xi_value, xi_value_with_word,
    SchubertExpansion, WeylFunction, XiTable,
};
pub use pieri::{
    associated_element, decomp_identity_check, is_special_superior, monk_recursion_coefficient,
    monk_recursion_expand, pieri_coefficient, pieri_expand, pieri_term, pieri_terms, solve_expand,
    special_superior_set, AssociatedTrace, PieriTerm, SuperiorWitness,
};
pub use poly::{LinearForm, Monomial, Polynomial};
pub use weyl::{enumerate_group, Cycle, Permutation, ReducedWord, SymmetricGroup};
