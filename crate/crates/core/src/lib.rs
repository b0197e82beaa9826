//! Finite models of semicrossed products of `C(X)` by ℤ₊²-actions.
//!
//! A pair of commuting permutations of a finite set generates, through
//! `zP₁`, `wP₂` and the diagonal matrices, an algebra of matrix-valued
//! polynomials. The crate represents such algebras by their monomial support
//! patterns at a total-degree cap, compares them with closed-form families
//! (`B_{k,2}`, `B_k ⊗ B_l`, …), decomposes perpendicular actions into products,
//! and computes the maximal-ideal codimension fingerprint used to tell
//! non-isomorphic algebras apart.

pub mod generators;
pub mod ideals;
pub mod pattern;
pub mod perm;
pub mod poly;
pub mod report;

pub use generators::{
    closed_form_pattern, generated_pattern, generators, permutation_matrix, probe_generating_set,
    verify_identification, GeneratorSet, MonomialGenerator,
};
pub use ideals::{
    codim_invariant, distinguish, rank_oracle, stratum_support, support_blocks, CodimInvariant, Distinction,
    IdealError, Stratum, SupportRelation, Verdict,
};
pub use pattern::{equal_to_degree, Comparison, MonomialKey, Pattern, PatternError, PatternTag};
pub use perm::{NotPerpendicular, Orbit, PermError, PerpDecomposition, PerpViolation, Permutation, Z2Action};
pub use poly::{rational_rank, BiPoly, MatrixPoly, PolyError, Rational, RationalMatrix};
