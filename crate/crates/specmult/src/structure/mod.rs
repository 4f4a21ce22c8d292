//! Structural machinery: twin classes, shared-neighborhood cliques,
//! equitable partitions with their quotient and characteristic matrices,
//! and the combinatorial lemma verifiers built on them.

mod lemmas;
mod partition;

pub use lemmas::{
    shared_neighborhood_cliques, twin_classes, verify_clique_lemma, verify_clique_lemma_with,
    verify_commonvertex_properties, verify_quotient_lifting, verify_twin_lemma,
    verify_twin_lemma_with, AssertionOutcome, CommonVertexReport, CLIQUE_RESIDUAL_TOL,
    LIFT_RESIDUAL_TOL,
};
pub use partition::{
    characteristic_matrix, coarsest_equitable_refinement, is_equitable, is_equitable_exact,
    quotient_matrix, quotient_random_walk, CharacteristicMatrix, Partition, QuotientMatrix,
};
