//! The free subgroup generated by `a1^2, a2^2`: words, certificates of
//! freeness and the conjugation action.

mod action;
mod certificate;
mod word;

pub use action::{
    conjugate_by_word, conjugated_scalars, diag_orbit_classify, free_generator_matrices,
    predicted_conjugate_diagonal, word_element, word_rho, DiagonalInput, OrbitClass,
    SymbolicDiagonal,
};
pub use certificate::{
    eval_word, no_relation_certificate, pingpong_check, sample_grid, GeneratorImages, GroupElement,
    NoRelationCertificate, PingPongReport, PingPongViolation, Sl2Matrix,
};
pub use word::{GroupWord, Letter};
