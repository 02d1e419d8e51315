//! Commutative graded subalgebras H of Ext*(M, M), H-module structures on
//! Ext groups, annihilators, finite generation evidence and Noether normalization.

mod hmodule;
mod local;
mod normalize;
pub mod poly;
mod span;
mod subalgebra;

pub use hmodule::{
    annihilator, annihilator_from, ext_as_module, ext_module_over, fg_evidence, hilbert_gamma, FgEvidence,
    FgVerdict, GradedHModule, GradedIdeal, Side, TRUNCATED_ANNIHILATOR,
};
pub use local::{check_h0_local, maximal_graded_ideal, H0Report, LocalVerdict, MaximalGradedIdeal};
pub use normalize::{generator_coordinates, noether_normalize, Normalization};
pub use span::Span;
pub use subalgebra::{evaluate_words, generate_subalgebra, GradedSubalgebra, RingShape, Word};

#[cfg(test)]
mod tests;
