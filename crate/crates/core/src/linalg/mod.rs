//! Exact arithmetic over Q and GF(p), dense matrices, and block-sparse maps.

pub mod blocks;
pub mod field;
pub mod matrix;

pub use blocks::{BlockMap, SparseAcc, SparseVec};
pub use field::{Field, FieldElem, Rational};
pub use matrix::Matrix;
