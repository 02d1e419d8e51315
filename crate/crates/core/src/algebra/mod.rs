//! Quivers with relations and the finite dimensional algebras they present.

pub mod build;
pub mod parse;
pub mod presentation;
pub mod quiver;
pub mod tensor;

pub use build::{build_algebra, build_algebra_capped, Algebra, DEFAULT_PATH_CAP};
pub use parse::{parse_presentation, parse_presentation_with, ParseOptions};
pub use presentation::{Presentation, Relation};
pub use quiver::{Arrow, Path, Quiver};
pub use tensor::{arrow_origins, tensor, tensor_all, vertex_tuples};

#[cfg(test)]
mod tests;
