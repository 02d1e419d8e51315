pub mod algebra;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod graded;
pub mod linalg;
pub mod module;
pub mod resolution;
pub mod variety;
pub mod wildness;

pub use error::{Error, Result};
