//! Modules as quiver representations, homomorphisms and the usual constructions.

pub mod constructions;
pub mod grading;
pub mod hom;
pub mod io;
mod repr;

pub use constructions::{
    cokernel, cosyzygy, direct_sum, dual, image, indecomposable_injective, indecomposable_projective,
    injective_envelope, kernel, map_from_projectives, projective_cover, pullback, pushout, radical,
    regular_module, semisimple_quotient, simple, simples, syzygy, tensor_homs, tensor_modules, top,
};
pub use hom::{hom_space, hom_space_direct, is_isomorphic, is_selfinjective, Iso, IsoLabel};
pub use io::{module_from_json, module_to_json, ModuleFile};
pub use repr::{Module, ModuleHom, Violation};
