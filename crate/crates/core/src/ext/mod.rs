//! Ext groups as cocycles on minimal resolutions, Yoneda products and the
//! induced maps f_* and f^*.

mod evidence;
mod extension;
mod lift;
mod space;

pub use evidence::{
    center_truncated, complexity_table, ext_algebra_generators, ext_basis, ext_dim_via_syzygy,
    pair_complexity, perp_evidence, CenterTruncated, ComplexityTable, PerpEvidence, DEFAULT_GENERATOR_DEGREE,
    TRUNCATION_NOTE,
};
pub use extension::{extension_class, period_class, syzygy_class, tensor_period_classes};
pub use lift::{
    hom_class, lift_chain_map, lift_from_values, lift_hom, pullback_map, pushforward, yoneda,
    yoneda_with_lift, ChainMap,
};
pub use space::{ext_dims, ext_space, Cochains, ExtElement, ExtSpace};
