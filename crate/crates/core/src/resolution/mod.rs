//! Minimal projective and injective resolutions and growth rates.

mod free;
mod gamma;
mod proj;

pub use free::{FreeModule, Generator};
pub use gamma::{estimate_gamma, GrowthEstimate, MIN_SEQUENCE};
pub use proj::{min_inj_resolution, min_proj_resolution, InjResolution, ProjResolution};

use crate::error::{Error, Result};
use crate::module::Module;

fn check_trunc(d: usize) -> Result<()> {
    if d + 1 < MIN_SEQUENCE {
        return Err(Error::SequenceTooShort(d + 1));
    }
    Ok(())
}

/// cx M: growth of dim P_n for n ≤ d.
pub fn complexity(m: &Module, d: usize) -> Result<GrowthEstimate> {
    check_trunc(d)?;
    estimate_gamma(&min_proj_resolution(m, d).term_dims()[..=d])
}

/// px M: growth of dim I^n for n ≤ d.
pub fn plexity(m: &Module, d: usize) -> Result<GrowthEstimate> {
    check_trunc(d)?;
    estimate_gamma(&min_inj_resolution(m, d).term_dims()[..=d])
}

#[cfg(test)]
mod tests;
