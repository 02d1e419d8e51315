use std::sync::Arc;

use super::space::{ext_space, ExtElement};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::module::ModuleHom;
use crate::resolution::{min_proj_resolution, ProjResolution};

/// Chain map φ_i : P_{shift+i}(X) → P_i(Y), i = 0..=depth, given by the images
/// of generators.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub shift: usize,
    pub source: Arc<ProjResolution>,
    pub target: Arc<ProjResolution>,
    /// `images[i][g]`: φ_i of the g-th generator of P_{shift+i}(X), in P_i(Y).
    pub images: Vec<Vec<SparseVec>>,
}

impl ChainMap {
    pub fn depth(&self) -> usize {
        self.images.len() - 1
    }

    /// φ_i applied to an element of P_{shift+i}(X).
    pub fn apply(&self, i: usize, x: &SparseVec) -> SparseVec {
        let src = self.source.term(self.shift + i);
        let tgt = self.target.term(i);
        src.apply_with(x, &self.images[i], |v, b| tgt.mul(v, b))
    }

    /// d_Y ∘ φ_{i+1} = φ_i ∘ d_X on every generator, and ε_Y ∘ φ_0 = `base` ∘ ... is
    /// the caller's business.
    pub fn commutes(&self) -> bool {
        (1..self.images.len()).all(|i| {
            self.images[i].iter().enumerate().all(|(g, img)| {
                let lhs = self.target.differential(i, img);
                let rhs = self.apply(i - 1, &self.source.images(self.shift + i)[g]);
                lhs == rhs
            })
        })
    }
}

/// Lifts a map P_shift(X) → Y (given by the images of generators in Y) to a
/// chain map between the resolutions, of the given depth.
pub fn lift_from_values(
    source: &Arc<ProjResolution>,
    target: &Arc<ProjResolution>,
    shift: usize,
    values: &[SparseVec],
    depth: usize,
) -> Result<ChainMap> {
    let mut images: Vec<Vec<SparseVec>> = Vec::with_capacity(depth + 1);
    let first: Vec<SparseVec> = values
        .iter()
        .map(|v| if v.is_empty() { Some(Vec::new()) } else { target.map(0).solve(v) })
        .collect::<Option<_>>()
        .ok_or(Error::LiftFailed(0))?;
    images.push(first);
    for i in 1..=depth {
        let src = source.term(shift + i - 1);
        let prev_tgt = target.term(i - 1);
        let prev = &images[i - 1];
        let next: Vec<SparseVec> = source
            .images(shift + i)
            .iter()
            .map(|d| {
                let rhs = src.apply_with(d, prev, |v, b| prev_tgt.mul(v, b));
                if rhs.is_empty() {
                    Some(Vec::new())
                } else {
                    target.map(i).solve(&rhs)
                }
            })
            .collect::<Option<_>>()
            .ok_or(Error::LiftFailed(i))?;
        images.push(next);
    }
    Ok(ChainMap { shift, source: source.clone(), target: target.clone(), images })
}

/// Comparison maps P_{n+i}(X) → P_i(Y) for i ≤ depth, lifting a class in Ext^n(X, Y).
pub fn lift_chain_map(e: &ExtElement, depth: usize) -> Result<ChainMap> {
    let n = e.degree();
    let source = min_proj_resolution(e.source(), n + depth + 1);
    let target = min_proj_resolution(e.target(), depth + 1);
    lift_from_values(&source, &target, n, &e.values(), depth)
}

/// Lift of a module map f: N₁ → N₂ to the resolutions.
pub fn lift_hom(f: &ModuleHom, depth: usize) -> Result<ChainMap> {
    let source = min_proj_resolution(f.source(), depth + 1);
    let target = min_proj_resolution(f.target(), depth + 1);
    let values: Vec<SparseVec> = source.images(0).iter().map(|v| f.apply(v)).collect();
    lift_from_values(&source, &target, 0, &values, depth)
}

/// Yoneda product b·a ∈ Ext^{m+n}(X, Z) of a ∈ Ext^n(X, Y) and b ∈ Ext^m(Y, Z).
pub fn yoneda(b: &ExtElement, a: &ExtElement) -> Result<ExtElement> {
    if !a.target().same_as(b.source()) {
        return Err(Error::Shape("Yoneda product of non-composable classes".into()));
    }
    let (m, n) = (b.degree(), a.degree());
    let phi = lift_chain_map(a, m)?;
    compose_cocycle(b, &phi, m + n)
}

/// Yoneda product with a precomputed lift of the right factor.
pub fn yoneda_with_lift(b: &ExtElement, phi: &ChainMap) -> Result<ExtElement> {
    compose_cocycle(b, phi, b.degree() + phi.shift)
}

fn compose_cocycle(b: &ExtElement, phi: &ChainMap, total: usize) -> Result<ExtElement> {
    let m = b.degree();
    if phi.depth() < m {
        return Err(Error::DegreeOverflow { degree: m, trunc: phi.depth() });
    }
    let space = ext_space(phi.source.module(), b.target(), total)?;
    let values: Vec<SparseVec> = phi.images[m].iter().map(|img| b.eval(img)).collect();
    let cocycle = space.cochains().from_values(&values, b.target());
    Ok(ExtElement::new_unchecked(&space, cocycle))
}

/// f_*(e) = f ∘ e for e ∈ Ext^n(M, N₁) and f: N₁ → N₂.
pub fn pushforward(f: &ModuleHom, e: &ExtElement) -> Result<ExtElement> {
    if !f.source().same_as(e.target()) {
        return Err(Error::Shape("pushforward along a map from a different module".into()));
    }
    let space = ext_space(e.source(), f.target(), e.degree())?;
    let values: Vec<SparseVec> = e.values().iter().map(|v| f.apply(v)).collect();
    Ok(ExtElement::new_unchecked(&space, space.cochains().from_values(&values, f.target())))
}

/// f^*(e) = e ∘ (lift of f) for e ∈ Ext^n(N₂, M) and f: N₁ → N₂.
pub fn pullback_map(f: &ModuleHom, e: &ExtElement) -> Result<ExtElement> {
    if !f.target().same_as(e.source()) {
        return Err(Error::Shape("pullback along a map into a different module".into()));
    }
    let n = e.degree();
    let psi = lift_hom(f, n)?;
    let space = ext_space(f.source(), e.target(), n)?;
    let values: Vec<SparseVec> = psi.images[n].iter().map(|img| e.eval(img)).collect();
    Ok(ExtElement::new_unchecked(&space, space.cochains().from_values(&values, e.target())))
}

/// The element of Ext^0(X, Y) = Hom(X, Y) given by a module map.
pub fn hom_class(f: &ModuleHom) -> Result<ExtElement> {
    let space = ext_space(f.source(), f.target(), 0)?;
    let res = space.resolution();
    let values: Vec<SparseVec> = res.images(0).iter().map(|v| f.apply(v)).collect();
    Ok(ExtElement::new_unchecked(&space, space.cochains().from_values(&values, f.target())))
}
