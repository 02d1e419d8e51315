use std::sync::Arc;

use super::lift::{pushforward, yoneda};
use super::space::{ext_space, ExtElement};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::blocks::{sparse_from_dense, sparse_to_dense};
use crate::linalg::{Matrix, SparseVec};
use crate::module::{is_isomorphic, tensor_homs, Iso, Module, ModuleHom};
use crate::resolution::min_proj_resolution;

const MAX_PERIOD: usize = 4;

fn preimage(f: &ModuleHom, global: &Matrix, y: &SparseVec) -> Option<SparseVec> {
    let rhs = sparse_to_dense(f.source().field(), y, f.target().dim());
    global.solve_vec(&rhs).ok().flatten().map(|x| sparse_from_dense(&x))
}

/// The class in Ext^n(M, N) of a map h: Ω^n M → N, where Ω^n M is the syzygy
/// module of the minimal resolution of M (n ≥ 1).
pub fn syzygy_class(m: &Module, n: usize, h: &ModuleHom) -> Result<ExtElement> {
    if n == 0 {
        return Err(Error::Input("syzygy classes start in degree 1".into()));
    }
    let res = min_proj_resolution(m, n + 1);
    let (inc, perm) = res.syzygy_inclusion(n - 1);
    if h.source().dims() != inc.source().dims() || !h.source().same_as(inc.source()) {
        return Err(Error::Shape("map must start at the syzygy module".into()));
    }
    let global = inc.global_matrix();
    let values = res
        .images(n)
        .iter()
        .map(|d| {
            let mut y: SparseVec = d.iter().map(|(i, c)| (perm[*i], c.clone())).collect();
            y.sort_by_key(|(i, _)| *i);
            preimage(&inc, &global, &y).map(|x| h.apply(&x))
        })
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::LiftFailed(n))?;
    let space = ext_space(m, h.target(), n)?;
    ExtElement::from_cocycle(&space, space.cochains().from_values(&values, h.target()))
}

/// The class in Ext^1(C, A) of a short exact sequence 0 → A → B → C → 0.
pub fn extension_class(inc: &ModuleHom, proj: &ModuleHom) -> Result<ExtElement> {
    let (a, b, c) = (inc.source(), inc.target(), proj.target());
    if !proj.source().same_as(b) {
        return Err(Error::Shape("maps are not composable".into()));
    }
    let exact = inc.then(proj)?.is_zero()
        && inc.is_injective()
        && proj.is_surjective()
        && a.dim() + c.dim() == b.dim();
    if !exact {
        return Err(Error::Input("sequence is not short exact".into()));
    }
    let res = min_proj_resolution(c, 2);
    let pg = proj.global_matrix();
    let ig = inc.global_matrix();
    let p0 = res.term(0);
    let lifts = res
        .images(0)
        .iter()
        .enumerate()
        .map(|(g, v)| {
            let vertex = p0.generators()[g].vertex;
            preimage(proj, &pg, v).map(|x| x.into_iter().filter(|(i, _)| b.vertex_of(*i) == vertex).collect())
        })
        .collect::<Option<Vec<SparseVec>>>()
        .ok_or(Error::LiftFailed(0))?;
    let values = res
        .images(1)
        .iter()
        .map(|d| {
            let y = p0.apply_with(d, &lifts, |v, e| b.act(v, e));
            preimage(inc, &ig, &y)
        })
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::LiftFailed(1))?;
    let space = ext_space(c, a, 1)?;
    ExtElement::from_cocycle(&space, space.cochains().from_values(&values, a))
}

/// If Ω^n M ≅ M, the class in Ext^n(M, M) of such an isomorphism.
pub fn period_class(m: &Module, n: usize) -> Result<Option<ExtElement>> {
    let res = min_proj_resolution(m, n + 1);
    let om = res.syzygy_module(n);
    match is_isomorphic(&om, m) {
        Iso::Isomorphic(h) => syzygy_class(m, n, &h).map(Some),
        _ => Ok(None),
    }
}

/// For M = X_1 ⊗ ··· ⊗ X_r over a tensor product of algebras with each X_i
/// periodic, the classes in Ext^{n_i}(M, M) obtained by tensoring the spliced
/// sequences 0 → Ω^{k+1} X_i → P_k → Ω^k X_i → 0 (k < n_i) with the other
/// factors, followed by an isomorphism Ω^{n_i} X_i ≅ X_i.
pub fn tensor_period_classes(alg: &Arc<Algebra>, factors: &[&Module]) -> Result<Vec<ExtElement>> {
    let mut out = Vec::with_capacity(factors.len());
    for (i, x) in factors.iter().enumerate() {
        let found = (1..=MAX_PERIOD).find_map(|n| {
            match is_isomorphic(&min_proj_resolution(x, n + 1).syzygy_module(n), x) {
                Iso::Isomorphic(h) => Some((n, h)),
                _ => None,
            }
        });
        let Some((period, h)) = found else {
            return Err(Error::Input(format!("factor {i} is not periodic with period ≤ {MAX_PERIOD}")));
        };
        let res = min_proj_resolution(x, period + 1);
        let mut class: Option<ExtElement> = None;
        for k in 0..period {
            let (inc, _) = res.syzygy_inclusion(k);
            let proj = if k == 0 {
                res.augmentation().0
            } else {
                corestrict(&res.differential_hom(k), &res.syzygy_inclusion(k - 1).0)?
            };
            let e =
                extension_class(&tensor_homs(alg, factors, i, &inc)?, &tensor_homs(alg, factors, i, &proj)?)?;
            class = Some(match class {
                None => e,
                Some(c) => yoneda(&e, &c)?,
            });
        }
        let class = class.expect("period is positive");
        out.push(pushforward(&tensor_homs(alg, factors, i, &h)?, &class)?);
    }
    Ok(out)
}

/// f: A → B factored through an injection ι: C → B, as a map A → C.
fn corestrict(f: &ModuleHom, inc: &ModuleHom) -> Result<ModuleHom> {
    let x = inc
        .global_matrix()
        .solve(&f.global_matrix())?
        .ok_or_else(|| Error::Shape("map does not factor through the submodule".into()))?;
    ModuleHom::from_global(f.source(), inc.source(), &x)
}
