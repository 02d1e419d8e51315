use std::sync::Arc;

use super::{Module, ModuleHom};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{FieldElem, Matrix};

/// Matrix of the map induced on subspaces: `sub_t · x = big · sub_s`.
fn restrict(sub_t: &Matrix, big: &Matrix, sub_s: &Matrix) -> Matrix {
    let rhs = big.mul(sub_s).expect("shapes");
    if sub_t.cols() == 0 || rhs.cols() == 0 {
        return Matrix::zeros(big.field(), sub_t.cols(), sub_s.cols());
    }
    sub_t.solve(&rhs).expect("shapes").expect("subspace is stable under the action")
}

/// Basis (as columns) of the column space, taken from pivot columns.
fn column_space(m: &Matrix) -> Matrix {
    let pivots = m.pivot_columns();
    m.submatrix(&(0..m.rows()).collect::<Vec<_>>(), &pivots)
}

/// Direct sum together with the canonical injections and projections.
pub fn direct_sum(parts: &[Module]) -> Result<(Module, Vec<ModuleHom>, Vec<ModuleHom>)> {
    let sum = Module::direct_sum(parts)?;
    let f = sum.field();
    let nv = sum.dims().len();
    let mut starts = vec![0usize; nv];
    let mut inj = Vec::new();
    let mut proj = Vec::new();
    for p in parts {
        let mut imaps = Vec::new();
        let mut pmaps = Vec::new();
        for v in 0..nv {
            let mut i = Matrix::zeros(f, sum.dim_at(v), p.dim_at(v));
            for k in 0..p.dim_at(v) {
                i[(starts[v] + k, k)] = f.one();
            }
            pmaps.push(i.transpose());
            imaps.push(i);
            starts[v] += p.dim_at(v);
        }
        inj.push(ModuleHom::new_unchecked(p, &sum, imaps)?);
        proj.push(ModuleHom::new_unchecked(&sum, p, pmaps)?);
    }
    Ok((sum, inj, proj))
}

/// Kernel of `f` with its inclusion.
pub fn kernel(f: &ModuleHom) -> (Module, ModuleHom) {
    let src = f.source();
    let alg = src.algebra();
    let subs: Vec<Matrix> = f.maps().iter().map(Matrix::kernel_basis).collect();
    let arrows = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| restrict(&subs[arr.target], src.arrow_matrix(a), &subs[arr.source]))
        .collect();
    let dims = subs.iter().map(Matrix::cols).collect();
    let k = Module::new(alg.clone(), dims, arrows).expect("kernel shapes");
    let inc = ModuleHom::new_unchecked(&k, src, subs).expect("inclusion");
    (k, inc)
}

/// Image of `f`, with the corestriction `source → image` and the inclusion `image → target`.
pub fn image(f: &ModuleHom) -> (Module, ModuleHom, ModuleHom) {
    let tgt = f.target();
    let alg = tgt.algebra();
    let subs: Vec<Matrix> = f.maps().iter().map(column_space).collect();
    let arrows = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| restrict(&subs[arr.target], tgt.arrow_matrix(a), &subs[arr.source]))
        .collect();
    let dims = subs.iter().map(Matrix::cols).collect();
    let im = Module::new(alg.clone(), dims, arrows).expect("image shapes");
    let epi_maps = subs
        .iter()
        .zip(f.maps())
        .map(|(s, m)| {
            if s.cols() == 0 {
                Matrix::zeros(m.field(), 0, m.cols())
            } else {
                s.solve(m).expect("shapes").expect("image")
            }
        })
        .collect();
    let epi = ModuleHom::new_unchecked(f.source(), &im, epi_maps).expect("corestriction");
    let inc = ModuleHom::new_unchecked(&im, tgt, subs).expect("inclusion");
    (im, epi, inc)
}

/// Cokernel of `f` with the projection from the target.
pub fn cokernel(f: &ModuleHom) -> (Module, ModuleHom) {
    let tgt = f.target();
    let alg = tgt.algebra();
    let field = tgt.field();
    // Quotient maps Q_v with Q_v f_v = 0, and sections S_v with Q_v S_v = 1.
    let quots: Vec<Matrix> = f.maps().iter().map(|m| m.transpose().kernel_basis().transpose()).collect();
    let sections: Vec<Matrix> = quots
        .iter()
        .map(|q| {
            if q.rows() == 0 {
                Matrix::zeros(field, q.cols(), 0)
            } else {
                q.solve(&Matrix::identity(field, q.rows())).expect("shapes").expect("surjective")
            }
        })
        .collect();
    let arrows = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            quots[arr.target]
                .mul(tgt.arrow_matrix(a))
                .and_then(|x| x.mul(&sections[arr.source]))
                .expect("shapes")
        })
        .collect();
    let dims = quots.iter().map(Matrix::rows).collect();
    let c = Module::new(alg.clone(), dims, arrows).expect("cokernel shapes");
    let proj = ModuleHom::new_unchecked(tgt, &c, quots).expect("projection");
    (c, proj)
}

/// Pushout of `f: A → B` and `g: A → C`: the cokernel of `(f, -g): A → B ⊕ C`,
/// returned with the maps `B → P` and `C → P`.
pub fn pushout(f: &ModuleHom, g: &ModuleHom) -> Result<(Module, ModuleHom, ModuleHom)> {
    if f.source().dims() != g.source().dims() || !f.source().same_algebra(g.source()) {
        return Err(Error::Shape("pushout needs maps with a common source".into()));
    }
    let (sum, inj, _) = direct_sum(&[f.target().clone(), g.target().clone()])?;
    let maps = f
        .maps()
        .iter()
        .zip(g.maps())
        .map(|(a, b)| a.vstack(&b.scale(&-a.field().one())))
        .collect::<Result<Vec<_>>>()?;
    let h = ModuleHom::new_unchecked(f.source(), &sum, maps)?;
    let (p, proj) = cokernel(&h);
    Ok((p, inj[0].then(&proj)?, inj[1].then(&proj)?))
}

/// Pullback of `f: B → D` and `g: C → D`: the kernel of `(f, -g): B ⊕ C → D`,
/// returned with the maps `Q → B` and `Q → C`.
pub fn pullback(f: &ModuleHom, g: &ModuleHom) -> Result<(Module, ModuleHom, ModuleHom)> {
    if f.target().dims() != g.target().dims() || !f.target().same_algebra(g.target()) {
        return Err(Error::Shape("pullback needs maps with a common target".into()));
    }
    let (sum, _, proj) = direct_sum(&[f.source().clone(), g.source().clone()])?;
    let maps = f
        .maps()
        .iter()
        .zip(g.maps())
        .map(|(a, b)| a.hstack(&b.scale(&-a.field().one())))
        .collect::<Result<Vec<_>>>()?;
    let h = ModuleHom::new_unchecked(&sum, f.target(), maps)?;
    let (q, inc) = kernel(&h);
    Ok((q.clone(), inc.then(&proj[0])?, inc.then(&proj[1])?))
}

/// k-dual D(M) = Hom_k(M, k), a module over the opposite algebra.
pub fn dual(m: &Module) -> Module {
    dual_over(m, &m.algebra().opposite())
}

/// Dual attached to a given copy of the opposite algebra.
pub fn dual_over(m: &Module, op: &Arc<Algebra>) -> Module {
    let arrows = m.arrow_matrices().iter().map(Matrix::transpose).collect();
    Module::new(op.clone(), m.dims().to_vec(), arrows).expect("dual shapes")
}

/// D(f): D(N) → D(M) for f: M → N.
pub fn dual_hom(f: &ModuleHom, ds: &Module, dt: &Module) -> ModuleHom {
    ModuleHom::new_unchecked(dt, ds, f.maps().iter().map(Matrix::transpose).collect()).expect("dual map")
}

/// rad M = M · rad Λ, with its inclusion.
pub fn radical(m: &Module) -> (Module, ModuleHom) {
    let alg = m.algebra();
    let q = alg.quiver();
    let field = m.field();
    let subs: Vec<Matrix> = (0..q.vertex_count())
        .map(|v| {
            let mut cols = Matrix::zeros(field, m.dim_at(v), 0);
            for (a, arr) in q.arrows.iter().enumerate() {
                if arr.target == v {
                    cols = cols.hstack(m.arrow_matrix(a)).expect("rows");
                }
            }
            column_space(&cols)
        })
        .collect();
    let arrows = q
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| restrict(&subs[arr.target], m.arrow_matrix(a), &subs[arr.source]))
        .collect();
    let dims = subs.iter().map(Matrix::cols).collect();
    let r = Module::new(alg.clone(), dims, arrows).expect("radical shapes");
    let inc = ModuleHom::new_unchecked(&r, m, subs).expect("inclusion");
    (r, inc)
}

/// top M = M / rad M, with the projection.
pub fn top(m: &Module) -> (Module, ModuleHom) {
    cokernel(&radical(m).1)
}

/// Local indices (at each vertex) of basis vectors spanning a complement of rad M.
pub fn top_basis_vectors(m: &Module) -> Vec<(usize, usize)> {
    let (_, inc) = radical(m);
    let mut out = Vec::new();
    for v in 0..m.dims().len() {
        let r = inc.map_at(v);
        let aug = r.hstack(&Matrix::identity(m.field(), m.dim_at(v))).expect("rows");
        for p in aug.pivot_columns() {
            if p >= r.cols() {
                out.push((v, p - r.cols()));
            }
        }
    }
    out
}

pub fn simple(alg: &Arc<Algebra>, v: usize) -> Module {
    let q = alg.quiver();
    let field = alg.field();
    let dims: Vec<usize> = (0..q.vertex_count()).map(|w| usize::from(w == v)).collect();
    let arrows = q.arrows.iter().map(|a| Matrix::zeros(field, dims[a.target], dims[a.source])).collect();
    Module::new(alg.clone(), dims, arrows).expect("simple")
}

/// One simple module per vertex.
pub fn simples(alg: &Arc<Algebra>) -> Vec<Module> {
    (0..alg.vertex_count()).map(|v| simple(alg, v)).collect()
}

/// Λ / rad Λ, the direct sum of all simples.
pub fn semisimple_quotient(alg: &Arc<Algebra>) -> Module {
    Module::direct_sum(&simples(alg)).expect("same algebra")
}

/// Basis elements of P(v) = e_v Λ at each vertex, in algebra-basis order.
pub fn projective_basis(alg: &Algebra, v: usize) -> Vec<Vec<usize>> {
    let mut at = vec![Vec::new(); alg.vertex_count()];
    for b in alg.basis_from(v) {
        at[alg.target(b)].push(b);
    }
    at
}

/// P(v) = e_v Λ; arrow a acts by right multiplication.
pub fn indecomposable_projective(alg: &Arc<Algebra>, v: usize) -> Module {
    let q = alg.quiver();
    let field = alg.field();
    let at = projective_basis(alg, v);
    let dims: Vec<usize> = at.iter().map(Vec::len).collect();
    let arrows = q
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let mut m = Matrix::zeros(field, dims[arr.target], dims[arr.source]);
            let ae = alg.arrow_element(a);
            for (c, &b) in at[arr.source].iter().enumerate() {
                for (k, x) in alg.product(b, ae) {
                    let r = at[arr.target].iter().position(|y| y == k).expect("path ends at target");
                    m[(r, c)] = x.clone();
                }
            }
            m
        })
        .collect();
    Module::new(alg.clone(), dims, arrows).expect("projective")
}

/// The regular module Λ = ⊕_v P(v).
pub fn regular_module(alg: &Arc<Algebra>) -> Module {
    let parts: Vec<Module> = (0..alg.vertex_count()).map(|v| indecomposable_projective(alg, v)).collect();
    Module::direct_sum(&parts).expect("same algebra")
}

/// I(v) = D(P^op(v)), the injective envelope of the simple at v.
pub fn indecomposable_injective(alg: &Arc<Algebra>, v: usize) -> Module {
    let op = alg.opposite();
    dual_over(&indecomposable_projective(&op, v), alg)
}

/// The map ⊕ P(v_i) → M sending the generator e_{v_i} of the i-th summand to
/// the vector `x_i` of M at vertex v_i (local coordinates).
pub fn map_from_projectives(m: &Module, gens: &[(usize, Vec<FieldElem>)]) -> (Module, ModuleHom) {
    let alg = m.algebra();
    let field = m.field();
    if gens.is_empty() {
        let z = Module::zero(alg);
        return (z.clone(), ModuleHom::zero(&z, m));
    }
    let parts: Vec<Module> = gens.iter().map(|(v, _)| indecomposable_projective(alg, *v)).collect();
    let p = Module::direct_sum(&parts).expect("same algebra");
    let nv = alg.vertex_count();
    let mut maps: Vec<Matrix> = (0..nv).map(|w| Matrix::zeros(field, m.dim_at(w), p.dim_at(w))).collect();
    let mut start = vec![0usize; nv];
    for (v, x) in gens {
        let at = projective_basis(alg, *v);
        for (w, elems) in at.iter().enumerate() {
            for (c, &b) in elems.iter().enumerate() {
                let act = m.basis_action(b);
                for r in 0..m.dim_at(w) {
                    let mut acc = field.zero();
                    for (j, xj) in x.iter().enumerate() {
                        if !xj.is_zero() {
                            acc += &(&act[(r, j)] * xj);
                        }
                    }
                    maps[w][(r, start[w] + c)] = acc;
                }
            }
            start[w] += elems.len();
        }
    }
    let h = ModuleHom::new_unchecked(&p, m, maps).expect("map from projectives");
    (p, h)
}

/// Projective cover P → M: one summand P(v) per top basis vector at v.
pub fn projective_cover(m: &Module) -> (Module, ModuleHom) {
    let field = m.field();
    let gens: Vec<(usize, Vec<FieldElem>)> = top_basis_vectors(m)
        .into_iter()
        .map(|(v, j)| {
            let mut x = vec![field.zero(); m.dim_at(v)];
            x[j] = field.one();
            (v, x)
        })
        .collect();
    map_from_projectives(m, &gens)
}

/// Tensor product of modules over the tensor product of their algebras
/// (as built by [`crate::algebra::tensor_all`] from the same factors).
pub fn tensor_modules(alg: &Arc<Algebra>, parts: &[&Module]) -> Result<Module> {
    let quivers: Vec<&crate::algebra::Quiver> = parts.iter().map(|m| m.algebra().quiver()).collect();
    let tuples = crate::algebra::vertex_tuples(&quivers);
    if tuples.len() != alg.vertex_count() {
        return Err(Error::Shape("tensor algebra does not match the factors".into()));
    }
    let field = alg.field();
    let dims: Vec<usize> =
        tuples.iter().map(|t| t.iter().zip(parts).map(|(&v, m)| m.dim_at(v)).product()).collect();
    let origins = crate::algebra::arrow_origins(&quivers);
    if origins.len() != alg.arrow_count() {
        return Err(Error::Shape("tensor algebra does not match the factors".into()));
    }
    let arrows = origins
        .iter()
        .map(|(i, a, t)| {
            let mut m = Matrix::identity(field, 1);
            for (j, part) in parts.iter().enumerate() {
                let f = if j == *i {
                    part.arrow_matrix(*a).clone()
                } else {
                    Matrix::identity(field, part.dim_at(t[j]))
                };
                m = m.kronecker(&f);
            }
            m
        })
        .collect();
    Module::new(alg.clone(), dims, arrows)
}

/// X_1 ⊗ ··· ⊗ f ⊗ ··· ⊗ X_r with f: X_i → Y in position i.
pub fn tensor_homs(alg: &Arc<Algebra>, factors: &[&Module], i: usize, f: &ModuleHom) -> Result<ModuleHom> {
    let mut src: Vec<&Module> = factors.to_vec();
    src[i] = f.source();
    let mut tgt: Vec<&Module> = factors.to_vec();
    tgt[i] = f.target();
    let source = tensor_modules(alg, &src)?;
    let target = tensor_modules(alg, &tgt)?;
    let quivers: Vec<&crate::algebra::Quiver> = factors.iter().map(|m| m.algebra().quiver()).collect();
    let field = alg.field();
    let maps = crate::algebra::vertex_tuples(&quivers)
        .iter()
        .map(|t| {
            let mut m = Matrix::identity(field, 1);
            for (j, part) in factors.iter().enumerate() {
                let g =
                    if j == i { f.map_at(t[j]).clone() } else { Matrix::identity(field, part.dim_at(t[j])) };
                m = m.kronecker(&g);
            }
            m
        })
        .collect();
    ModuleHom::new(&source, &target, maps)
}

/// Ω(M): kernel of the projective cover.
pub fn syzygy(m: &Module) -> Module {
    kernel(&projective_cover(m).1).0
}

/// Injective envelope M → I, obtained by dualizing a projective cover over Λ^op.
pub fn injective_envelope(m: &Module) -> (Module, ModuleHom) {
    let alg = m.algebra();
    let dm = dual(m);
    let (p, epi) = projective_cover(&dm);
    let i = dual_over(&p, alg);
    let mono = ModuleHom::new_unchecked(m, &i, epi.maps().iter().map(Matrix::transpose).collect())
        .expect("envelope");
    (i, mono)
}

/// Ω⁻¹(M): cokernel of the injective envelope.
pub fn cosyzygy(m: &Module) -> Module {
    cokernel(&injective_envelope(m).1).0
}
