use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::constructions::{indecomposable_injective, indecomposable_projective};
use super::grading::{self, Key, Projection};
use super::{Module, ModuleHom};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{BlockMap, Field, FieldElem, Matrix, SparseVec};

/// Unknown `(v, i, j)` stands for entry (i, j) of the map at vertex v.
fn unknowns(m: &Module, n: &Module) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for v in 0..m.dims().len() {
        for i in 0..n.dim_at(v) {
            for j in 0..m.dim_at(v) {
                out.push((v, i, j));
            }
        }
    }
    out
}

/// Basis of Hom_Λ(m, n), solving the intertwiner equations block by block
/// in the arrow-count grading.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModuleHom>> {
    hom_space_graded(m, n, true)
}

/// Same as [`hom_space`] without splitting by degree.
pub fn hom_space_direct(m: &Module, n: &Module) -> Result<Vec<ModuleHom>> {
    hom_space_graded(m, n, false)
}

fn hom_space_graded(m: &Module, n: &Module, graded: bool) -> Result<Vec<ModuleHom>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = m.algebra();
    let q = alg.quiver();
    let field = m.field();
    let proj = if graded { Projection::for_modules(alg, &[m, n]) } else { Projection::trivial() };
    let (dm, dn) = (&m.degree_data().degrees, &n.degree_data().degrees);
    let unk = unknowns(m, n);
    let mut index = std::collections::HashMap::new();
    for (k, u) in unk.iter().enumerate() {
        index.insert(*u, k);
    }
    let col_keys: Vec<Key> = unk
        .iter()
        .map(|&(v, i, j)| proj.key(0, &grading::sub(&dn[n.offset(v) + i], &dm[m.offset(v) + j])))
        .collect();
    // Equation rows (a, i in N_t, j in M_s): (N_a F_s - F_t M_a)[i][j] = 0.
    let mut row_keys: Vec<Key> = Vec::new();
    let mut row_index = std::collections::HashMap::new();
    for (a, arr) in q.arrows.iter().enumerate() {
        let mut e = vec![0i64; alg.arrow_count()];
        e[a] = 1;
        for i in 0..n.dim_at(arr.target) {
            for j in 0..m.dim_at(arr.source) {
                let d = grading::sub(
                    &grading::sub(&dn[n.offset(arr.target) + i], &dm[m.offset(arr.source) + j]),
                    &e,
                );
                row_index.insert((a, i, j), row_keys.len());
                row_keys.push(proj.key(0, &d));
            }
        }
    }
    let mut columns: Vec<SparseVec> = vec![Vec::new(); unk.len()];
    for (a, arr) in q.arrows.iter().enumerate() {
        let (na, ma) = (n.arrow_matrix(a), m.arrow_matrix(a));
        // + N_a[i][k] F_s[k][j]
        for i in 0..n.dim_at(arr.target) {
            for k in 0..n.dim_at(arr.source) {
                let c = &na[(i, k)];
                if c.is_zero() {
                    continue;
                }
                for j in 0..m.dim_at(arr.source) {
                    columns[index[&(arr.source, k, j)]].push((row_index[&(a, i, j)], c.clone()));
                }
            }
        }
        // - F_t[i][l] M_a[l][j]
        for l in 0..m.dim_at(arr.target) {
            for j in 0..m.dim_at(arr.source) {
                let c = &ma[(l, j)];
                if c.is_zero() {
                    continue;
                }
                for i in 0..n.dim_at(arr.target) {
                    columns[index[&(arr.target, i, l)]].push((row_index[&(a, i, j)], -c));
                }
            }
        }
    }
    let columns = columns
        .into_iter()
        .map(|c| {
            let mut acc = crate::linalg::SparseAcc::new();
            for (i, x) in c {
                acc.add(i, x);
            }
            acc.finish()
        })
        .collect();
    let map = BlockMap::new(field, &row_keys, &col_keys, columns);
    let mut out = Vec::new();
    for kv in map.kernel() {
        let mut maps: Vec<Matrix> =
            (0..m.dims().len()).map(|v| Matrix::zeros(field, n.dim_at(v), m.dim_at(v))).collect();
        for (k, x) in kv {
            let (v, i, j) = unk[k];
            maps[v][(i, j)] = x;
        }
        out.push(ModuleHom::new_unchecked(m, n, maps)?);
    }
    Ok(out)
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub enum Iso {
    Isomorphic(ModuleHom),
    NotIsomorphic,
    /// Small finite field and a hom space too large to sweep.
    Undecided,
}

impl Iso {
    pub fn is_iso(&self) -> bool {
        matches!(self, Iso::Isomorphic(_))
    }

    pub fn is_not_iso(&self) -> bool {
        matches!(self, Iso::NotIsomorphic)
    }

    pub fn label(&self) -> IsoLabel {
        match self {
            Iso::Isomorphic(_) => IsoLabel::Isomorphic,
            Iso::NotIsomorphic => IsoLabel::NotIsomorphic,
            Iso::Undecided => IsoLabel::Undecided,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsoLabel {
    Isomorphic,
    NotIsomorphic,
    Undecided,
}

const ISO_SEED: u64 = 0x150_7e57;
const RATIONAL_SAMPLES: usize = 32;
const PRIME_SAMPLES: usize = 64;
const SWEEP_MAX_DIM: usize = 6;
const SWEEP_BUDGET: u64 = 1 << 20;

fn combine(basis: &[ModuleHom], coeffs: &[FieldElem]) -> ModuleHom {
    let mut h = ModuleHom::zero(basis[0].source(), basis[0].target());
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            h = h.add(&b.scale(c)).expect("same shape");
        }
    }
    h
}

/// Decides M ≅ N by searching Hom(M, N) for an invertible element.
pub fn is_isomorphic(m: &Module, n: &Module) -> Iso {
    if !m.same_algebra(n) || m.dims() != n.dims() {
        return Iso::NotIsomorphic;
    }
    if m.is_zero() {
        return Iso::Isomorphic(ModuleHom::zero(m, n));
    }
    let Ok(basis) = hom_space(m, n) else { return Iso::NotIsomorphic };
    if basis.is_empty() {
        return Iso::NotIsomorphic;
    }
    // Hom(N, M) ≅ End(M) when M ≅ N: a cheap exact obstruction.
    match (hom_dim(m, m), hom_dim(n, m), hom_dim(n, n)) {
        (Ok(a), Ok(b), Ok(c)) if a != b || a != c || a != basis.len() => return Iso::NotIsomorphic,
        _ => {}
    }
    let field = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    match field {
        Field::Rational => {
            for _ in 0..RATIONAL_SAMPLES {
                let coeffs: Vec<FieldElem> =
                    basis.iter().map(|_| field.from_i64(rng.gen_range(-5..=5))).collect();
                let h = combine(&basis, &coeffs);
                if h.is_iso() {
                    return Iso::Isomorphic(h);
                }
            }
            Iso::NotIsomorphic
        }
        Field::Prime(p) => {
            for _ in 0..PRIME_SAMPLES {
                let coeffs: Vec<FieldElem> =
                    basis.iter().map(|_| field.nth(rng.gen_range(0..p as u64))).collect();
                let h = combine(&basis, &coeffs);
                if h.is_iso() {
                    return Iso::Isomorphic(h);
                }
            }
            let total = (p as u64).checked_pow(basis.len() as u32);
            match total {
                Some(t) if basis.len() <= SWEEP_MAX_DIM && t <= SWEEP_BUDGET => {
                    for idx in 0..t {
                        let mut rest = idx;
                        let coeffs: Vec<FieldElem> = (0..basis.len())
                            .map(|_| {
                                let c = field.nth(rest % p as u64);
                                rest /= p as u64;
                                c
                            })
                            .collect();
                        let h = combine(&basis, &coeffs);
                        if h.is_iso() {
                            return Iso::Isomorphic(h);
                        }
                    }
                    Iso::NotIsomorphic
                }
                _ => Iso::Undecided,
            }
        }
    }
}

/// Every indecomposable projective is isomorphic to some indecomposable injective.
pub fn is_selfinjective(alg: &Arc<Algebra>) -> bool {
    let injectives: Vec<Module> = (0..alg.vertex_count()).map(|v| indecomposable_injective(alg, v)).collect();
    (0..alg.vertex_count()).all(|v| {
        let p = indecomposable_projective(alg, v);
        injectives.iter().any(|i| is_isomorphic(&p, i).is_iso())
    })
}
