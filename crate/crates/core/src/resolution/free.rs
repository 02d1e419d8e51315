//! Finitely generated free (projective) modules ⊕_g e_{v_g}Λ in sparse coordinates.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::linalg::{FieldElem, SparseAcc, SparseVec};
use crate::module::constructions::indecomposable_projective;
use crate::module::grading::{self, basis_degree, Degree, Key, Projection};
use crate::module::Module;

/// A generator e_v of degree `degree` (arrow counts, up to the grading lattice).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub vertex: usize,
    pub degree: Degree,
}

/// Coordinates are pairs (generator g, algebra basis element b with source v_g),
/// generator-major, b in algebra-basis order.
#[derive(Clone, Debug)]
pub struct FreeModule {
    alg: Arc<Algebra>,
    gens: Vec<Generator>,
    offsets: Vec<usize>,
    dim: usize,
    /// `pos[b]`: position of basis element b among the basis elements with its source.
    pos: Arc<Vec<usize>>,
    from: Arc<Vec<Vec<usize>>>,
}

pub(crate) fn basis_positions(alg: &Algebra) -> (Vec<usize>, Vec<Vec<usize>>) {
    let from: Vec<Vec<usize>> = (0..alg.vertex_count()).map(|v| alg.basis_from(v)).collect();
    let mut pos = vec![0; alg.dim()];
    for list in &from {
        for (i, &b) in list.iter().enumerate() {
            pos[b] = i;
        }
    }
    (pos, from)
}

impl FreeModule {
    pub fn new(alg: &Arc<Algebra>, gens: Vec<Generator>) -> Self {
        let (pos, from) = basis_positions(alg);
        FreeModule::with_tables(alg, gens, Arc::new(pos), Arc::new(from))
    }

    pub(crate) fn with_tables(
        alg: &Arc<Algebra>,
        gens: Vec<Generator>,
        pos: Arc<Vec<usize>>,
        from: Arc<Vec<Vec<usize>>>,
    ) -> Self {
        let mut offsets = Vec::with_capacity(gens.len());
        let mut dim = 0;
        for g in &gens {
            offsets.push(dim);
            dim += from[g.vertex].len();
        }
        FreeModule { alg: alg.clone(), gens, offsets, dim, pos, from }
    }

    pub(crate) fn sibling(&self, gens: Vec<Generator>) -> Self {
        FreeModule::with_tables(&self.alg, gens, self.pos.clone(), self.from.clone())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coord(&self, g: usize, b: usize) -> usize {
        self.offsets[g] + self.pos[b]
    }

    /// Generator e_{v_g} itself.
    pub fn generator_vector(&self, g: usize) -> SparseVec {
        let e = self.alg.vertex_idempotent(self.gens[g].vertex);
        vec![(self.coord(g, e), self.alg.field().one())]
    }

    /// (generator, algebra basis element) of a coordinate.
    pub fn split(&self, i: usize) -> (usize, usize) {
        let g = self.offsets.partition_point(|&o| o <= i) - 1;
        (g, self.from[self.gens[g].vertex][i - self.offsets[g]])
    }

    pub fn vertex_of(&self, i: usize) -> usize {
        let (_, b) = self.split(i);
        self.alg.target(b)
    }

    pub fn degree(&self, i: usize) -> Degree {
        let (g, b) = self.split(i);
        grading::add(&self.gens[g].degree, &basis_degree(&self.alg, b))
    }

    pub fn key(&self, i: usize, proj: &Projection) -> Key {
        proj.key(self.vertex_of(i), &self.degree(i))
    }

    pub fn keys(&self, proj: &Projection) -> Vec<Key> {
        (0..self.dim).map(|i| self.key(i, proj)).collect()
    }

    /// `x · b` for a basis element b of Λ.
    pub fn mul(&self, x: &SparseVec, b: usize) -> SparseVec {
        let mut acc = SparseAcc::new();
        for (i, c) in x {
            let (g, bi) = self.split(*i);
            for (k, s) in self.alg.product(bi, b) {
                acc.add(self.coord(g, *k), c * s);
            }
        }
        acc.finish()
    }

    /// The image of `x = Σ c (g, b)` under the map sending generator g to `images[g]`,
    /// where images live in a module acted on by `act`.
    pub fn apply_with<F>(&self, x: &SparseVec, images: &[SparseVec], act: F) -> SparseVec
    where
        F: Fn(&SparseVec, usize) -> SparseVec,
    {
        let mut by_gen: Vec<Vec<(usize, &FieldElem)>> = vec![Vec::new(); self.gens.len()];
        for (i, c) in x {
            let (g, b) = self.split(*i);
            by_gen[g].push((b, c));
        }
        let mut acc = SparseAcc::new();
        for (g, terms) in by_gen.iter().enumerate() {
            if terms.is_empty() || images[g].is_empty() {
                continue;
            }
            for (b, c) in terms {
                acc.add_scaled(&act(&images[g], *b), c);
            }
        }
        acc.finish()
    }

    /// The free module as a representation, with the permutation sending each
    /// free coordinate to its global module coordinate.
    pub fn to_module(&self) -> (Module, Vec<usize>) {
        let nv = self.alg.vertex_count();
        if self.gens.is_empty() {
            return (Module::zero(&self.alg), Vec::new());
        }
        let parts: Vec<Module> =
            self.gens.iter().map(|g| indecomposable_projective(&self.alg, g.vertex)).collect();
        let m = Module::direct_sum(&parts).expect("same algebra");
        let mut next = vec![0usize; nv];
        let mut perm = vec![0usize; self.dim];
        for (g, gen) in self.gens.iter().enumerate() {
            for &b in &self.from[gen.vertex] {
                let w = self.alg.target(b);
                perm[self.coord(g, b)] = m.offset(w) + next[w];
                next[w] += 1;
            }
        }
        (m, perm)
    }

    /// Whether every coordinate of `x` is a radical element (no trivial-path part).
    pub fn in_radical(&self, x: &SparseVec) -> bool {
        x.iter().all(|(i, _)| self.alg.degree(self.split(*i).1) > 0)
    }
}
