//! Standard small algebras and modules, plus random module generators.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{build_algebra, parse_presentation_with, tensor_all, Algebra, ParseOptions};
use crate::linalg::{Field, FieldElem, Matrix};
use crate::module::constructions::{map_from_projectives, tensor_modules};
use crate::module::{cokernel, image, radical, regular_module, Module};

/// k⟨x,y⟩/(x², xy − q·yx, y²).
pub const QUANTUM_EXTERIOR: &str = "\
field Q
param q = 2;
vertex v;
arrow x: v -> v;
arrow y: v -> v;
relation x*x;
relation x*y - q*y*x;
relation y*y;
";

/// k[x,y]/(x², xy − yx, y²).
pub const COMMUTATIVE_SQUARE: &str = "\
vertex v;
arrow x: v -> v;
arrow y: v -> v;
relation x*x;
relation x*y - y*x;
relation y*y;
";

pub const DUAL_NUMBERS: &str = "vertex v;\narrow x: v -> v;\nrelation x*x;\n";

pub const A2: &str = "vertex v1, v2;\narrow a: v1 -> v2;\n";

pub const GROUND_FIELD: &str = "vertex pt;\n";

/// Parses and builds a presentation over the given field.
pub fn algebra(src: &str, field: Field) -> Arc<Algebra> {
    let opts = ParseOptions { field: Some(field), params: Vec::new() };
    build_algebra(&parse_presentation_with(src, &opts).expect("fixture parses")).expect("fixture builds")
}

pub fn quantum_exterior() -> Arc<Algebra> {
    algebra(QUANTUM_EXTERIOR, Field::Rational)
}

/// The quantum exterior algebra with the parameter q set to `q`.
pub fn quantum_exterior_with(field: Field, q: &str) -> Arc<Algebra> {
    let opts = ParseOptions { field: Some(field), params: vec![("q".into(), q.into())] };
    build_algebra(&parse_presentation_with(QUANTUM_EXTERIOR, &opts).expect("parses")).expect("builds")
}

/// The 2-dimensional module with basis u, v: xu = xv = 0, yu = v, yv = 0.
pub fn x_module(alg: &Arc<Algebra>) -> Module {
    let f = alg.field();
    let x = Matrix::zeros(f, 2, 2);
    let y = Matrix::from_i64(f, &[&[0, 0], &[1, 0]]);
    Module::new_validated(alg.clone(), vec![2], vec![x, y]).expect("X is a module")
}

/// Γ⊗Γ⊗Γ for the quantum exterior algebra Γ, with M = X⊗X⊗X.
pub fn tensor_cube() -> (Arc<Algebra>, Module) {
    let g = quantum_exterior();
    let x = x_module(&g);
    let cube = tensor_all(&[&g, &g, &g]).expect("same field");
    let m = tensor_modules(&cube, &[&x, &x, &x]).expect("matching factors");
    (cube, m)
}

pub fn random_elem<R: Rng>(field: Field, rng: &mut R) -> FieldElem {
    match field.order() {
        Some(p) => field.nth(rng.gen_range(0..p)),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

fn random_vector<R: Rng>(field: Field, n: usize, rng: &mut R) -> Vec<FieldElem> {
    (0..n).map(|_| random_elem(field, rng)).collect()
}

/// Random elements of `m`, one per entry of `vertices`, generating a submodule;
/// returns the map from the corresponding free module.
fn random_generators<R: Rng>(m: &Module, count: usize, rng: &mut R) -> Vec<(usize, Vec<FieldElem>)> {
    let nv = m.dims().len();
    (0..count)
        .filter_map(|_| {
            let v = rng.gen_range(0..nv);
            (m.dim_at(v) > 0).then(|| (v, random_vector(m.field(), m.dim_at(v), rng)))
        })
        .collect()
}

/// Quotient of a free module Λ^rank by the submodule generated by `relations`
/// random elements.
pub fn random_module<R: Rng>(alg: &Arc<Algebra>, rank: usize, relations: usize, rng: &mut R) -> Module {
    let parts: Vec<Module> = (0..rank.max(1)).map(|_| regular_module(alg)).collect();
    let free = Module::direct_sum(&parts).expect("same algebra");
    let gens = random_generators(&free, relations, rng);
    let (_, h) = map_from_projectives(&free, &gens);
    cokernel(&h).0
}

/// Random submodule of `m` generated by `count` random elements, with its inclusion.
pub fn random_submodule<R: Rng>(m: &Module, count: usize, rng: &mut R) -> (Module, crate::module::ModuleHom) {
    let gens = random_generators(m, count, rng);
    let (_, h) = map_from_projectives(m, &gens);
    let (im, _, inc) = image(&h);
    (im, inc)
}

/// Like [`random_module`], but the relations lie in the radical of the free
/// module, so the quotient keeps the free module's top and is rarely projective.
pub fn random_radical_module<R: Rng>(
    alg: &Arc<Algebra>,
    rank: usize,
    relations: usize,
    rng: &mut R,
) -> Module {
    let parts: Vec<Module> = (0..rank.max(1)).map(|_| regular_module(alg)).collect();
    let free = Module::direct_sum(&parts).expect("same algebra");
    let (rad, rad_inc) = radical(&free);
    let (_, inc) = random_submodule(&rad, relations, rng);
    cokernel(&inc.then(&rad_inc).expect("composable")).0
}
