use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::span::Span;
use crate::error::{Error, Result};
use crate::ext::{ext_space, hom_class, lift_chain_map, yoneda, yoneda_with_lift, ChainMap, ExtElement};
use crate::linalg::{Field, FieldElem, Matrix};
use crate::module::{Module, ModuleHom};

/// How a basis element of a graded ring is built from its generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Word {
    Unit,
    /// generator · (basis element `index` of degree `degree`)
    Product {
        generator: usize,
        degree: usize,
        index: usize,
    },
}

/// Per-degree bases of a graded ring, each basis element a word in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingShape {
    pub generator_degrees: Vec<usize>,
    pub truncation: usize,
    pub words: Vec<Vec<Word>>,
}

impl RingShape {
    pub fn dims(&self) -> Vec<usize> {
        self.words.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, d: usize) -> usize {
        self.words.get(d).map_or(0, Vec::len)
    }

    /// Monomial basis of k[r_1, ..., r_m] with |r_j| = `degrees[j]` > 0.
    pub fn polynomial(degrees: &[usize], truncation: usize) -> Result<RingShape> {
        if degrees.contains(&0) {
            return Err(Error::Input("polynomial generators need positive degree".into()));
        }
        let mut words: Vec<Vec<Word>> = vec![Vec::new(); truncation + 1];
        // Smallest generator index occurring in each monomial.
        let mut least: Vec<Vec<usize>> = vec![Vec::new(); truncation + 1];
        words[0].push(Word::Unit);
        least[0].push(usize::MAX);
        for d in 1..=truncation {
            for (j, &gd) in degrees.iter().enumerate() {
                if gd > d {
                    continue;
                }
                let e = d - gd;
                for i in 0..words[e].len() {
                    if least[e][i] >= j {
                        words[d].push(Word::Product { generator: j, degree: e, index: i });
                        least[d].push(j);
                    }
                }
            }
        }
        Ok(RingShape { generator_degrees: degrees.to_vec(), truncation, words })
    }
}

/// A graded subalgebra H of Ext*(M, M), truncated at degree D.
pub struct GradedSubalgebra {
    module: Module,
    generators: Vec<ExtElement>,
    shape: RingShape,
    basis: Vec<Vec<ExtElement>>,
    coords: Vec<Matrix>,
    lifts: Mutex<HashMap<(usize, usize), Arc<ChainMap>>>,
    table: Mutex<HashMap<(usize, usize, usize, usize), Vec<FieldElem>>>,
}

impl fmt::Debug for GradedSubalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSubalgebra")
            .field("generator_degrees", &self.shape.generator_degrees)
            .field("dims", &self.dims())
            .finish()
    }
}

impl GradedSubalgebra {
    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn field(&self) -> Field {
        self.module.field()
    }

    pub fn truncation(&self) -> usize {
        self.shape.truncation
    }

    pub fn generators(&self) -> &[ExtElement] {
        &self.generators
    }

    pub fn generator_degrees(&self) -> &[usize] {
        &self.shape.generator_degrees
    }

    pub fn shape(&self) -> &RingShape {
        &self.shape
    }

    pub fn basis(&self, d: usize) -> &[ExtElement] {
        self.basis.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, d: usize) -> usize {
        self.basis(d).len()
    }

    /// Hilbert function up to the truncation.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    /// H-coordinates of the unit, if M ≠ 0.
    pub fn unit(&self) -> Option<Vec<FieldElem>> {
        (self.dim(0) > 0 && self.shape.words[0][0] == Word::Unit).then(|| self.unit_vector(0, 0))
    }

    pub fn unit_vector(&self, d: usize, i: usize) -> Vec<FieldElem> {
        let f = self.field();
        let mut v = vec![f.zero(); self.dim(d)];
        v[i] = f.one();
        v
    }

    /// The element Σ c_i b_i of H_d.
    pub fn element(&self, d: usize, c: &[FieldElem]) -> Result<ExtElement> {
        let space = ext_space(&self.module, &self.module, d)?;
        let mut x = ExtElement::zero(&space);
        for (b, ci) in self.basis(d).iter().zip(c) {
            if !ci.is_zero() {
                x = x.add(&b.scale(ci))?;
            }
        }
        Ok(x)
    }

    /// Coordinates of an element of Ext^d(M, M) in the basis of H_d, if it lies in H_d.
    pub fn coordinates_of(&self, x: &ExtElement) -> Option<Vec<FieldElem>> {
        let d = x.degree();
        if d > self.truncation() {
            return None;
        }
        let f = self.field();
        let target = x.coordinates();
        if self.dim(d) == 0 {
            return target.iter().all(FieldElem::is_zero).then(Vec::new);
        }
        self.coords[d].solve_vec(&target).ok().flatten().map(|c| {
            debug_assert_eq!(c.len(), self.dim(d));
            c.into_iter().map(|v| if v.is_zero() { f.zero() } else { v }).collect()
        })
    }

    /// Chain map lifting basis element i of H_d, of at least the given depth.
    pub fn lift(&self, d: usize, i: usize, depth: usize) -> Result<Arc<ChainMap>> {
        {
            let guard = self.lifts.lock().expect("lift cache");
            if let Some(phi) = guard.get(&(d, i)) {
                if phi.depth() >= depth {
                    return Ok(phi.clone());
                }
            }
        }
        let phi = Arc::new(lift_chain_map(&self.basis[d][i], depth)?);
        self.lifts.lock().expect("lift cache").insert((d, i), phi.clone());
        Ok(phi)
    }

    /// b_i · b_j for basis elements of H_{d1} and H_{d2}, in H_{d1+d2}-coordinates.
    pub fn product(&self, d1: usize, i: usize, d2: usize, j: usize) -> Result<Vec<FieldElem>> {
        if d1 + d2 > self.truncation() {
            return Err(Error::DegreeOverflow { degree: d1 + d2, trunc: self.truncation() });
        }
        if let Some(v) = self.table.lock().expect("product table").get(&(d1, i, d2, j)) {
            return Ok(v.clone());
        }
        let phi = self.lift(d2, j, d1)?;
        let x = yoneda_with_lift(&self.basis[d1][i], &phi)?;
        let c = self.coordinates_of(&x).ok_or_else(|| Error::Shape("product left the subalgebra".into()))?;
        self.table.lock().expect("product table").insert((d1, i, d2, j), c.clone());
        Ok(c)
    }

    /// a · b for a ∈ H_{d1}, b ∈ H_{d2} in coordinates.
    pub fn multiply(&self, d1: usize, a: &[FieldElem], d2: usize, b: &[FieldElem]) -> Result<Vec<FieldElem>> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim(d1 + d2)];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x * y;
                for (o, p) in out.iter_mut().zip(self.product(d1, i, d2, j)?) {
                    *o += &(&c * &p);
                }
            }
        }
        Ok(out)
    }
}

/// The subalgebra of Ext*(M, M) generated by homogeneous elements, up to degree
/// `truncation`. Commutativity is checked on all pairs of generators whose
/// product lies within the truncation.
pub fn generate_subalgebra(m: &Module, gens: Vec<ExtElement>, truncation: usize) -> Result<GradedSubalgebra> {
    for g in &gens {
        if !g.source().same_as(m) || !g.target().same_as(m) {
            return Err(Error::Shape("generators must lie in Ext*(M, M)".into()));
        }
        if g.degree() > truncation {
            return Err(Error::DegreeOverflow { degree: g.degree(), trunc: truncation });
        }
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if gens[i].degree() + gens[j].degree() > truncation {
                continue;
            }
            if !yoneda(&gens[i], &gens[j])?.same_class(&yoneda(&gens[j], &gens[i])?) {
                return Err(Error::NotCommutative(i, j));
            }
        }
    }
    let field = m.field();
    let generator_degrees: Vec<usize> = gens.iter().map(ExtElement::degree).collect();
    let mut h = GradedSubalgebra {
        module: m.clone(),
        generators: gens,
        shape: RingShape { generator_degrees, truncation, words: Vec::new() },
        basis: Vec::new(),
        coords: Vec::new(),
        lifts: Mutex::new(HashMap::new()),
        table: Mutex::new(HashMap::new()),
    };
    for e in 0..=truncation {
        let space = ext_space(m, m, e)?;
        let mut span = Span::new(field, space.dim());
        let mut words: Vec<Word> = Vec::new();
        let mut elems: Vec<ExtElement> = Vec::new();
        let mut candidates: Vec<(Word, ExtElement)> = Vec::new();
        if e == 0 {
            candidates.push((Word::Unit, hom_class(&ModuleHom::identity(m))?));
        }
        for (j, g) in h.generators.iter().enumerate() {
            let gd = g.degree();
            if gd == 0 || gd > e {
                continue;
            }
            for i in 0..h.basis[e - gd].len() {
                let phi = h.lift(e - gd, i, gd)?;
                candidates.push((
                    Word::Product { generator: j, degree: e - gd, index: i },
                    yoneda_with_lift(g, &phi)?,
                ));
            }
        }
        for (w, x) in candidates {
            if span.insert(&x.coordinates()) {
                words.push(w);
                elems.push(x);
            }
        }
        // Closure under the degree-0 generators.
        let mut k = 0;
        while k < elems.len() {
            for (j, g) in h.generators.iter().enumerate() {
                if g.degree() != 0 {
                    continue;
                }
                let x = yoneda(g, &elems[k])?;
                if span.insert(&x.coordinates()) {
                    words.push(Word::Product { generator: j, degree: e, index: k });
                    elems.push(x);
                }
            }
            k += 1;
        }
        let cols: Vec<Vec<FieldElem>> = elems.iter().map(ExtElement::coordinates).collect();
        h.coords.push(Matrix::from_columns(field, space.dim(), &cols));
        h.shape.words.push(words);
        h.basis.push(elems);
    }
    Ok(h)
}

/// Evaluates every word of `shape` on the given generator images in Ext*(M, M).
pub fn evaluate_words(m: &Module, shape: &RingShape, gens: &[ExtElement]) -> Result<Vec<Vec<ExtElement>>> {
    let unit = hom_class(&ModuleHom::identity(m))?;
    let mut out: Vec<Vec<ExtElement>> = Vec::with_capacity(shape.words.len());
    let mut lifts: HashMap<(usize, usize), Arc<ChainMap>> = HashMap::new();
    for (d, words) in shape.words.iter().enumerate() {
        let mut row = Vec::with_capacity(words.len());
        for w in words {
            let x = match *w {
                Word::Unit => unit.clone(),
                Word::Product { generator, degree, index } => {
                    let g = &gens[generator];
                    let need = g.degree();
                    let phi = match lifts.get(&(degree, index)) {
                        Some(p) if p.depth() >= need => p.clone(),
                        _ => {
                            let maxg = gens.iter().map(ExtElement::degree).max().unwrap_or(0);
                            let p = Arc::new(lift_chain_map(
                                &out[degree][index],
                                maxg.min(shape.truncation - degree),
                            )?);
                            lifts.insert((degree, index), p.clone());
                            p
                        }
                    };
                    yoneda_with_lift(g, &phi)?
                }
            };
            debug_assert_eq!(x.degree(), d);
            row.push(x);
        }
        out.push(row);
    }
    Ok(out)
}
