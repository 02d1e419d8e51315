use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::span::Span;
use super::subalgebra::{GradedSubalgebra, RingShape, Word};
use crate::error::{Error, Result};
use crate::ext::{ext_space, lift_chain_map, yoneda_with_lift, ExtElement};
use crate::linalg::{BlockMap, Field, FieldElem, Matrix, SparseAcc, SparseVec};
use crate::module::grading::Key;
use crate::module::Module;
use crate::resolution::{estimate_gamma, GrowthEstimate};

pub const TRUNCATED_ANNIHILATOR: &str = "truncated annihilator ⊇ true annihilator's truncation";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Ext*(N, M), acted on by post-composition.
    Left,
    /// Ext*(M, N), acted on by pre-composition.
    Right,
}

/// A graded module over a graded ring with basis words, truncated at D.
/// Only the generators' actions are stored; basis elements act through their words.
pub struct GradedHModule {
    field: Field,
    side: Side,
    shape: RingShape,
    dims: Vec<usize>,
    keys: Vec<Vec<Key>>,
    /// `gen_actions[j][p]`: images of the degree-p basis under generator j.
    gen_actions: Vec<Vec<Vec<SparseVec>>>,
    cache: Mutex<HashMap<(usize, usize, usize), Arc<Vec<SparseVec>>>>,
}

impl std::fmt::Debug for GradedHModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedHModule").field("side", &self.side).field("dims", &self.dims).finish()
    }
}

/// Ext*(M, N) (right) or Ext*(N, M) (left) as a module over H.
pub fn ext_as_module(h: &GradedSubalgebra, n: &Module, side: Side) -> Result<GradedHModule> {
    ext_module_over(h.module(), h.generators(), h.shape().clone(), n, side)
}

/// Ext*(M, N) or Ext*(N, M) as a module over a graded ring whose generators
/// act through the given classes in Ext*(M, M). `shape` describes the ring.
pub fn ext_module_over(
    m: &Module,
    gens: &[ExtElement],
    shape: RingShape,
    n: &Module,
    side: Side,
) -> Result<GradedHModule> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let d = shape.truncation;
    let (x, y) = match side {
        Side::Right => (m, n),
        Side::Left => (n, m),
    };
    let spaces = (0..=d).map(|p| ext_space(x, y, p)).collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let keys: Vec<Vec<Key>> = spaces
        .iter()
        .map(|s| s.basis_cocycles().iter().map(|b| s.keys()[b[0].0].clone()).collect())
        .collect();
    let mut gen_actions: Vec<Vec<Vec<SparseVec>>> = vec![Vec::new(); gens.len()];
    let sparse = |e: &ExtElement| -> SparseVec { crate::linalg::blocks::sparse_from_dense(&e.coordinates()) };
    match side {
        Side::Right => {
            for (j, g) in gens.iter().enumerate() {
                let gd = g.degree();
                if gd > d {
                    continue;
                }
                let phi = lift_chain_map(g, d - gd)?;
                for space in &spaces[..=d - gd] {
                    let mut cols = Vec::with_capacity(space.dim());
                    for i in 0..space.dim() {
                        let e = basis_element(space, i);
                        cols.push(sparse(&yoneda_with_lift(&e, &phi)?));
                    }
                    gen_actions[j].push(cols);
                }
            }
        }
        Side::Left => {
            for (p, space) in spaces.iter().enumerate() {
                let need = gens.iter().map(ExtElement::degree).filter(|&gd| p + gd <= d).max();
                let Some(need) = need else { continue };
                let mut per_gen: Vec<Vec<SparseVec>> = vec![Vec::with_capacity(space.dim()); gens.len()];
                for i in 0..space.dim() {
                    let phi = lift_chain_map(&basis_element(space, i), need)?;
                    for (j, g) in gens.iter().enumerate() {
                        if p + g.degree() <= d {
                            per_gen[j].push(sparse(&yoneda_with_lift(g, &phi)?));
                        }
                    }
                }
                for (j, g) in gens.iter().enumerate() {
                    if p + g.degree() <= d {
                        gen_actions[j].push(std::mem::take(&mut per_gen[j]));
                    }
                }
            }
        }
    }
    Ok(GradedHModule {
        field: m.field(),
        side,
        shape,
        dims,
        keys,
        gen_actions,
        cache: Mutex::new(HashMap::new()),
    })
}

fn basis_element(space: &Arc<crate::ext::ExtSpace>, i: usize) -> ExtElement {
    let f = space.field();
    let mut c = vec![f.zero(); space.dim()];
    c[i] = f.one();
    ExtElement::from_coordinates(space, &c)
}

impl GradedHModule {
    /// A module given directly by generator action matrices:
    /// `gen_actions[j][p]` maps degree p to degree p + |g_j| for p + |g_j| ≤ D.
    pub fn from_actions(
        field: Field,
        side: Side,
        shape: RingShape,
        dims: Vec<usize>,
        gen_actions: Vec<Vec<Vec<SparseVec>>>,
    ) -> Result<Self> {
        let d = shape.truncation;
        if dims.len() != d + 1 || gen_actions.len() != shape.generator_degrees.len() {
            return Err(Error::Shape("action data does not match the ring".into()));
        }
        for (j, acts) in gen_actions.iter().enumerate() {
            let gd = shape.generator_degrees[j];
            let expected = if gd > d { 0 } else { d - gd + 1 };
            if acts.len() != expected {
                return Err(Error::Shape(format!("generator {j} needs {expected} action matrices")));
            }
            for (p, cols) in acts.iter().enumerate() {
                let ok = cols.len() == dims[p] && cols.iter().flatten().all(|(i, _)| *i < dims[p + gd]);
                if !ok {
                    return Err(Error::Shape(format!("generator {j} acts badly in degree {p}")));
                }
            }
        }
        let keys = dims.iter().map(|&n| vec![Vec::new(); n]).collect();
        Ok(GradedHModule { field, side, shape, dims, keys, gen_actions, cache: Mutex::new(HashMap::new()) })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn shape(&self) -> &RingShape {
        &self.shape
    }

    pub fn truncation(&self) -> usize {
        self.shape.truncation
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Images of the degree-p basis under generator j.
    pub fn generator_action(&self, j: usize, p: usize) -> Option<&[SparseVec]> {
        self.gen_actions.get(j)?.get(p).map(Vec::as_slice)
    }

    /// Images of the degree-p basis under basis element i of the ring in degree d.
    pub fn basis_action(&self, d: usize, i: usize, p: usize) -> Result<Arc<Vec<SparseVec>>> {
        if p + d > self.truncation() {
            return Err(Error::DegreeOverflow { degree: p + d, trunc: self.truncation() });
        }
        if let Some(a) = self.cache.lock().expect("action cache").get(&(d, i, p)) {
            return Ok(a.clone());
        }
        let a: Vec<SparseVec> = match self.shape.words[d][i] {
            Word::Unit => (0..self.dims[p]).map(|k| vec![(k, self.field.one())]).collect(),
            Word::Product { generator, degree, index } => {
                let gd = self.shape.generator_degrees[generator];
                match self.side {
                    // g·(b'·x) = (g·b')·x
                    Side::Left => {
                        let inner = self.basis_action(degree, index, p)?;
                        let g = &self.gen_actions[generator][p + degree];
                        inner.iter().map(|c| apply(g, c)).collect()
                    }
                    // x·(g·b') = (x·g)·b' in a commutative ring
                    Side::Right => {
                        let outer = self.basis_action(degree, index, p + gd)?;
                        let g = &self.gen_actions[generator][p];
                        g.iter().map(|c| apply(&outer, c)).collect()
                    }
                }
            }
        };
        let a = Arc::new(a);
        self.cache.lock().expect("action cache").insert((d, i, p), a.clone());
        Ok(a)
    }

    fn rank(&self, p: usize, cols: Vec<SparseVec>) -> usize {
        let keys = &self.keys[p];
        let homogeneous = cols.iter().all(|c| c.iter().all(|(i, _)| keys[*i] == keys[c[0].0]));
        if homogeneous {
            BlockMap::from_homogeneous_columns(self.field, keys, cols).rank()
        } else {
            BlockMap::from_homogeneous_columns(self.field, &vec![0u8; keys.len()], cols).rank()
        }
    }
}

fn apply(cols: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut acc = SparseAcc::new();
    for (k, c) in v {
        acc.add_scaled(&cols[*k], c);
    }
    acc.finish()
}

/// A graded ideal of a truncated graded ring, one subspace of R_d per degree,
/// in the basis coordinates of the ring.
#[derive(Clone, Debug)]
pub struct GradedIdeal {
    pub truncation: usize,
    /// Degrees ≤ `reliable` are exact under the stated evidence.
    pub reliable: usize,
    pub spaces: Vec<Span>,
    pub caveat: Option<&'static str>,
}

impl GradedIdeal {
    pub fn zero(field: Field, shape: &RingShape) -> Self {
        GradedIdeal {
            truncation: shape.truncation,
            reliable: shape.truncation,
            spaces: shape.dims().into_iter().map(|n| Span::new(field, n)).collect(),
            caveat: None,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Span::rank).collect()
    }

    /// dim (R/I)_d per degree.
    pub fn quotient_dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.ambient() - s.rank()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(|s| s.rank() == 0)
    }

    pub fn contains(&self, other: &GradedIdeal) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.contains_span(b))
    }

    pub fn contains_up_to(&self, other: &GradedIdeal, d: usize) -> bool {
        self.spaces.iter().zip(&other.spaces).take(d + 1).all(|(a, b)| a.contains_span(b))
    }

    pub fn intersect(&self, other: &GradedIdeal) -> GradedIdeal {
        GradedIdeal {
            truncation: self.truncation.min(other.truncation),
            reliable: self.reliable.min(other.reliable),
            spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.intersect(b)).collect(),
            caveat: self.caveat.or(other.caveat),
        }
    }

    /// Degreewise span of products I·J inside H.
    pub fn product(&self, other: &GradedIdeal, h: &GradedSubalgebra) -> Result<GradedIdeal> {
        let field = h.field();
        let d = self.truncation.min(other.truncation);
        let mut spaces: Vec<Span> = (0..=d).map(|e| Span::new(field, h.dim(e))).collect();
        for (a, sa) in self.spaces.iter().enumerate() {
            for (b, sb) in other.spaces.iter().enumerate() {
                if a + b > d {
                    continue;
                }
                for x in sa.basis() {
                    for y in sb.basis() {
                        let z = h.multiply(a, &x, b, &y)?;
                        spaces[a + b].insert(&z);
                    }
                }
            }
        }
        Ok(GradedIdeal {
            truncation: d,
            reliable: self.reliable.min(other.reliable),
            spaces,
            caveat: self.caveat.or(other.caveat),
        })
    }

    /// The ideal of H generated by homogeneous elements (degree, coordinates).
    pub fn generated_by(h: &GradedSubalgebra, elems: &[(usize, Vec<FieldElem>)]) -> Result<GradedIdeal> {
        let mut ideal = GradedIdeal::zero(h.field(), h.shape());
        let d = h.truncation();
        for (e, x) in elems {
            for a in 0..=d.saturating_sub(*e) {
                if *e + a > d {
                    break;
                }
                for i in 0..h.dim(a) {
                    let z = h.multiply(a, &h.unit_vector(a, i), *e, x)?;
                    ideal.spaces[a + e].insert(&z);
                }
            }
        }
        Ok(ideal)
    }
}

/// Ann of the module in the ring, degree by degree, using module degrees ≥ `from`.
/// The reliable range comes from the finite-generation evidence.
pub fn annihilator_from(hmod: &GradedHModule, from: usize) -> Result<GradedIdeal> {
    let field = hmod.field;
    let trunc = hmod.truncation();
    let mut spaces = Vec::with_capacity(trunc + 1);
    for d in 0..=trunc {
        let n = hmod.shape.dim(d);
        // Columns of `k` span the subspace of R_d killing what has been checked.
        let mut k = Matrix::identity(field, n);
        for p in from..=trunc - d {
            if k.cols() == 0 {
                break;
            }
            if hmod.dims[p] == 0 || hmod.dims[p + d] == 0 {
                continue;
            }
            let mut rows: HashMap<(usize, usize), Vec<FieldElem>> = HashMap::new();
            for i in 0..n {
                let a = hmod.basis_action(d, i, p)?;
                for (s, col) in a.iter().enumerate() {
                    for (r, v) in col {
                        rows.entry((s, *r)).or_insert_with(|| vec![field.zero(); n])[i] = v.clone();
                    }
                }
            }
            if rows.is_empty() {
                continue;
            }
            let mut rows: Vec<_> = rows.into_iter().collect();
            rows.sort_by_key(|(key, _)| *key);
            let c = Matrix::from_rows(field, rows.into_iter().map(|(_, r)| r).collect())?;
            let ck = c.mul(&k)?;
            let ker = ck.kernel_basis();
            k = k.mul(&ker)?;
        }
        spaces.push(Span::from_vectors(field, n, &k.columns()));
    }
    let fg = fg_evidence(hmod)?;
    let (reliable, caveat) = match fg.verdict {
        FgVerdict::GeneratedInDegrees(g) if from <= g => (trunc - g, Some(TRUNCATED_ANNIHILATOR)),
        _ => (trunc / 2, Some(TRUNCATED_ANNIHILATOR)),
    };
    Ok(GradedIdeal { truncation: trunc, reliable, spaces, caveat })
}

pub fn annihilator(hmod: &GradedHModule) -> Result<GradedIdeal> {
    annihilator_from(hmod, 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FgVerdict {
    GeneratedInDegrees(usize),
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct FgEvidence {
    /// Minimal generators needed in each degree.
    pub new_generators: Vec<usize>,
    pub window_start: usize,
    pub truncation: usize,
    pub verdict: FgVerdict,
}

/// Counts module generators degree by degree: basis vectors not in the image of
/// the positive-degree ring generators.
pub fn fg_evidence(hmod: &GradedHModule) -> Result<FgEvidence> {
    let trunc = hmod.truncation();
    let mut new_generators = Vec::with_capacity(trunc + 1);
    for p in 0..=trunc {
        let mut cols = Vec::new();
        for (j, &gd) in hmod.shape.generator_degrees.iter().enumerate() {
            if gd == 0 || gd > p {
                continue;
            }
            cols.extend(hmod.gen_actions[j][p - gd].iter().cloned());
        }
        let r = if cols.is_empty() { 0 } else { hmod.rank(p, cols) };
        new_generators.push(hmod.dims[p] - r);
    }
    let window_start = trunc + 1 - (trunc + 1).div_ceil(3);
    let verdict = if new_generators[window_start..].iter().all(|&n| n == 0) {
        let g = new_generators.iter().rposition(|&n| n > 0).unwrap_or(0);
        FgVerdict::GeneratedInDegrees(g)
    } else {
        FgVerdict::Inconclusive
    };
    Ok(FgEvidence { new_generators, window_start, truncation: trunc, verdict })
}

/// γ of a per-degree dimension sequence.
pub fn hilbert_gamma(dims: &[usize]) -> Result<GrowthEstimate> {
    estimate_gamma(dims)
}
