use std::fmt;
use std::sync::{Arc, OnceLock};

use super::grading::{module_degrees, ModuleDegrees};
use crate::algebra::{Algebra, Path};
use crate::error::{Error, Result};
use crate::linalg::blocks::SparseAcc;
use crate::linalg::{Field, FieldElem, Matrix, SparseVec};

struct Inner {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    /// One matrix per arrow a, of shape dims[t(a)] × dims[s(a)].
    arrows: Vec<Matrix>,
    basis_action: OnceLock<Vec<Matrix>>,
    degrees: OnceLock<ModuleDegrees>,
}

/// A finite dimensional right module, given as a representation of the quiver.
///
/// Vectors of the module are written in global coordinates: the basis of the
/// space at vertex 0 comes first, then vertex 1, and so on.
#[derive(Clone)]
pub struct Module(Arc<Inner>);

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Module").field("dims", &self.0.dims).field("arrows", &self.0.arrows).finish()
    }
}

impl Module {
    /// Builds a representation; shapes are checked, relations are not (see [`Module::validate`]).
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() {
            return Err(Error::Shape(format!(
                "dimension vector has {} entries for {} vertices",
                dims.len(),
                q.vertex_count()
            )));
        }
        if arrows.len() != q.arrow_count() {
            return Err(Error::Shape(format!("{} matrices for {} arrows", arrows.len(), q.arrow_count())));
        }
        for (a, m) in q.arrows.iter().zip(&arrows) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::Shape(format!(
                    "arrow {} needs a {}×{} matrix, got {}×{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(m.field().to_string(), algebra.field().to_string()));
            }
        }
        let mut offsets = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for d in &dims {
            offsets.push(acc);
            acc += d;
        }
        Ok(Module(Arc::new(Inner {
            algebra,
            dims,
            offsets,
            arrows,
            basis_action: OnceLock::new(),
            degrees: OnceLock::new(),
        })))
    }

    /// Like [`Module::new`] but also checks the relations.
    pub fn new_validated(algebra: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Self> {
        let m = Module::new(algebra, dims, arrows)?;
        if let Err(v) = m.validate() {
            return Err(Error::InvalidModule(v.to_string()));
        }
        Ok(m)
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        let q = algebra.quiver();
        let field = algebra.field();
        let arrows = q.arrows.iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Module::new(algebra.clone(), vec![0; q.vertex_count()], arrows).expect("zero module")
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }

    pub fn field(&self) -> Field {
        self.0.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.0.dims[v]
    }

    pub fn dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn offset(&self, v: usize) -> usize {
        self.0.offsets[v]
    }

    /// Vertex of a global coordinate.
    pub fn vertex_of(&self, i: usize) -> usize {
        let mut v = 0;
        while v + 1 < self.0.offsets.len() && self.0.offsets[v + 1] <= i {
            v += 1;
        }
        v
    }

    pub fn arrow_matrix(&self, a: usize) -> &Matrix {
        &self.0.arrows[a]
    }

    pub fn arrow_matrices(&self) -> &[Matrix] {
        &self.0.arrows
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        self.algebra().same_as(other.algebra())
    }

    /// Matrix of a path: M_{a_k} ··· M_{a_1}.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let field = self.field();
        let mut m = Matrix::identity(field, self.0.dims[p.start]);
        for &a in &p.arrows {
            m = self.0.arrows[a].mul(&m).expect("composable path");
        }
        m
    }

    /// Action matrices of all algebra basis elements (dims[target] × dims[source]).
    pub fn basis_action(&self, b: usize) -> &Matrix {
        &self.0.basis_action.get_or_init(|| {
            let alg = &self.0.algebra;
            alg.basis().iter().map(|p| self.path_matrix(p)).collect()
        })[b]
    }

    /// Arrow-count degrees of the basis vectors (see [`super::grading`]).
    pub fn degree_data(&self) -> &ModuleDegrees {
        self.0.degrees.get_or_init(|| module_degrees(self))
    }

    /// `m · b` for a global vector `m` and algebra basis element `b`.
    pub fn act(&self, m: &SparseVec, b: usize) -> SparseVec {
        let alg = &self.0.algebra;
        let (s, t) = (alg.source(b), alg.target(b));
        let mat = self.basis_action(b);
        let (so, to) = (self.0.offsets[s], self.0.offsets[t]);
        let mut acc = SparseAcc::new();
        for (i, c) in m {
            if *i < so || *i >= so + self.0.dims[s] {
                continue;
            }
            let col = i - so;
            for r in 0..mat.rows() {
                let x = &mat[(r, col)];
                if !x.is_zero() {
                    acc.add(to + r, x * c);
                }
            }
        }
        acc.finish()
    }

    /// `m · λ` for an algebra element λ.
    pub fn act_elem(&self, m: &SparseVec, lambda: &SparseVec) -> SparseVec {
        let mut acc = SparseAcc::new();
        for (b, c) in lambda {
            acc.add_scaled(&self.act(m, *b), c);
        }
        acc.finish()
    }

    /// Checks every relation; reports the first one that does not vanish.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let alg = &self.0.algebra;
        let q = alg.quiver();
        for (idx, r) in alg.presentation().relations.iter().enumerate() {
            let Some((s, t)) = r.endpoints(q) else { continue };
            let mut sum = Matrix::zeros(self.field(), self.0.dims[t], self.0.dims[s]);
            for (c, p) in &r.terms {
                sum = sum.add(&self.path_matrix(p).scale(c)).expect("same shape");
            }
            if !sum.is_zero() {
                return Err(Violation { relation: idx, text: r.display(q) });
            }
        }
        Ok(())
    }

    /// Direct sum with the algebra's arrow matrices as block diagonals.
    pub fn direct_sum(parts: &[Module]) -> Result<Module> {
        let Some(first) = parts.first() else {
            return Err(Error::Input("direct sum of no modules".into()));
        };
        if parts.iter().any(|p| !p.same_algebra(first)) {
            return Err(Error::AlgebraMismatch);
        }
        let alg = first.algebra().clone();
        let nv = alg.vertex_count();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dim_at(v)).sum()).collect();
        let arrows = (0..alg.arrow_count())
            .map(|a| {
                let mut m = Matrix::zeros(alg.field(), 0, 0);
                for p in parts {
                    m = m.block_diag(p.arrow_matrix(a));
                }
                m
            })
            .collect();
        Module::new(alg, dims, arrows)
    }

    /// Global-coordinate matrix of the action of an arrow (dim × dim).
    pub fn global_arrow_matrix(&self, a: usize) -> Matrix {
        let q = self.0.algebra.quiver();
        let arrow = &q.arrows[a];
        let n = self.dim();
        let mut g = Matrix::zeros(self.field(), n, n);
        g.set_block(self.0.offsets[arrow.target], self.0.offsets[arrow.source], &self.0.arrows[a]);
        g
    }

    pub fn unit_vector(&self, i: usize) -> SparseVec {
        vec![(i, self.field().one())]
    }

    /// Exact content equality (same algebra, dimensions and matrices).
    pub fn same_as(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.same_algebra(other) && self.0.dims == other.0.dims && self.0.arrows == other.0.arrows)
    }

    /// Hash of the representation, used as a cache key.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.algebra.fingerprint().hash(&mut h);
        self.0.dims.hash(&mut h);
        for m in &self.0.arrows {
            m.entries().hash(&mut h);
        }
        h.finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: usize,
    pub text: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "relation {} ({}) does not vanish", self.relation, self.text)
    }
}

/// A homomorphism of representations: one matrix per vertex.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    source: Module,
    target: Module,
    maps: Vec<Matrix>,
}

impl ModuleHom {
    /// Builds and checks the intertwining equations.
    pub fn new(source: &Module, target: &Module, maps: Vec<Matrix>) -> Result<Self> {
        let h = ModuleHom::new_unchecked(source, target, maps)?;
        if !h.intertwines() {
            return Err(Error::Shape("maps do not commute with the arrow actions".into()));
        }
        Ok(h)
    }

    pub(crate) fn new_unchecked(source: &Module, target: &Module, maps: Vec<Matrix>) -> Result<Self> {
        if !source.same_algebra(target) {
            return Err(Error::AlgebraMismatch);
        }
        if maps.len() != source.dims().len() {
            return Err(Error::Shape("one matrix per vertex expected".into()));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.rows() != target.dim_at(v) || m.cols() != source.dim_at(v) {
                return Err(Error::Shape(format!("vertex {v}: wrong matrix shape")));
            }
        }
        Ok(ModuleHom { source: source.clone(), target: target.clone(), maps })
    }

    /// Builds a hom from its global block-diagonal matrix.
    pub fn from_global(source: &Module, target: &Module, g: &Matrix) -> Result<Self> {
        let maps = (0..source.dims().len())
            .map(|v| {
                let rows: Vec<usize> = (target.offset(v)..target.offset(v) + target.dim_at(v)).collect();
                let cols: Vec<usize> = (source.offset(v)..source.offset(v) + source.dim_at(v)).collect();
                g.submatrix(&rows, &cols)
            })
            .collect();
        ModuleHom::new_unchecked(source, target, maps)
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let f = source.field();
        let maps =
            (0..source.dims().len()).map(|v| Matrix::zeros(f, target.dim_at(v), source.dim_at(v))).collect();
        ModuleHom { source: source.clone(), target: target.clone(), maps }
    }

    pub fn identity(m: &Module) -> Self {
        let f = m.field();
        let maps = m.dims().iter().map(|&d| Matrix::identity(f, d)).collect();
        ModuleHom { source: m.clone(), target: m.clone(), maps }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn map_at(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn intertwines(&self) -> bool {
        let q = self.source.algebra().quiver();
        q.arrows.iter().enumerate().all(|(a, arr)| {
            let lhs = self.target.arrow_matrix(a).mul(&self.maps[arr.source]).expect("shape");
            let rhs = self.maps[arr.target].mul(self.source.arrow_matrix(a)).expect("shape");
            lhs == rhs
        })
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ModuleHom) -> Result<ModuleHom> {
        if self.target.dims() != g.source.dims() {
            return Err(Error::Shape("maps are not composable".into()));
        }
        let maps = self.maps.iter().zip(&g.maps).map(|(f, g)| g.mul(f)).collect::<Result<Vec<_>>>()?;
        ModuleHom::new_unchecked(&self.source, &g.target, maps)
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom> {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect::<Result<Vec<_>>>()?;
        ModuleHom::new_unchecked(&self.source, &self.target, maps)
    }

    pub fn scale(&self, c: &FieldElem) -> ModuleHom {
        ModuleHom {
            source: self.source.clone(),
            target: self.target.clone(),
            maps: self.maps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.rows() == m.cols() && m.is_invertible())
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(Matrix::rank).sum()
    }

    /// Block-diagonal matrix in global coordinates.
    pub fn global_matrix(&self) -> Matrix {
        let mut g = Matrix::zeros(self.source.field(), self.target.dim(), self.source.dim());
        for (v, m) in self.maps.iter().enumerate() {
            g.set_block(self.target.offset(v), self.source.offset(v), m);
        }
        g
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc = SparseAcc::new();
        for (i, c) in x {
            let v = self.source.vertex_of(*i);
            let col = i - self.source.offset(v);
            let m = &self.maps[v];
            let to = self.target.offset(v);
            for r in 0..m.rows() {
                let x = &m[(r, col)];
                if !x.is_zero() {
                    acc.add(to + r, x * c);
                }
            }
        }
        acc.finish()
    }
}
