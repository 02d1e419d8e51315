use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{BlockMap, Field, FieldElem, SparseAcc, SparseVec};
use crate::module::grading::{self, Key, Projection};
use crate::module::{Module, ModuleHom};
use crate::resolution::{min_proj_resolution, FreeModule, ProjResolution};

/// Hom_Λ(P_n, Y) ≅ ⊕_g Y e_{v_g}, coordinates (g, j) with j local at v_g.
#[derive(Clone, Debug)]
pub struct Cochains {
    offsets: Vec<usize>,
    vertices: Vec<usize>,
    dim: usize,
}

impl Cochains {
    pub fn new(free: &FreeModule, y: &Module) -> Self {
        let mut offsets = Vec::with_capacity(free.rank());
        let mut vertices = Vec::with_capacity(free.rank());
        let mut dim = 0;
        for g in free.generators() {
            offsets.push(dim);
            vertices.push(g.vertex);
            dim += y.dim_at(g.vertex);
        }
        Cochains { offsets, vertices, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coord(&self, g: usize, j: usize) -> usize {
        self.offsets[g] + j
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        let g = self.offsets.partition_point(|&o| o <= i) - 1;
        (g, i - self.offsets[g])
    }

    /// Value f(e_g) of a cochain, as a global vector of Y.
    pub fn values(&self, f: &SparseVec, y: &Module) -> Vec<SparseVec> {
        let mut out = vec![Vec::new(); self.offsets.len()];
        for (i, c) in f {
            let (g, j) = self.split(*i);
            out[g].push((y.offset(self.vertices[g]) + j, c.clone()));
        }
        out
    }

    /// Cochain with prescribed values on generators (values must lie in Y e_{v_g}).
    pub fn from_values(&self, values: &[SparseVec], y: &Module) -> SparseVec {
        let mut acc = SparseAcc::new();
        for (g, v) in values.iter().enumerate() {
            let off = y.offset(self.vertices[g]);
            for (i, c) in v {
                debug_assert!(*i >= off && *i < off + y.dim_at(self.vertices[g]));
                acc.add(self.coord(g, i - off), c.clone());
            }
        }
        acc.finish()
    }
}

/// f ↦ f ∘ d_{n+1}: column (g, j) holds the cochain on P_{n+1} obtained from
/// the j-th basis vector of Y at v_g.
fn coboundary_columns(
    res: &ProjResolution,
    n: usize,
    y: &Module,
    src: &Cochains,
    tgt: &Cochains,
) -> Vec<SparseVec> {
    let free = res.term(n);
    let mut cols: Vec<SparseAcc> = (0..src.dim()).map(|_| SparseAcc::new()).collect();
    for (h, img) in res.images(n + 1).iter().enumerate() {
        for (i, c) in img {
            let (g, b) = free.split(*i);
            let act = y.basis_action(b);
            let vh = res.term(n + 1).generators()[h].vertex;
            for j in 0..act.cols() {
                for r in 0..act.rows() {
                    let x = &act[(r, j)];
                    if !x.is_zero() {
                        cols[src.coord(g, j)].add(tgt.coord(h, r), x * c);
                    }
                }
            }
            debug_assert_eq!(act.rows(), y.dim_at(vh));
        }
    }
    cols.into_iter().map(SparseAcc::finish).collect()
}

/// Ext^n_Λ(X, Y) as cocycles on the n-th term of the minimal resolution of X,
/// modulo coboundaries.
pub struct ExtSpace {
    x: Module,
    y: Module,
    n: usize,
    res: Arc<ProjResolution>,
    proj: Projection,
    cochains: Cochains,
    keys: Vec<Key>,
    basis: Vec<SparseVec>,
    /// Columns: independent coboundaries, then the basis.
    reducer: BlockMap,
    nb: usize,
}

impl fmt::Debug for ExtSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtSpace").field("degree", &self.n).field("dim", &self.basis.len()).finish()
    }
}

impl ExtSpace {
    fn compute(x: &Module, y: &Module, n: usize) -> Result<ExtSpace> {
        if !x.same_algebra(y) {
            return Err(Error::AlgebraMismatch);
        }
        let res = min_proj_resolution(x, n + 1);
        let alg = x.algebra();
        let field = x.field();
        let proj = Projection::for_modules(alg, &[x, y]);
        let ydeg = &y.degree_data().degrees;
        let keys_for = |free: &FreeModule, c: &Cochains| -> Vec<Key> {
            (0..c.dim())
                .map(|i| {
                    let (g, j) = c.split(i);
                    let gen = &free.generators()[g];
                    proj.key(0, &grading::sub(&ydeg[y.offset(gen.vertex) + j], &gen.degree))
                })
                .collect()
        };
        let cn = Cochains::new(res.term(n), y);
        let cn1 = Cochains::new(res.term(n + 1), y);
        let keys = keys_for(res.term(n), &cn);
        let keys1 = keys_for(res.term(n + 1), &cn1);
        let delta = BlockMap::new(field, &keys1, &keys, coboundary_columns(&res, n, y, &cn, &cn1));
        let cycles = delta.kernel();
        let boundaries: Vec<SparseVec> = if n == 0 {
            Vec::new()
        } else {
            let cp = Cochains::new(res.term(n - 1), y);
            coboundary_columns(&res, n - 1, y, &cp, &cn).into_iter().filter(|c| !c.is_empty()).collect()
        };
        let nbd = boundaries.len();
        let mut cols = boundaries;
        cols.extend(cycles.iter().cloned());
        let all = BlockMap::from_homogeneous_columns(field, &keys, cols.clone());
        let pivots = all.pivot_columns();
        let indep_b: Vec<SparseVec> = pivots.iter().filter(|&&j| j < nbd).map(|&j| cols[j].clone()).collect();
        let basis: Vec<SparseVec> = pivots.iter().filter(|&&j| j >= nbd).map(|&j| cols[j].clone()).collect();
        let nb = indep_b.len();
        let mut rcols = indep_b;
        rcols.extend(basis.iter().cloned());
        let reducer = BlockMap::from_homogeneous_columns(field, &keys, rcols);
        Ok(ExtSpace { x: x.clone(), y: y.clone(), n, res, proj, cochains: cn, keys, basis, reducer, nb })
    }

    pub fn source(&self) -> &Module {
        &self.x
    }

    pub fn target(&self) -> &Module {
        &self.y
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.x.field()
    }

    pub fn resolution(&self) -> &Arc<ProjResolution> {
        &self.res
    }

    pub fn cochains(&self) -> &Cochains {
        &self.cochains
    }

    pub fn projection(&self) -> &Projection {
        &self.proj
    }

    /// Block keys of the cochain coordinates.
    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn basis_cocycles(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Coordinates of a cocycle in the basis, or `NotACocycle`.
    pub fn coordinates(&self, cocycle: &SparseVec) -> Result<Vec<FieldElem>> {
        let sol = self.reducer.solve(cocycle).ok_or(Error::NotACocycle)?;
        let mut out = vec![self.field().zero(); self.basis.len()];
        for (j, c) in sol {
            if j >= self.nb {
                out[j - self.nb] = c;
            }
        }
        Ok(out)
    }

    /// Whether a cochain vanishes on im d_{n+1}.
    pub fn is_cocycle(&self, f: &SparseVec) -> bool {
        let values = self.cochains.values(f, &self.y);
        let free = self.res.term(self.n);
        self.res
            .images(self.n + 1)
            .iter()
            .all(|img| free.apply_with(img, &values, |v, b| self.y.act(v, b)).is_empty())
    }
}

/// A class in Ext^n(X, Y), stored as a cocycle P_n(X) → Y.
#[derive(Clone)]
pub struct ExtElement {
    space: Arc<ExtSpace>,
    cocycle: SparseVec,
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtElement")
            .field("degree", &self.space.n)
            .field("coords", &self.coordinates())
            .finish()
    }
}

impl ExtElement {
    /// Wraps a cochain after checking the cocycle condition.
    pub fn from_cocycle(space: &Arc<ExtSpace>, cocycle: SparseVec) -> Result<Self> {
        if !space.is_cocycle(&cocycle) {
            return Err(Error::NotACocycle);
        }
        Ok(ExtElement { space: space.clone(), cocycle })
    }

    pub(crate) fn new_unchecked(space: &Arc<ExtSpace>, cocycle: SparseVec) -> Self {
        ExtElement { space: space.clone(), cocycle }
    }

    pub fn zero(space: &Arc<ExtSpace>) -> Self {
        ExtElement { space: space.clone(), cocycle: Vec::new() }
    }

    pub fn from_coordinates(space: &Arc<ExtSpace>, coords: &[FieldElem]) -> Self {
        let mut acc = SparseAcc::new();
        for (b, c) in space.basis.iter().zip(coords) {
            if !c.is_zero() {
                acc.add_scaled(b, c);
            }
        }
        ExtElement { space: space.clone(), cocycle: acc.finish() }
    }

    pub fn space(&self) -> &Arc<ExtSpace> {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.space.n
    }

    pub fn source(&self) -> &Module {
        &self.space.x
    }

    pub fn target(&self) -> &Module {
        &self.space.y
    }

    pub fn cocycle(&self) -> &SparseVec {
        &self.cocycle
    }

    /// Values on the generators of P_n, as vectors of Y.
    pub fn values(&self) -> Vec<SparseVec> {
        self.space.cochains.values(&self.cocycle, &self.space.y)
    }

    /// Evaluates the cocycle on an element of P_n.
    pub fn eval(&self, x: &SparseVec) -> SparseVec {
        let y = &self.space.y;
        self.space.res.term(self.space.n).apply_with(x, &self.values(), |v, b| y.act(v, b))
    }

    pub fn coordinates(&self) -> Vec<FieldElem> {
        self.space.coordinates(&self.cocycle).expect("stored cocycles reduce")
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates().iter().all(FieldElem::is_zero)
    }

    /// Equality of classes (the difference is a coboundary).
    pub fn same_class(&self, other: &ExtElement) -> bool {
        Arc::ptr_eq(&self.space, &other.space) && self.coordinates() == other.coordinates()
    }

    pub fn add(&self, other: &ExtElement) -> Result<ExtElement> {
        if !Arc::ptr_eq(&self.space, &other.space) {
            return Err(Error::Shape("Ext elements live in different spaces".into()));
        }
        let mut acc = SparseAcc::new();
        acc.add_scaled(&self.cocycle, &self.space.field().one());
        acc.add_scaled(&other.cocycle, &self.space.field().one());
        Ok(ExtElement { space: self.space.clone(), cocycle: acc.finish() })
    }

    pub fn scale(&self, c: &FieldElem) -> ExtElement {
        let cocycle =
            if c.is_zero() { Vec::new() } else { self.cocycle.iter().map(|(i, x)| (*i, x * c)).collect() };
        ExtElement { space: self.space.clone(), cocycle }
    }

    /// The cocycle as a module map P_n → Y.
    pub fn cocycle_hom(&self) -> ModuleHom {
        let free = self.space.res.term(self.space.n);
        let (p, perm) = free.to_module();
        let y = &self.space.y;
        let field = y.field();
        let nv = y.dims().len();
        let values = self.values();
        let mut maps: Vec<crate::linalg::Matrix> =
            (0..nv).map(|v| crate::linalg::Matrix::zeros(field, y.dim_at(v), p.dim_at(v))).collect();
        for c in 0..free.dim() {
            let (g, b) = free.split(c);
            let v = free.vertex_of(c);
            for (i, x) in y.act(&values[g], b) {
                maps[v][(i - y.offset(v), perm[c] - p.offset(v))] = x;
            }
        }
        ModuleHom::new(&p, y, maps).expect("cocycles are module maps")
    }
}

type SpaceCache = Mutex<HashMap<(u64, u64, usize), Vec<Arc<ExtSpace>>>>;

fn cache() -> &'static SpaceCache {
    static CACHE: OnceLock<SpaceCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Ext^n(X, Y); cached per (X, Y, n).
pub fn ext_space(x: &Module, y: &Module, n: usize) -> Result<Arc<ExtSpace>> {
    let key = (x.fingerprint(), y.fingerprint(), n);
    {
        let guard = cache().lock().expect("cache lock");
        if let Some(s) = guard.get(&key).and_then(|v| v.iter().find(|s| s.x.same_as(x) && s.y.same_as(y))) {
            return Ok(s.clone());
        }
    }
    let s = Arc::new(ExtSpace::compute(x, y, n)?);
    let mut guard = cache().lock().expect("cache lock");
    let entry = guard.entry(key).or_default();
    if let Some(old) = entry.iter().find(|o| o.x.same_as(x) && o.y.same_as(y)) {
        return Ok(old.clone());
    }
    entry.push(s.clone());
    Ok(s)
}

/// dim Ext^n(X, Y) for n = 0..=d.
pub fn ext_dims(x: &Module, y: &Module, d: usize) -> Result<Vec<usize>> {
    (0..=d).map(|n| ext_space(x, y, n).map(|s| s.dim())).collect()
}
