use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::free::{FreeModule, Generator};
use crate::linalg::{BlockMap, Matrix, SparseVec};
use crate::module::constructions::dual_over;
use crate::module::grading::{Key, Projection};
use crate::module::{Module, ModuleHom};

/// A minimal projective resolution P_D → ⋯ → P_0 → M → 0, stored sparsely.
///
/// Each P_n is free on generators chosen among homogeneous kernel vectors,
/// so every differential is homogeneous for the arrow-count grading and the
/// linear algebra splits into small blocks.
#[derive(Debug)]
pub struct ProjResolution {
    module: Module,
    proj: Projection,
    module_keys: Vec<Key>,
    terms: Vec<FreeModule>,
    /// Images of the generators of P_n: in M for n = 0, in P_{n-1} otherwise.
    images: Vec<Vec<SparseVec>>,
    maps: Vec<Arc<BlockMap>>,
    /// Basis of ker d_n = Ω^{n+1} inside P_n.
    kernels: Vec<Vec<SparseVec>>,
    syzygies: Vec<OnceLock<Module>>,
}

impl ProjResolution {
    fn start(m: &Module) -> Self {
        let alg = m.algebra();
        let proj = Projection::for_modules(alg, &[m]);
        let degs = &m.degree_data().degrees;
        let module_keys = (0..m.dim()).map(|i| proj.key(m.vertex_of(i), &degs[i])).collect();
        ProjResolution {
            module: m.clone(),
            proj,
            module_keys,
            terms: Vec::new(),
            images: Vec::new(),
            maps: Vec::new(),
            kernels: Vec::new(),
            syzygies: Vec::new(),
        }
    }

    fn cloned(&self) -> Self {
        ProjResolution {
            module: self.module.clone(),
            proj: self.proj.clone(),
            module_keys: self.module_keys.clone(),
            terms: self.terms.clone(),
            images: self.images.clone(),
            maps: self.maps.clone(),
            kernels: self.kernels.clone(),
            syzygies: (0..self.syzygies.len()).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Minimal generators of the submodule spanned by `basis` (a graded basis
    /// of a submodule of `free`, or of M itself when `free` is None).
    fn minimal_generators(&self, basis: &[SparseVec], free: Option<&FreeModule>) -> Vec<usize> {
        let alg = self.module.algebra();
        let keys: Vec<Key> = match free {
            Some(f) => f.keys(&self.proj),
            None => self.module_keys.clone(),
        };
        let mut cols: Vec<SparseVec> = Vec::new();
        for k in basis {
            for a in 0..alg.arrow_count() {
                let e = alg.arrow_element(a);
                let v = match free {
                    Some(f) => f.mul(k, e),
                    None => self.module.act(k, e),
                };
                if !v.is_empty() {
                    cols.push(v);
                }
            }
        }
        let nrad = cols.len();
        cols.extend(basis.iter().cloned());
        let map = BlockMap::from_homogeneous_columns(self.module.field(), &keys, cols);
        map.pivot_columns().into_iter().filter(|&j| j >= nrad).map(|j| j - nrad).collect()
    }

    fn push_term(&mut self, basis: Vec<SparseVec>) {
        let n = self.terms.len();
        let field = self.module.field();
        let chosen = self.minimal_generators(&basis, self.terms.last());
        let mut gens = Vec::with_capacity(chosen.len());
        let mut images = Vec::with_capacity(chosen.len());
        for j in chosen {
            let v = &basis[j];
            let i = v[0].0;
            let (vertex, degree) = match self.terms.last() {
                Some(f) => (f.vertex_of(i), f.degree(i)),
                None => (self.module.vertex_of(i), self.module.degree_data().degrees[i].clone()),
            };
            gens.push(Generator { vertex, degree });
            images.push(v.clone());
        }
        let free = match self.terms.first() {
            Some(f0) => f0.sibling(gens),
            None => FreeModule::new(self.module.algebra(), gens),
        };
        let row_keys: Vec<Key> = match self.terms.last() {
            Some(prev) => prev.keys(&self.proj),
            None => self.module_keys.clone(),
        };
        let col_keys = free.keys(&self.proj);
        let columns: Vec<SparseVec> = (0..free.dim())
            .map(|c| {
                let (g, b) = free.split(c);
                match self.terms.last() {
                    Some(prev) => prev.mul(&images[g], b),
                    None => self.module.act(&images[g], b),
                }
            })
            .collect();
        let map = BlockMap::new(field, &row_keys, &col_keys, columns);
        let kernel = map.kernel();
        debug_assert_eq!(n, self.maps.len());
        self.terms.push(free);
        self.images.push(images);
        self.maps.push(Arc::new(map));
        self.kernels.push(kernel);
        self.syzygies.push(OnceLock::new());
    }

    fn extend_to(&mut self, d: usize) {
        if self.terms.is_empty() {
            let basis: Vec<SparseVec> = (0..self.module.dim()).map(|i| self.module.unit_vector(i)).collect();
            self.push_term(basis);
        }
        while self.terms.len() <= d {
            let basis = self.kernels.last().expect("at least one term").clone();
            self.push_term(basis);
        }
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    /// Highest computed degree D (terms P_0..P_D).
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn projection(&self) -> &Projection {
        &self.proj
    }

    pub fn term(&self, n: usize) -> &FreeModule {
        &self.terms[n]
    }

    /// Number of indecomposable summands of P_n.
    pub fn betti(&self, n: usize) -> usize {
        self.terms[n].rank()
    }

    pub fn term_dim(&self, n: usize) -> usize {
        self.terms[n].dim()
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.terms.iter().map(FreeModule::dim).collect()
    }

    pub fn bettis(&self) -> Vec<usize> {
        self.terms.iter().map(FreeModule::rank).collect()
    }

    /// Images of the generators of P_n under d_n (n = 0: the augmentation into M).
    pub fn images(&self, n: usize) -> &[SparseVec] {
        &self.images[n]
    }

    /// d_n as a block map (n = 0: P_0 → M).
    pub fn map(&self, n: usize) -> &Arc<BlockMap> {
        &self.maps[n]
    }

    /// d_n applied to an element of P_n.
    pub fn differential(&self, n: usize, x: &SparseVec) -> SparseVec {
        self.maps[n].apply(x)
    }

    /// Basis of Ω^{n+1} = ker d_n inside P_n, for n ≤ D.
    pub fn kernel_basis(&self, n: usize) -> &[SparseVec] {
        &self.kernels[n]
    }

    /// Ω^n(M) for 0 ≤ n ≤ D + 1, as a representation.
    pub fn syzygy_module(&self, n: usize) -> Module {
        if n == 0 {
            return self.module.clone();
        }
        self.syzygies[n - 1].get_or_init(|| self.subspace_module(n - 1)).clone()
    }

    /// The submodule ker d_n of P_n as a representation; basis vectors are
    /// grouped by vertex in kernel order.
    fn subspace_module(&self, n: usize) -> Module {
        let free = &self.terms[n];
        let alg = self.module.algebra();
        let field = self.module.field();
        let basis = &self.kernels[n];
        let nv = alg.vertex_count();
        let vertex: Vec<usize> = basis.iter().map(|k| free.vertex_of(k[0].0)).collect();
        let mut local = vec![0usize; basis.len()];
        let mut dims = vec![0usize; nv];
        for (i, &v) in vertex.iter().enumerate() {
            local[i] = dims[v];
            dims[v] += 1;
        }
        let keys = free.keys(&self.proj);
        let map = BlockMap::from_homogeneous_columns(field, &keys, basis.clone());
        let q = alg.quiver();
        let mut arrows: Vec<Matrix> =
            q.arrows.iter().map(|a| Matrix::zeros(field, dims[a.target], dims[a.source])).collect();
        for (a, arr) in q.arrows.iter().enumerate() {
            let e = alg.arrow_element(a);
            for (i, k) in basis.iter().enumerate() {
                if vertex[i] != arr.source {
                    continue;
                }
                let img = free.mul(k, e);
                let coeffs = map.solve(&img).expect("kernel is a submodule");
                for (j, c) in coeffs {
                    arrows[a][(local[j], local[i])] = c;
                }
            }
        }
        Module::new(alg.clone(), dims, arrows).expect("syzygy shapes")
    }

    /// The inclusion Ω^{n+1} → P_n together with the module form of P_n.
    pub fn syzygy_inclusion(&self, n: usize) -> (ModuleHom, Vec<usize>) {
        let om = self.syzygy_module(n + 1);
        let (p, perm) = self.terms[n].to_module();
        let field = self.module.field();
        let free = &self.terms[n];
        let nv = om.dims().len();
        let mut maps: Vec<Matrix> =
            (0..nv).map(|v| Matrix::zeros(field, p.dim_at(v), om.dim_at(v))).collect();
        let mut next = vec![0usize; nv];
        for k in &self.kernels[n] {
            let v = free.vertex_of(k[0].0);
            for (i, c) in k {
                maps[v][(perm[*i] - p.offset(v), next[v])] = c.clone();
            }
            next[v] += 1;
        }
        (ModuleHom::new_unchecked(&om, &p, maps).expect("inclusion shapes"), perm)
    }

    /// The augmentation P_0 → M as a module map, with the free-to-module permutation.
    pub fn augmentation(&self) -> (ModuleHom, Vec<usize>) {
        let (p, perm) = self.terms[0].to_module();
        let m = &self.module;
        let field = m.field();
        let nv = m.dims().len();
        let mut maps: Vec<Matrix> = (0..nv).map(|v| Matrix::zeros(field, m.dim_at(v), p.dim_at(v))).collect();
        for c in 0..self.terms[0].dim() {
            let v = self.terms[0].vertex_of(c);
            for (i, x) in self.maps[0].column(c) {
                maps[v][(i - m.offset(v), perm[c] - p.offset(v))] = x.clone();
            }
        }
        (ModuleHom::new_unchecked(&p, m, maps).expect("augmentation shapes"), perm)
    }

    /// d_n : P_n → P_{n-1} (n ≥ 1) as a module map.
    pub fn differential_hom(&self, n: usize) -> ModuleHom {
        let (src, ps) = self.terms[n].to_module();
        let (tgt, pt) = self.terms[n - 1].to_module();
        let field = self.module.field();
        let nv = src.dims().len();
        let mut maps: Vec<Matrix> =
            (0..nv).map(|v| Matrix::zeros(field, tgt.dim_at(v), src.dim_at(v))).collect();
        for c in 0..self.terms[n].dim() {
            let v = self.terms[n].vertex_of(c);
            for (i, x) in self.maps[n].column(c) {
                maps[v][(pt[*i] - tgt.offset(v), ps[c] - src.offset(v))] = x.clone();
            }
        }
        ModuleHom::new_unchecked(&src, &tgt, maps).expect("differential shapes")
    }
}

type Cache = Mutex<HashMap<u64, Vec<Arc<ProjResolution>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Minimal projective resolution to degree `d`, cached per module and
/// extended incrementally when a longer one is requested.
pub fn min_proj_resolution(m: &Module, d: usize) -> Arc<ProjResolution> {
    let key = m.fingerprint();
    let existing = {
        let guard = cache().lock().expect("cache lock");
        guard.get(&key).and_then(|v| v.iter().find(|r| r.module.same_as(m)).cloned())
    };
    if let Some(r) = &existing {
        if r.length() >= d {
            return r.clone();
        }
    }
    let mut res = match &existing {
        Some(r) => r.cloned(),
        None => ProjResolution::start(m),
    };
    res.extend_to(d);
    let res = Arc::new(res);
    let mut guard = cache().lock().expect("cache lock");
    let entry = guard.entry(key).or_default();
    match entry.iter_mut().find(|r| r.module.same_as(m)) {
        Some(slot) if slot.length() < res.length() => *slot = res.clone(),
        Some(slot) => return slot.clone(),
        None => entry.push(res.clone()),
    }
    res
}

/// Minimal injective resolution 0 → M → I⁰ → ⋯ → I^D, obtained by dualizing a
/// projective resolution of D(M) over the opposite algebra.
#[derive(Clone, Debug)]
pub struct InjResolution {
    module: Module,
    dual: Arc<ProjResolution>,
}

impl InjResolution {
    pub fn module(&self) -> &Module {
        &self.module
    }

    /// The projective resolution of D(M) over Λ^op this was built from.
    pub fn dual_resolution(&self) -> &Arc<ProjResolution> {
        &self.dual
    }

    pub fn length(&self) -> usize {
        self.dual.length()
    }

    pub fn term_dim(&self, n: usize) -> usize {
        self.dual.term_dim(n)
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.dual.term_dims()
    }

    /// Number of indecomposable injective summands of I^n.
    pub fn bass(&self, n: usize) -> usize {
        self.dual.betti(n)
    }

    /// Ω^{-n}(M) = D(Ω^n D(M)).
    pub fn cosyzygy_module(&self, n: usize) -> Module {
        dual_over(&self.dual.syzygy_module(n), self.module.algebra())
    }
}

pub fn min_inj_resolution(m: &Module, d: usize) -> InjResolution {
    let dm = crate::module::dual(m);
    InjResolution { module: m.clone(), dual: min_proj_resolution(&dm, d) }
}
