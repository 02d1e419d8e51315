use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::presentation::Presentation;
use super::quiver::{Path, Quiver};
use crate::error::{Error, Result};
use crate::linalg::blocks::SparseAcc;
use crate::linalg::{Field, FieldElem, Matrix, SparseVec};

pub const DEFAULT_PATH_CAP: usize = 64;

/// A finite dimensional basic algebra kΛ = kQ/I with a basis of paths.
///
/// Products follow path concatenation: `basis[i] * basis[j]` is
/// "basis[i], then basis[j]".
#[derive(Debug, Serialize)]
pub struct Algebra {
    presentation: Presentation,
    basis: Vec<Path>,
    /// `mult[i][j]` expresses `basis[i] * basis[j]` in the basis.
    mult: Vec<Vec<SparseVec>>,
    vertex_basis: Vec<usize>,
    arrow_basis: Vec<usize>,
    loewy_length: usize,
    #[serde(skip)]
    fingerprint: u64,
    #[serde(skip)]
    opposite: OnceLock<Arc<Algebra>>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation && self.basis == other.basis && self.mult == other.mult
    }
}

impl Algebra {
    pub(crate) fn from_parts(
        presentation: Presentation,
        basis: Vec<Path>,
        mult: Vec<Vec<SparseVec>>,
    ) -> Self {
        let q = &presentation.quiver;
        let index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let vertex_basis = (0..q.vertex_count()).map(|v| index[&Path::trivial(v)]).collect();
        let arrow_basis = (0..q.arrow_count())
            .map(|a| index[&Path { start: q.arrows[a].source, arrows: vec![a] }])
            .collect();
        let loewy_length = basis.iter().map(Path::len).max().map_or(0, |m| m + 1);
        let mut h = std::collections::hash_map::DefaultHasher::new();
        presentation.field.hash(&mut h);
        q.vertices.hash(&mut h);
        for a in &q.arrows {
            (a.source, a.target).hash(&mut h);
        }
        basis.hash(&mut h);
        for row in &mult {
            for v in row {
                v.hash(&mut h);
            }
        }
        Algebra {
            presentation,
            basis,
            mult,
            vertex_basis,
            arrow_basis,
            loewy_length,
            fingerprint: h.finish(),
            opposite: OnceLock::new(),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn field(&self) -> Field {
        self.presentation.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_names(&self) -> Vec<String> {
        self.basis.iter().map(|p| p.display(self.quiver())).collect()
    }

    /// Radical degree (path length) of a basis element.
    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].len()
    }

    pub fn source(&self, i: usize) -> usize {
        self.basis[i].start
    }

    pub fn target(&self, i: usize) -> usize {
        self.basis[i].end(self.quiver())
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    pub fn multiply(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseAcc::new();
        for (i, a) in x {
            for (j, b) in y {
                acc.add_scaled(&self.mult[*i][*j], &(a * b));
            }
        }
        acc.finish()
    }

    pub fn vertex_idempotent(&self, v: usize) -> usize {
        self.vertex_basis[v]
    }

    pub fn arrow_element(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver().vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver().arrow_count()
    }

    /// Smallest L with rad^L = 0.
    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    /// Content hash used to recognise equal algebras built separately.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn same_as(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other) || (self.fingerprint == other.fingerprint && self == other)
    }

    /// Basis elements `b` with source `v`, i.e. a basis of e_v Λ.
    pub fn basis_from(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.source(i) == v).collect()
    }

    /// Opposite algebra: same basis with reversed paths, `c^op(i,j) = c(j,i)`.
    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let pres = self.presentation.opposite();
                let q = &pres.quiver;
                let basis = self
                    .basis
                    .iter()
                    .map(|p| {
                        let mut arrows = p.arrows.clone();
                        arrows.reverse();
                        let start = arrows.first().map_or(p.start, |&a| q.arrows[a].source);
                        Path { start, arrows }
                    })
                    .collect();
                let n = self.dim();
                let mult = (0..n).map(|i| (0..n).map(|j| self.mult[j][i].clone()).collect()).collect();
                Arc::new(Algebra::from_parts(pres, basis, mult))
            })
            .clone()
    }

    /// Checks `(b_i b_j) b_k = b_i (b_j b_k)` on all basis triples.
    pub fn check_associativity(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let left = &self.mult[i][j];
                for k in 0..n {
                    let l = self.multiply(left, &vec![(k, self.field().one())]);
                    let r = self.multiply(&vec![(i, self.field().one())], &self.mult[j][k]);
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Identity element as a basis vector.
    pub fn unit(&self) -> SparseVec {
        let mut v: SparseVec = self.vertex_basis.iter().map(|&b| (b, self.field().one())).collect();
        v.sort_unstable_by_key(|(i, _)| *i);
        v
    }

    /// Matrix of right multiplication by basis element `j`; column `i` is `b_i * b_j`.
    pub fn right_mult_matrix(&self, j: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for i in 0..n {
            for (k, c) in &self.mult[i][j] {
                m[(*k, i)] = c.clone();
            }
        }
        m
    }
}

/// Builds the algebra degreewise with the default path-length cap.
pub fn build_algebra(p: &Presentation) -> Result<Arc<Algebra>> {
    build_algebra_capped(p, DEFAULT_PATH_CAP)
}

/// Degree-`d` data: standard monomials and the reduction of every candidate
/// `s * a` (s standard of degree d-1) to standard monomials of degree d.
struct Level {
    standard: Vec<Path>,
    /// Keyed by (index of s in the previous level, arrow).
    reduce: HashMap<(usize, usize), SparseVec>,
}

pub fn build_algebra_capped(p: &Presentation, cap: usize) -> Result<Arc<Algebra>> {
    p.check_relations()?;
    let q = &p.quiver;
    let field = p.field;
    for r in &p.relations {
        if r.min_len() < 2 {
            return Err(Error::NotAdmissible {
                relation: r.display(q),
                reason: "every path must have length at least 2".into(),
            });
        }
        if r.min_len() != r.max_len() {
            return Err(Error::NotAdmissible {
                relation: r.display(q),
                reason: "terms must all have the same length".into(),
            });
        }
    }
    let mut levels: Vec<Level> =
        vec![Level { standard: (0..q.vertex_count()).map(Path::trivial).collect(), reduce: HashMap::new() }];
    let mut d = 1;
    loop {
        if levels[d - 1].standard.is_empty() {
            break;
        }
        if d > cap {
            return Err(Error::NotFiniteDimensional(cap));
        }
        let prev = &levels[d - 1];
        let mut cands: Vec<(usize, usize)> = Vec::new();
        for (si, s) in prev.standard.iter().enumerate() {
            for a in q.arrows_from(s.end(q)) {
                cands.push((si, a));
            }
        }
        let cand_index: HashMap<(usize, usize), usize> =
            cands.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        // Relation consequences s*r for standard s of degree d - len(r).
        let mut rows: Vec<Vec<FieldElem>> = Vec::new();
        for r in &p.relations {
            let len = r.min_len();
            if len > d {
                continue;
            }
            let (rs, _) = r.endpoints(q).expect("checked parallel");
            for s in &levels[d - len].standard {
                if s.end(q) != rs {
                    continue;
                }
                let mut row = vec![field.zero(); cands.len()];
                for (c, path) in &r.terms {
                    // Normal form of s, then the arrows of the path except the last.
                    let mut v: SparseVec = vec![(
                        levels[d - len].standard.iter().position(|x| x == s).expect("standard"),
                        c.clone(),
                    )];
                    for (k, &a) in path.arrows[..path.len() - 1].iter().enumerate() {
                        v = step(&levels[d - len + k + 1], &v, a, field);
                    }
                    let last = *path.arrows.last().expect("length >= 2");
                    for (si, x) in v {
                        let ci = cand_index[&(si, last)];
                        row[ci] += &x;
                    }
                }
                rows.push(row);
            }
        }
        let mut m = if rows.is_empty() {
            Matrix::zeros(field, 0, cands.len())
        } else {
            Matrix::from_rows(field, rows)?
        };
        let pivots = m.eliminate(cands.len());
        let free: Vec<usize> = (0..cands.len()).filter(|c| !pivots.contains(c)).collect();
        let free_pos: HashMap<usize, usize> = free.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut reduce = HashMap::new();
        for (ci, c) in cands.iter().enumerate() {
            let v: SparseVec = if let Some(&fi) = free_pos.get(&ci) {
                vec![(fi, field.one())]
            } else {
                let row = pivots.iter().position(|&p| p == ci).expect("pivot");
                free.iter()
                    .enumerate()
                    .filter(|(_, &fc)| !m[(row, fc)].is_zero())
                    .map(|(fi, &fc)| (fi, -&m[(row, fc)]))
                    .collect()
            };
            reduce.insert(*c, v);
        }
        let standard = free
            .iter()
            .map(|&ci| {
                let (si, a) = cands[ci];
                let mut path = prev.standard[si].clone();
                path.arrows.push(a);
                path
            })
            .collect();
        levels.push(Level { standard, reduce });
        d += 1;
    }

    // Flatten levels into one basis; offsets per degree.
    let mut offsets = Vec::new();
    let mut basis: Vec<Path> = Vec::new();
    for l in &levels {
        offsets.push(basis.len());
        basis.extend(l.standard.iter().cloned());
    }
    let n = basis.len();
    let top = levels.len() - 1;
    let mut mult = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        let di = basis[i].len();
        let li = i - offsets[di];
        for j in 0..n {
            let bj = &basis[j];
            if basis[i].end(q) != bj.start {
                continue;
            }
            if bj.is_trivial() {
                mult[i][j] = vec![(i, field.one())];
                continue;
            }
            if di + bj.len() > top {
                continue;
            }
            let mut v: SparseVec = vec![(li, field.one())];
            for (k, &a) in bj.arrows.iter().enumerate() {
                v = step(&levels[di + k + 1], &v, a, field);
            }
            let off = offsets[di + bj.len()];
            mult[i][j] = v.into_iter().map(|(x, c)| (x + off, c)).collect();
        }
    }
    Ok(Arc::new(Algebra::from_parts(p.clone(), basis, mult)))
}

/// Right multiplication by arrow `a`, from level `next - 1` into `next`.
fn step(next: &Level, v: &SparseVec, a: usize, _field: Field) -> SparseVec {
    let mut acc = SparseAcc::new();
    for (si, c) in v {
        if let Some(r) = next.reduce.get(&(*si, a)) {
            acc.add_scaled(r, c);
        }
    }
    acc.finish()
}
