//! Automatic multigrading by arrow counts.
//!
//! Every basis vector of a representation gets a degree in Z^{arrows} such that
//! arrows raise degrees by their unit vector. Where the representation (or a
//! relation) is not homogeneous, the offending differences are collected and
//! the grading is coarsened by projecting onto their orthogonal complement.
//! Maps built from homogeneous data then split into blocks by degree.

use std::collections::VecDeque;

use num_integer::Integer;

use super::Module;
use crate::algebra::{Algebra, Path};
use crate::linalg::{Field, FieldElem, Matrix};

pub type Degree = Vec<i64>;

/// Block label: vertex followed by the projected degree.
pub type Key = Vec<i64>;

pub fn path_degree(alg: &Algebra, p: &Path) -> Degree {
    let mut d = vec![0; alg.arrow_count()];
    for &a in &p.arrows {
        d[a] += 1;
    }
    d
}

pub fn basis_degree(alg: &Algebra, b: usize) -> Degree {
    path_degree(alg, &alg.basis()[b])
}

/// Degree differences between terms of the same relation.
pub fn algebra_lattice(alg: &Algebra) -> Vec<Degree> {
    let mut out = Vec::new();
    for r in &alg.presentation().relations {
        let Some((_, first)) = r.terms.first() else { continue };
        let d0 = path_degree(alg, first);
        for (_, p) in &r.terms[1..] {
            let d = path_degree(alg, p);
            if d != d0 {
                out.push(d.iter().zip(&d0).map(|(a, b)| a - b).collect());
            }
        }
    }
    out
}

/// Degrees of the basis vectors of a module plus the inconsistencies found.
#[derive(Clone, Debug)]
pub struct ModuleDegrees {
    pub degrees: Vec<Degree>,
    pub lattice: Vec<Degree>,
}

pub fn module_degrees(m: &Module) -> ModuleDegrees {
    let alg = m.algebra();
    let q = alg.quiver();
    let n = m.dim();
    let na = q.arrow_count();
    // Adjacency: (neighbour, arrow, forward?).
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
    for (a, arrow) in q.arrows.iter().enumerate() {
        let mat = m.arrow_matrix(a);
        let (so, to) = (m.offset(arrow.source), m.offset(arrow.target));
        for r in 0..mat.rows() {
            for c in 0..mat.cols() {
                if !mat[(r, c)].is_zero() {
                    adj[so + c].push((to + r, a, true));
                    adj[to + r].push((so + c, a, false));
                }
            }
        }
    }
    let mut degrees: Vec<Option<Degree>> = vec![None; n];
    let mut lattice = Vec::new();
    for root in 0..n {
        if degrees[root].is_some() {
            continue;
        }
        degrees[root] = Some(vec![0; na]);
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = degrees[i].clone().expect("visited");
            for &(j, a, fwd) in &adj[i] {
                let mut dj = di.clone();
                dj[a] += if fwd { 1 } else { -1 };
                match &degrees[j] {
                    None => {
                        degrees[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(old) if *old != dj => {
                        lattice.push(old.iter().zip(&dj).map(|(x, y)| x - y).collect());
                    }
                    _ => {}
                }
            }
        }
    }
    ModuleDegrees { degrees: degrees.into_iter().map(|d| d.expect("all visited")).collect(), lattice }
}

/// Integer projection Z^{arrows} → Z^r whose kernel contains a given lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    rows: Vec<Vec<i64>>,
}

impl Projection {
    pub fn new(arrows: usize, lattice: &[Degree]) -> Self {
        let nonzero: Vec<&Degree> = lattice.iter().filter(|d| d.iter().any(|&x| x != 0)).collect();
        if nonzero.is_empty() {
            let rows = (0..arrows).map(|i| (0..arrows).map(|j| i64::from(i == j)).collect()).collect();
            return Projection { rows };
        }
        let f = Field::Rational;
        let m = Matrix::from_rows(
            f,
            nonzero.iter().map(|d| d.iter().map(|&x| f.from_i64(x)).collect()).collect(),
        )
        .expect("rectangular");
        let k = m.kernel_basis();
        let rows = (0..k.cols())
            .map(|c| {
                let col: Vec<FieldElem> = k.column(c);
                let lcm = col.iter().fold(1i64, |acc, x| {
                    let d = x.as_rational().expect("rational").denom();
                    acc.lcm(&i64::try_from(d).expect("small denominators"))
                });
                col.iter()
                    .map(|x| {
                        let r = x.as_rational().expect("rational");
                        let n = i64::try_from(r.numer()).expect("small numerators");
                        let d = i64::try_from(r.denom()).expect("small denominators");
                        n * (lcm / d)
                    })
                    .collect()
            })
            .collect();
        Projection { rows }
    }

    /// Projection for an algebra together with some modules over it.
    pub fn for_modules(alg: &Algebra, modules: &[&Module]) -> Self {
        let mut lattice = algebra_lattice(alg);
        for m in modules {
            lattice.extend(m.degree_data().lattice.iter().cloned());
        }
        Projection::new(alg.arrow_count(), &lattice)
    }

    /// A projection that forgets all degrees (blocks by vertex only).
    pub fn trivial() -> Self {
        Projection { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn project(&self, d: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().zip(d).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn key(&self, vertex: usize, d: &[i64]) -> Key {
        let mut k = Vec::with_capacity(self.rows.len() + 1);
        k.push(vertex as i64);
        k.extend(self.project(d));
        k
    }
}

pub fn add(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}
