use serde::Serialize;

use super::lift::{lift_chain_map, yoneda_with_lift};
use super::space::{ext_dims, ext_space, ExtElement};
use crate::error::Result;
use crate::linalg::{FieldElem, Matrix};
use crate::module::{hom_space, Module};
use crate::resolution::{complexity, estimate_gamma, min_proj_resolution, plexity, GrowthEstimate};

/// Vanishing of Ext^n(M, X) over the last degrees of a window.
#[derive(Clone, Debug, Serialize)]
pub struct PerpEvidence {
    pub degrees: Vec<usize>,
    pub dims: Vec<usize>,
    pub vanishes: bool,
    pub note: &'static str,
}

pub const TRUNCATION_NOTE: &str = "evidence at truncation";

/// Whether Ext^n(m, x) = 0 for the last `window` degrees n ≤ d.
pub fn perp_evidence(m: &Module, x: &Module, d: usize, window: usize) -> Result<PerpEvidence> {
    let window = window.min(d + 1);
    let degrees: Vec<usize> = (d + 1 - window..=d).collect();
    let dims = degrees.iter().map(|&n| ext_space(m, x, n).map(|s| s.dim())).collect::<Result<Vec<_>>>()?;
    let vanishes = dims.iter().all(|&k| k == 0);
    Ok(PerpEvidence { degrees, dims, vanishes, note: TRUNCATION_NOTE })
}

/// dim Ext^n(X, Y) recomputed as dim Hom(Ω^n X, Y) minus the dimension of the
/// maps that extend to P_{n-1}.
pub fn ext_dim_via_syzygy(x: &Module, y: &Module, n: usize) -> Result<usize> {
    if n == 0 {
        return Ok(hom_space(x, y)?.len());
    }
    let res = min_proj_resolution(x, n);
    let om = res.syzygy_module(n);
    let homs = hom_space(&om, y)?.len();
    let (inc, _) = res.syzygy_inclusion(n - 1);
    let from_p = hom_space(inc.target(), y)?;
    let restricted: Vec<Vec<FieldElem>> =
        from_p.iter().map(|h| inc.then(h).expect("composable").global_matrix().entries().to_vec()).collect();
    let rank = if restricted.is_empty() {
        0
    } else {
        Matrix::from_columns(x.field(), restricted[0].len(), &restricted).rank()
    };
    Ok(homs - rank)
}

/// cx(X, Y): γ of dim Ext^n(X, Y), n ≤ d.
pub fn pair_complexity(x: &Module, y: &Module, d: usize) -> Result<GrowthEstimate> {
    estimate_gamma(&ext_dims(x, y, d)?)
}

/// cx X, px Y and cx(X, Y) together with the check cx(X, Y) ≤ min(cx X, px Y).
#[derive(Clone, Debug, Serialize)]
pub struct ComplexityTable {
    pub cx_x: GrowthEstimate,
    pub px_y: GrowthEstimate,
    pub cx_pair: GrowthEstimate,
    /// `None` when some estimate is unstable.
    pub bound_holds: Option<bool>,
}

pub fn complexity_table(x: &Module, y: &Module, d: usize) -> Result<ComplexityTable> {
    let cx_x = complexity(x, d)?;
    let px_y = plexity(y, d)?;
    let cx_pair = pair_complexity(x, y, d)?;
    let bound_holds = match (cx_pair.gamma, cx_x.gamma, px_y.gamma) {
        (Some(p), Some(a), Some(b)) => Some(p <= a.min(b)),
        _ => None,
    };
    Ok(ComplexityTable { cx_x, px_y, cx_pair, bound_holds })
}

/// Basis of Ext^n(M, M) as elements.
pub fn ext_basis(m: &Module, n: usize) -> Result<Vec<ExtElement>> {
    let s = ext_space(m, m, n)?;
    Ok(s.basis_cocycles().iter().map(|c| ExtElement::new_unchecked(&s, c.clone())).collect())
}

/// Algebra generators of Ext*(M, M) in degrees 1..=dmax: in each degree, basis
/// elements not in the span of products of lower-degree generators.
pub fn ext_algebra_generators(m: &Module, dmax: usize) -> Result<Vec<ExtElement>> {
    let mut gens: Vec<ExtElement> = Vec::new();
    for d in 1..=dmax {
        let space = ext_space(m, m, d)?;
        let mut span: Vec<Vec<FieldElem>> = Vec::new();
        for g in &gens {
            let e = d - g.degree();
            if e == 0 {
                continue;
            }
            for b in ext_basis(m, e)? {
                let lift = lift_chain_map(&b, g.degree())?;
                span.push(yoneda_with_lift(g, &lift)?.coordinates());
            }
        }
        let f = m.field();
        let dim = space.dim();
        let mut cols = span;
        let nspan = cols.len();
        for i in 0..dim {
            let mut e = vec![f.zero(); dim];
            e[i] = f.one();
            cols.push(e);
        }
        if dim == 0 {
            continue;
        }
        let mat = Matrix::from_columns(f, dim, &cols);
        for p in mat.pivot_columns() {
            if p >= nspan {
                let mut coords = vec![f.zero(); dim];
                coords[p - nspan] = f.one();
                gens.push(ExtElement::from_coordinates(&space, &coords));
            }
        }
    }
    Ok(gens)
}

/// Truncated center of Ext*(M, M).
#[derive(Clone, Debug)]
pub struct CenterTruncated {
    pub truncation: usize,
    /// Central elements, per degree d ≤ D/2.
    pub degrees: Vec<Vec<ExtElement>>,
    /// Degrees of the Ext-algebra elements tested against (0 = all of End(M)).
    pub generator_degrees: Vec<usize>,
    pub note: &'static str,
}

impl CenterTruncated {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }
}

pub const DEFAULT_GENERATOR_DEGREE: usize = 4;

/// Elements η of degree d ≤ D/2 with η·g = g·η for every basis element g of
/// degree 0 and every algebra generator g of degree ≤ min(D_gen, D − d).
pub fn center_truncated(m: &Module, d: usize, dgen: usize) -> Result<CenterTruncated> {
    let mut tests: Vec<ExtElement> = ext_basis(m, 0)?;
    let gens = ext_algebra_generators(m, dgen.min(d))?;
    tests.extend(gens.iter().cloned());
    let mut degrees = Vec::new();
    for deg in 0..=d / 2 {
        let basis = ext_basis(m, deg)?;
        let f = m.field();
        let mut rows: Vec<Vec<FieldElem>> = Vec::new();
        let mut per_elem: Vec<Vec<FieldElem>> = vec![Vec::new(); basis.len()];
        for g in tests.iter().filter(|g| g.degree() + deg <= d) {
            let lift_g = lift_chain_map(g, deg)?;
            for (i, eta) in basis.iter().enumerate() {
                let lift_eta = lift_chain_map(eta, g.degree())?;
                let left = yoneda_with_lift(eta, &lift_g)?.coordinates();
                let right = yoneda_with_lift(g, &lift_eta)?.coordinates();
                per_elem[i].extend(left.iter().zip(&right).map(|(a, b)| a - b));
            }
        }
        if basis.is_empty() {
            degrees.push(Vec::new());
            continue;
        }
        let nrows = per_elem[0].len();
        for r in 0..nrows {
            rows.push(per_elem.iter().map(|c| c[r].clone()).collect());
        }
        let kernel = if rows.is_empty() {
            Matrix::identity(f, basis.len())
        } else {
            Matrix::from_rows(f, rows)?.kernel_basis()
        };
        let space = basis[0].space().clone();
        degrees.push(
            (0..kernel.cols()).map(|c| ExtElement::from_coordinates(&space, &kernel.column(c))).collect(),
        );
    }
    let mut generator_degrees: Vec<usize> = tests.iter().map(ExtElement::degree).collect();
    generator_degrees.dedup();
    Ok(CenterTruncated { truncation: d, degrees, generator_degrees, note: TRUNCATION_NOTE })
}
