use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hmodule::GradedIdeal;
use super::poly::{self, Poly};
use super::span::Span;
use super::subalgebra::GradedSubalgebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldElem, Matrix};

const RANDOM_SAMPLES: usize = 16;
const SWEEP_MAX_DIM: usize = 4;
const SWEEP_MAX_SIZE: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum LocalVerdict {
    Local,
    /// A nontrivial idempotent of H₀, in H₀-coordinates.
    NotLocal(Vec<FieldElem>),
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct H0Report {
    pub verdict: LocalVerdict,
    pub dim: usize,
    pub method: &'static str,
    #[serde(skip)]
    pub radical: Option<Span>,
}

/// Decides whether the commutative algebra H₀ is local.
pub fn check_h0_local(h: &GradedSubalgebra) -> Result<H0Report> {
    let n = h.dim(0);
    let field = h.field();
    let Some(unit) = h.unit() else {
        return Ok(H0Report { verdict: LocalVerdict::Undecided, dim: 0, method: "empty", radical: None });
    };
    let basis: Vec<Vec<FieldElem>> = (0..n).map(|i| h.unit_vector(0, i)).collect();
    let mut samples = basis.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x10ca1);
    for _ in 0..RANDOM_SAMPLES {
        samples.push((0..n).map(|_| random_scalar(field, &mut rng)).collect());
    }
    let mut split_all = true;
    let mut eigen = Vec::with_capacity(n);
    for (k, a) in samples.iter().enumerate() {
        let mu = min_poly(h, a, &unit)?;
        if let Some((f1, f2)) = poly::coprime_split(&mu) {
            let (_, s, _) = poly::ext_gcd(&f1, &f2);
            // e ≡ 0 mod f1 and e ≡ 1 mod f2
            let e = eval_at(h, &poly::mul(&s, &f1), a, &unit)?;
            if is_nontrivial_idempotent(h, &e, &unit)? {
                return Ok(H0Report {
                    verdict: LocalVerdict::NotLocal(e),
                    dim: n,
                    method: "minimal-polynomial",
                    radical: None,
                });
            }
        }
        if k < n {
            let sf = poly::squarefree_part(&mu);
            if poly::degree(&sf) == Some(1) {
                eigen.push(-&sf[0]);
            } else {
                split_all = false;
            }
        }
    }
    if split_all {
        let rad: Vec<Vec<FieldElem>> = basis
            .iter()
            .zip(&eigen)
            .map(|(b, l)| b.iter().zip(&unit).map(|(x, u)| x - &(l * u)).collect())
            .collect();
        return Ok(H0Report {
            verdict: LocalVerdict::Local,
            dim: n,
            method: "minimal-polynomial",
            radical: Some(Span::from_vectors(field, n, &rad)),
        });
    }
    if let Some(q) = field.order() {
        if n <= SWEEP_MAX_DIM && q.checked_pow(n as u32).is_some_and(|s| s <= SWEEP_MAX_SIZE) {
            return sweep(h, &unit, q);
        }
    }
    Ok(H0Report { verdict: LocalVerdict::Undecided, dim: n, method: "minimal-polynomial", radical: None })
}

fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> FieldElem {
    match field.order() {
        Some(q) => field.nth(rng.gen_range(0..q)),
        None => field.from_i64(rng.gen_range(-5..=5)),
    }
}

/// Every element of H₀ over a small finite field: idempotents and nilpotents.
fn sweep(h: &GradedSubalgebra, unit: &[FieldElem], q: u64) -> Result<H0Report> {
    let n = unit.len();
    let field = h.field();
    let mut rad = Span::new(field, n);
    for code in 0..q.pow(n as u32) {
        let mut c = code;
        let a: Vec<FieldElem> = (0..n)
            .map(|_| {
                let x = field.nth(c % q);
                c /= q;
                x
            })
            .collect();
        if is_nontrivial_idempotent(h, &a, unit)? {
            return Ok(H0Report {
                verdict: LocalVerdict::NotLocal(a),
                dim: n,
                method: "exhaustive",
                radical: None,
            });
        }
        let mut p = a.clone();
        for _ in 1..n {
            p = h.multiply(0, &p, 0, &a)?;
        }
        if p.iter().all(FieldElem::is_zero) {
            rad.insert(&a);
        }
    }
    Ok(H0Report { verdict: LocalVerdict::Local, dim: n, method: "exhaustive", radical: Some(rad) })
}

fn is_nontrivial_idempotent(h: &GradedSubalgebra, e: &[FieldElem], unit: &[FieldElem]) -> Result<bool> {
    if e.iter().all(FieldElem::is_zero) || e == unit {
        return Ok(false);
    }
    Ok(h.multiply(0, e, 0, e)? == e)
}

/// Minimal polynomial of a ∈ H₀ from the powers a^k·1.
fn min_poly(h: &GradedSubalgebra, a: &[FieldElem], unit: &[FieldElem]) -> Result<Poly> {
    let field = h.field();
    let n = unit.len();
    let mut powers = vec![unit.to_vec()];
    let mut span = Span::from_vectors(field, n, &powers);
    loop {
        let next = h.multiply(0, powers.last().expect("nonempty"), 0, a)?;
        if span.contains(&next) {
            let m = Matrix::from_columns(field, n, &powers);
            let c = m.solve_vec(&next)?.ok_or_else(|| Error::Shape("power lost from its span".into()))?;
            let mut p: Poly = c.iter().map(|x| -x).collect();
            p.push(field.one());
            return Ok(p);
        }
        span.insert(&next);
        powers.push(next);
    }
}

fn eval_at(h: &GradedSubalgebra, p: &Poly, a: &[FieldElem], unit: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let field = h.field();
    let mut acc = vec![field.zero(); unit.len()];
    for c in p.iter().rev() {
        acc = h.multiply(0, &acc, 0, a)?;
        for (x, u) in acc.iter_mut().zip(unit) {
            *x += &(c * u);
        }
    }
    Ok(acc)
}

/// m_gr(H) = rad H₀ ⊕ H₁ ⊕ H₂ ⊕ ···
#[derive(Clone, Debug)]
pub struct MaximalGradedIdeal {
    pub ideal: GradedIdeal,
    pub proper: bool,
}

pub fn maximal_graded_ideal(h: &GradedSubalgebra, report: &H0Report) -> Result<MaximalGradedIdeal> {
    let (LocalVerdict::Local, Some(rad)) = (&report.verdict, &report.radical) else {
        return Err(Error::Input("H₀ is not known to be local".into()));
    };
    let field = h.field();
    let mut spaces = vec![rad.clone()];
    for d in 1..=h.truncation() {
        let n = h.dim(d);
        spaces.push(Span::from_vectors(field, n, &(0..n).map(|i| h.unit_vector(d, i)).collect::<Vec<_>>()));
    }
    let proper = h.unit().is_some_and(|u| !rad.contains(&u));
    let ideal = GradedIdeal { truncation: h.truncation(), reliable: h.truncation(), spaces, caveat: None };
    Ok(MaximalGradedIdeal { ideal, proper })
}
