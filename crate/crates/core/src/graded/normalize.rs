use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hmodule::{hilbert_gamma, GradedIdeal};
use super::span::Span;
use super::subalgebra::{GradedSubalgebra, RingShape, Word};
use crate::error::{Error, Result};
use crate::ext::ExtElement;
use crate::linalg::{Field, FieldElem};

/// Parameters x_1, ..., x_c of a common degree generating a polynomial subring
/// over which H is finite.
#[derive(Clone, Debug, Serialize)]
pub struct Normalization {
    #[serde(skip)]
    pub parameters: Vec<ExtElement>,
    /// Coordinates of each parameter in the basis of H_degree.
    pub coordinates: Vec<Vec<FieldElem>>,
    pub degree: usize,
    pub count: usize,
    pub trial: usize,
    pub seed: u64,
    /// dim (H/(x))_d up to the truncation.
    pub quotient_dims: Vec<usize>,
}

/// Randomized Noether normalization at truncation.
pub fn noether_normalize(h: &GradedSubalgebra, trials: usize, seed: u64) -> Result<Normalization> {
    let field = h.field();
    let trunc = h.truncation();
    let gamma = hilbert_gamma(&h.dims())?;
    let c = gamma.gamma.ok_or(Error::NormalizationNotFound(0))?;
    if c == 0 {
        return Ok(Normalization {
            parameters: Vec::new(),
            coordinates: Vec::new(),
            degree: 0,
            count: 0,
            trial: 0,
            seed,
            quotient_dims: h.dims(),
        });
    }
    let positive: Vec<usize> = (0..h.generators().len()).filter(|&j| h.generator_degrees()[j] > 0).collect();
    let l = positive.iter().fold(1usize, |acc, &j| acc.lcm(&h.generator_degrees()[j]));
    if l > trunc {
        return Err(Error::DegreeOverflow { degree: l, trunc });
    }
    // Power basis: g^{L/|g|} for each positive-degree generator.
    let mut powers = Vec::with_capacity(positive.len());
    for &j in &positive {
        let gd = h.generator_degrees()[j];
        let g = generator_coordinates(h, j)?;
        let mut p = g.clone();
        for k in 1..l / gd {
            p = h.multiply(k * gd, &p, gd, &g)?;
        }
        powers.push(p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let xs: Vec<Vec<FieldElem>> = if trial == 0 && powers.len() == c {
            powers.clone()
        } else {
            (0..c)
                .map(|_| {
                    let mut x = vec![field.zero(); h.dim(l)];
                    for p in &powers {
                        let s = random_scalar(field, &mut rng);
                        for (xi, pi) in x.iter_mut().zip(p) {
                            *xi += &(&s * pi);
                        }
                    }
                    x
                })
                .collect()
        };
        if xs.iter().any(|x| x.iter().all(FieldElem::is_zero)) {
            continue;
        }
        let ideal = GradedIdeal::generated_by(h, &xs.iter().map(|x| (l, x.clone())).collect::<Vec<_>>())?;
        let quotient_dims = ideal.quotient_dims();
        let tail = ((trunc + 1).div_ceil(3)).max(l).min(trunc + 1);
        if quotient_dims[trunc + 1 - tail..].iter().any(|&q| q > 0) {
            continue;
        }
        if !monomials_independent(h, &xs, l)? {
            continue;
        }
        let parameters = xs.iter().map(|x| h.element(l, x)).collect::<Result<Vec<_>>>()?;
        return Ok(Normalization {
            parameters,
            coordinates: xs,
            degree: l,
            count: c,
            trial,
            seed,
            quotient_dims,
        });
    }
    Err(Error::NormalizationNotFound(trials))
}

fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> FieldElem {
    match field.order() {
        Some(q) => field.nth(rng.gen_range(0..q)),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

/// Coordinates of generator j in H.
pub fn generator_coordinates(h: &GradedSubalgebra, j: usize) -> Result<Vec<FieldElem>> {
    h.coordinates_of(&h.generators()[j]).ok_or_else(|| Error::Shape("generator outside H".into()))
}

/// No linear relation among the monomials in the x_i of degree ≤ D.
fn monomials_independent(h: &GradedSubalgebra, xs: &[Vec<FieldElem>], l: usize) -> Result<bool> {
    let shape = RingShape::polynomial(&vec![l; xs.len()], h.truncation())?;
    let mut values: Vec<Vec<Vec<FieldElem>>> = Vec::with_capacity(shape.words.len());
    for (d, words) in shape.words.iter().enumerate() {
        let mut row = Vec::with_capacity(words.len());
        let mut span = Span::new(h.field(), h.dim(d));
        for w in words {
            let v = match *w {
                Word::Unit => h.unit().ok_or_else(|| Error::Shape("H has no unit".into()))?,
                Word::Product { generator, degree, index } => {
                    h.multiply(l, &xs[generator], degree, &values[degree][index])?
                }
            };
            if !span.insert(&v) {
                return Ok(false);
            }
            row.push(v);
        }
        values.push(row);
    }
    Ok(true)
}
