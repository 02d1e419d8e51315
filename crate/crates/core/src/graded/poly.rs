//! Univariate polynomials over the base field, coefficients low to high.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::linalg::{Field, FieldElem};

pub type Poly = Vec<FieldElem>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(FieldElem::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &Poly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn monic(p: &Poly) -> Poly {
    let p = trim(p.clone());
    match p.last().and_then(FieldElem::inv) {
        Some(inv) => p.iter().map(|c| c * &inv).collect(),
        None => p,
    }
}

pub fn x_minus(field: Field, r: &FieldElem) -> Poly {
    vec![-r, field.one()]
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let zero = a.first().or(b.first()).map(|c| c.field().zero());
    let Some(zero) = zero else { return Vec::new() };
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect())
}

pub fn scale(a: &Poly, c: &FieldElem) -> Poly {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn sub(a: &Poly, b: &Poly) -> Poly {
    add(a, &b.iter().map(|c| -c).collect())
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let zero = a[0].field().zero();
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let b = trim(b.clone());
    let db = degree(&b).expect("division by zero polynomial");
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let mut r = trim(a.clone());
    let field = b[0].field();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[dr - db + j] -= &t;
        }
        q[dr - db] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &Poly, b: &Poly) -> Poly {
    divrem(a, b).1
}

/// Monic greatest common divisor.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// (g, s, t) with s·a + t·b = g monic.
pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let field = a.first().or(b.first()).map(FieldElem::field).unwrap_or(Field::Rational);
    let (mut r0, mut r1) = (trim(a.clone()), trim(b.clone()));
    let (mut s0, mut s1) = (vec![field.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![field.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    let inv = r0.last().and_then(FieldElem::inv).unwrap_or_else(|| field.one());
    (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
}

pub fn derivative(p: &Poly) -> Poly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * &c.field().from_i64(i as i64)).collect())
}

/// Product of the distinct irreducible factors of p (monic).
pub fn squarefree_part(p: &Poly) -> Poly {
    let p = monic(p);
    if degree(&p).unwrap_or(0) == 0 {
        return p;
    }
    let field = p[0].field();
    let dp = derivative(&p);
    if dp.is_empty() {
        // p(x) = g(x^c) with c the characteristic; over GF(c) this is g(x)^c.
        let c = field.characteristic() as usize;
        let g: Poly = p.iter().step_by(c).cloned().collect();
        return squarefree_part(&g);
    }
    let g = gcd(&p, &dp);
    let (q, _) = divrem(&p, &g);
    let q = monic(&q);
    // In positive characteristic q can still miss factors whose multiplicity
    // is divisible by the characteristic; they live in g.
    let rest = divrem(&g, &gcd(&g, &power(&q, degree(&g).unwrap_or(0)))).0;
    if degree(&rest).unwrap_or(0) == 0 {
        q
    } else {
        monic(&mul(&q, &squarefree_part(&rest)))
    }
}

fn power(p: &Poly, e: usize) -> Poly {
    let field = p.first().map(FieldElem::field).unwrap_or(Field::Rational);
    (0..e).fold(vec![field.one()], |acc, _| mul(&acc, p))
}

/// x^e mod m by repeated squaring.
pub fn x_pow_mod(field: Field, e: u64, m: &Poly) -> Poly {
    let mut result = rem(&vec![field.one()], m);
    let mut base = rem(&vec![field.zero(), field.one()], m);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &base), m);
        }
        base = rem(&mul(&base, &base), m);
        e >>= 1;
    }
    result
}

pub fn eval(p: &Poly, x: &FieldElem) -> FieldElem {
    p.iter().rev().fold(x.field().zero(), |acc, c| acc * x + c)
}

const DIVISOR_LIMIT: u64 = 1_000_000;

/// Roots of `p` in the base field: all of them over GF(p) of moderate size,
/// rational roots with small numerators and denominators over Q. `None` when
/// the search is out of range.
pub fn roots(p: &Poly) -> Option<Vec<FieldElem>> {
    let p = monic(p);
    let d = degree(&p)?;
    if d == 0 {
        return Some(Vec::new());
    }
    let field = p[0].field();
    match field {
        Field::Prime(q) => {
            if q as u64 > DIVISOR_LIMIT {
                return None;
            }
            Some((0..q as u64).map(|i| field.nth(i)).filter(|r| eval(&p, r).is_zero()).collect())
        }
        Field::Rational => {
            // Clear denominators: integer polynomial with the same roots.
            let mut lcm = BigInt::from(1);
            for c in &p {
                let r = c.as_rational().expect("rational field").to_big();
                lcm = lcm.lcm(r.denom());
            }
            let ints: Vec<BigInt> = p
                .iter()
                .map(|c| {
                    let r = c.as_rational().expect("rational field").to_big();
                    r.numer() * (&lcm / r.denom())
                })
                .collect();
            let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
            let mut out = Vec::new();
            if low > 0 {
                out.push(field.zero());
            }
            let a0 = ints[low].abs().to_u64()?;
            let an = ints[d].abs().to_u64()?;
            if a0 > DIVISOR_LIMIT || an > DIVISOR_LIMIT {
                return None;
            }
            for num in divisors(a0) {
                for den in divisors(an) {
                    for sign in [1i64, -1] {
                        let r = FieldElem::Rat(crate::linalg::Rational::new(sign * num as i64, den as i64));
                        if eval(&p, &r).is_zero() && !out.contains(&r) {
                            out.push(r);
                        }
                    }
                }
            }
            Some(out)
        }
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// A splitting p = a·b into coprime factors of positive degree, found from
/// roots in the base field or (over GF(q)) distinct-degree factorization.
pub fn coprime_split(p: &Poly) -> Option<(Poly, Poly)> {
    let s = squarefree_part(p);
    let ds = degree(&s)?;
    if ds < 2 {
        return None;
    }
    let field = s[0].field();
    if let Field::Prime(q) = field {
        // gcd(s, x^(q^i) - x) collects the irreducible factors of degree dividing i.
        let mut xq = vec![field.zero(), field.one()];
        for _ in 1..ds {
            xq = compose_power(&xq, q as u64, &s);
            let g = gcd(&s, &sub(&xq, &vec![field.zero(), field.one()]));
            let dg = degree(&g).unwrap_or(0);
            if dg > 0 && dg < ds {
                return Some(lift_split(p, &g));
            }
            if dg == ds {
                break;
            }
        }
    }
    let rs = roots(&s)?;
    let r = rs.first()?;
    Some(lift_split(p, &x_minus(field, r)))
}

fn compose_power(xq: &Poly, q: u64, m: &Poly) -> Poly {
    // (x^(q^i))^q mod m
    let mut result = vec![xq[0].field().one()];
    let mut base = xq.clone();
    let mut e = q;
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &base), m);
        }
        base = rem(&mul(&base, &base), m);
        e >>= 1;
    }
    result
}

/// Given a factor g of the squarefree part of p, splits p into the part supported
/// on g and the rest.
fn lift_split(p: &Poly, g: &Poly) -> (Poly, Poly) {
    let dp = degree(p).unwrap_or(0);
    let a = gcd(p, &power(g, dp));
    let (b, _) = divrem(p, &a);
    (a, monic(&b))
}
