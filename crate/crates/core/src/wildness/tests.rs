use super::*;
use crate::ext::{ext_space, period_class, tensor_period_classes};
use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::tensor_all;
use crate::fixtures::{self, algebra, quantum_exterior, quantum_exterior_with, tensor_cube, x_module};
use crate::graded::{annihilator, ext_module_over, generate_subalgebra};
use crate::linalg::{Field, Matrix};
use crate::module::{regular_module, simples, tensor_modules, Iso};

fn cube_h(d: usize) -> (Module, GradedSubalgebra) {
    let g = quantum_exterior();
    let x = x_module(&g);
    let (cube, m) = tensor_cube();
    let mus = tensor_period_classes(&cube, &[&x, &x, &x]).unwrap();
    let squares = mus.iter().map(|u| yoneda(u, u).unwrap()).collect();
    (m.clone(), generate_subalgebra(&m, squares, d).unwrap())
}

fn config(field: Field, d: usize) -> WildConfig {
    WildConfig { truncation: d, alphas: (0..3).map(|a| field.from_i64(a)).collect(), seed: 1, trials: 8 }
}

#[test]
fn eta_is_a_linear_combination() {
    let (m, h) = cube_h(8);
    let f = m.field();
    let norm = noether_normalize(&h, 8, 1).unwrap();
    let (x1, x2) = (&norm.parameters[0], &norm.parameters[1]);
    assert!(eta_alpha(x1, x2, &f.zero()).unwrap().same_class(x1));
    assert!(eta_alpha(x1, x2, &f.one()).unwrap().same_class(&x1.add(x2).unwrap()));
    let etas: Vec<Vec<FieldElem>> =
        (0..3).map(|a| eta_alpha(x1, x2, &f.from_i64(a)).unwrap().coordinates()).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            let pair = Matrix::from_columns(f, etas[i].len(), &[etas[i].clone(), etas[j].clone()]);
            assert_eq!(pair.rank(), 2);
        }
    }
    let lower = ExtElement::zero(&ext_space(&m, &m, 1).unwrap());
    assert!(eta_alpha(x1, &lower, &f.one()).is_err());
}

#[test]
fn zero_class_splits_and_period_class_gives_the_projective_cover() {
    let g = quantum_exterior();
    let x = x_module(&g);
    let zero = ExtElement::zero(&ext_space(&x, &x, 1).unwrap());
    let split = extension_module(&zero).unwrap();
    assert!(split.exact);
    assert_eq!(split.dim, 4);
    assert_eq!(splits(&split).unwrap(), IsoLabel::Isomorphic);

    let mu = period_class(&x, 1).unwrap().unwrap();
    let k = extension_module(&mu).unwrap();
    assert!(k.exact);
    assert_eq!(k.cokernel_is_syzygy, IsoLabel::Isomorphic);
    assert!(matches!(is_isomorphic(&k.module, &regular_module(&g)), Iso::Isomorphic(_)));
    assert_ne!(splits(&k).unwrap(), IsoLabel::Isomorphic);
}

#[test]
fn nonzero_classes_do_not_split() {
    let (m, h) = cube_h(4);
    for g in h.generators() {
        let k = extension_module(g).unwrap();
        assert!(k.exact);
        assert_ne!(splits(&k).unwrap(), IsoLabel::Isomorphic);
    }
    let zero = ExtElement::zero(&ext_space(&m, &m, 2).unwrap());
    assert_eq!(splits(&extension_module(&zero).unwrap()).unwrap(), IsoLabel::Isomorphic);
}

#[test]
fn corrupted_cocycles_are_rejected() {
    let g = quantum_exterior();
    let f = g.field();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (space, bad) = (0..20)
        .find_map(|_| {
            let n = fixtures::random_radical_module(&g, 2, 2, &mut rng);
            let s = ext_space(&n, &n, 1).unwrap();
            (0..s.cochains().dim()).map(|i| vec![(i, f.one())]).find(|v| !s.is_cocycle(v)).map(|v| (s, v))
        })
        .expect("some cochain is not a cocycle");
    let e = ExtElement::new_unchecked(&space, bad);
    assert!(matches!(extension_module(&e), Err(Error::NotACocycle)));
    let x = x_module(&g);
    let zero = ExtElement::zero(&ext_space(&x, &x, 0).unwrap());
    assert!(extension_module(&zero).is_err());
}

#[test]
fn cube_extension_dimensions() {
    let (m, h) = cube_h(8);
    let norm = noether_normalize(&h, 8, 1).unwrap();
    assert_eq!(norm.degree, 2);
    let k = extension_module(&norm.parameters[0]).unwrap();
    let p0 = min_proj_resolution(&m, 1).term(0).dim();
    assert_eq!(k.dim_m, 8);
    assert_eq!(k.dim_syzygy, p0 - 8);
    assert_eq!(k.dim, 64);
    assert!(k.exact);
    assert_eq!(k.cokernel_is_syzygy, IsoLabel::Isomorphic);
}

#[test]
fn cube_hypotheses_pass() {
    let (m, h) = cube_h(8);
    let r = check_hypotheses(&m, &h, 8).unwrap();
    assert!(r.selfinjective);
    assert_eq!(r.h0_local, LocalVerdict::Local);
    assert_eq!(r.cx_mm.gamma, Some(3));
    assert_eq!(r.gamma_h.gamma, Some(3));
    assert!(positive(&r.fg));
    assert!(r.estimates_consistent);
    assert!(r.bundles[0].passed);
    assert!(r.passed);
}

#[test]
fn periodic_module_fails_complexity() {
    let g = quantum_exterior();
    let x = x_module(&g);
    let mu = period_class(&x, 1).unwrap().unwrap();
    let h = generate_subalgebra(&x, vec![mu], 8).unwrap();
    let r = check_hypotheses(&x, &h, 8).unwrap();
    assert!(r.selfinjective);
    assert_eq!(r.cx_mm.gamma, Some(1));
    assert!(!r.complexity_at_least_three);
    assert!(!r.passed);
    let w = wild_check(&x, &h, &config(x.field(), 8)).unwrap();
    assert_eq!(w.verdict, Verdict::CriteriaNotMet);
    assert!(w.family.is_none());
}

#[test]
fn non_selfinjective_algebra_fails() {
    let a = algebra(fixtures::A2, Field::Rational);
    let s = simples(&a).remove(0);
    let h = generate_subalgebra(&s, Vec::new(), 6).unwrap();
    let r = check_hypotheses(&s, &h, 6).unwrap();
    assert!(!r.selfinjective);
    assert!(!r.passed);
    assert_eq!(wild_check(&s, &h, &config(s.field(), 6)).unwrap().verdict, Verdict::CriteriaNotMet);
}

#[test]
fn family_input_is_validated() {
    let (m, h) = cube_h(8);
    let f = m.field();
    let norm = noether_normalize(&h, 8, 1).unwrap();
    let repeated = [f.zero(), f.one(), f.one()];
    assert!(verify_family(&m, &norm, &repeated, 8).is_err());
    assert!(verify_family(&m, &norm, &[f.zero(), f.one()], 8).is_err());
}

#[test]
fn principal_ideal_of_a_linear_form() {
    let shape = RingShape::polynomial(&[2, 2, 2], 8).unwrap();
    let f = Field::Rational;
    let ideal = principal_linear_ideal(&shape, &[f.one(), f.from_i64(2), f.zero()]).unwrap();
    // k[x, y, z]/(x + 2y) ≅ k[y, z], in even degrees.
    assert_eq!(ideal.quotient_dims(), vec![1, 0, 2, 0, 3, 0, 4, 0, 5]);
    assert!(principal_linear_ideal(&RingShape::polynomial(&[1, 2], 4).unwrap(), &[f.one(), f.one()]).is_err());
}

fn cube_at(q: &str, d: usize) -> (Module, GradedSubalgebra) {
    let g = quantum_exterior_with(Field::Rational, q);
    let x = x_module(&g);
    let cube = tensor_all(&[&g, &g, &g]).unwrap();
    let m = tensor_modules(&cube, &[&x, &x, &x]).unwrap();
    let mus = tensor_period_classes(&cube, &[&x, &x, &x]).unwrap();
    let squares = mus.iter().map(|u| yoneda(u, u).unwrap()).collect();
    (m.clone(), generate_subalgebra(&m, squares, d).unwrap())
}

/// Coefficients of a product of linear forms in k[x₁, x₂, x₃], keyed by exponents.
fn expand(forms: &[[FieldElem; 3]]) -> HashMap<Vec<usize>, FieldElem> {
    let f = forms[0][0].field();
    let mut acc: HashMap<Vec<usize>, FieldElem> = HashMap::from([(vec![0, 0, 0], f.one())]);
    for form in forms {
        let mut next: HashMap<Vec<usize>, FieldElem> = HashMap::new();
        for (e, c) in &acc {
            for (j, a) in form.iter().enumerate() {
                let mut t = e.clone();
                t[j] += 1;
                *next.entry(t).or_insert_with(|| f.zero()) += &(c * a);
            }
        }
        acc = next;
    }
    acc
}

fn exponents(shape: &RingShape) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
    for words in &shape.words {
        let row = words
            .iter()
            .map(|w| match *w {
                Word::Unit => vec![0; 3],
                Word::Product { generator, degree, index } => {
                    let mut e = out[degree][index].clone();
                    e[generator] += 1;
                    e
                }
            })
            .collect();
        out.push(row);
    }
    out
}

#[test]
fn cube_is_wild_by_criterion() {
    let (m, h) = cube_h(8);
    let f = m.field();
    let w = wild_check(&m, &h, &config(f, 8)).unwrap();
    assert_eq!(w.verdict, Verdict::WildByCriterion);
    let fam = w.family.as_ref().unwrap();
    assert_eq!(fam.parameter_count, 3);
    assert_eq!(fam.members.len(), 3);
    for c in &fam.checks {
        assert!(c.exact && c.dim_ok && c.contains_line);
        assert_eq!(c.cx_k_m.gamma, Some(2));
        assert!(c.hypersurface);
        assert_eq!(c.dim, c.dim_bound);
        // The parameters are normal but not central, so only α = 0 gives the line itself.
        assert_eq!(c.variety_equal, c.alpha.is_zero());
    }
    assert_eq!(fam.pairs.len(), 3);
    assert!(fam.pairs.iter().all(|p| p.non_isomorphic && p.method == "annihilator"));
    for c in [CAVEAT_CRAWLEY_BOEVEY, CAVEAT_NON_FG, CAVEAT_CLOSED_FIELD] {
        assert!(w.caveats.iter().any(|s| s == c));
    }
    assert!(w.caveats.iter().any(|s| s.starts_with(VARIETY_LARGER)));
    assert!(serde_json::to_string(&w).unwrap().contains("NOT verified"));
}

/// At q = 2 the annihilator of Ext*(K_α, M) is generated by the product of the
/// three linear forms x₁ + α·4^k·x₂, k = −1, 0, 1.
#[test]
fn twisted_family_varieties_are_three_planes() {
    let (m, h) = cube_h(8);
    let f = m.field();
    let norm = noether_normalize(&h, 8, 1).unwrap();
    assert_eq!(norm.trial, 0);
    let shape = RingShape::polynomial(&[2, 2, 2], 8).unwrap();
    let exps = exponents(&shape);
    for a in [1, 2] {
        let alpha = f.from_i64(a);
        let member =
            extension_module(&eta_alpha(&norm.parameters[0], &norm.parameters[1], &alpha).unwrap()).unwrap();
        let hmod = ext_module_over(&m, &norm.parameters, shape.clone(), &member.module, Side::Left).unwrap();
        let ann = annihilator(&hmod).unwrap();
        let forms: Vec<[FieldElem; 3]> = [f.from_i64(4).inv().unwrap(), f.one(), f.from_i64(4)]
            .iter()
            .map(|t| [f.one(), &alpha * t, f.zero()])
            .collect();
        let product = expand(&forms);
        let v: Vec<FieldElem> =
            exps[6].iter().map(|e| product.get(e).cloned().unwrap_or_else(|| f.zero())).collect();
        assert_eq!(ann.dims()[..=6], [0, 0, 0, 0, 0, 0, 1]);
        assert!(ann.spaces[6].contains(&v));
    }
}

#[test]
fn central_parameters_give_the_line() {
    let (m, h) = cube_at("1", 8);
    let w = wild_check(&m, &h, &config(m.field(), 8)).unwrap();
    assert_eq!(w.verdict, Verdict::WildByCriterion);
    let fam = w.family.unwrap();
    for c in &fam.checks {
        assert!(c.variety_equal && c.hilbert_equal);
        assert_eq!(c.power_in_annihilator, Some(1));
        assert_eq!(c.variety_hilbert, vec![1, 0, 2, 0, 3, 0, 4]);
    }
    assert!(fam.caveats.is_empty());
}

#[test]
fn unsettled_evidence_is_inconclusive() {
    let (m, h) = cube_h(8);
    let mut r = check_hypotheses(&m, &h, 8).unwrap();
    r.fg.verdict = FgVerdict::Inconclusive;
    for b in &mut r.bundles {
        b.passed = false;
    }
    r.passed = false;
    assert_eq!(verdict(r, None, None, Vec::new()).verdict, Verdict::Inconclusive);
}
