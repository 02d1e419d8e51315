use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ext::{pair_complexity, period_class};
use crate::fixtures::{self, quantum_exterior, quantum_exterior_with, x_module};
use crate::graded::generate_subalgebra;
use crate::linalg::Field;
use crate::module::{cosyzygy, direct_sum, regular_module, semisimple_quotient, syzygy};

fn k_mu(d: usize) -> (Module, GradedSubalgebra) {
    let x = x_module(&quantum_exterior());
    let mu = period_class(&x, 1).unwrap().unwrap();
    let h = generate_subalgebra(&x, vec![mu], d).unwrap();
    (x, h)
}

#[test]
fn variety_of_m_is_everything() {
    let (x, h) = k_mu(8);
    for v in [injective_variety(&h, &x).unwrap(), projective_variety(&h, &x).unwrap()] {
        assert!(v.ideal.is_zero());
        assert_eq!(v.quotient_dims, h.dims());
        assert_eq!(v.dim.gamma, Some(1));
        assert!(!v.is_trivial());
        assert_eq!(compare(&v, &v).unwrap().relation, Relation::Equal);
    }
}

#[test]
fn projective_and_zero_modules_are_trivial() {
    let (x, h) = k_mu(8);
    let lam = regular_module(x.algebra());
    assert!(projective_variety(&h, &lam).unwrap().is_trivial());
    assert!(injective_variety(&h, &lam).unwrap().is_trivial());
    let zero = Module::zero(x.algebra());
    let v0 = projective_variety(&h, &zero).unwrap();
    assert!(v0.is_trivial());
    assert_eq!(v0.dim.gamma, Some(0));
    let vx = projective_variety(&h, &x).unwrap();
    assert_eq!(compare(&v0, &vx).unwrap().relation, Relation::FirstInSecond);
    assert_eq!(compare(&vx, &v0).unwrap().relation, Relation::SecondInFirst);
}

#[test]
fn adding_a_projective_summand_changes_nothing() {
    let (x, h) = k_mu(8);
    let (n, _, _) = direct_sum(&[x.clone(), regular_module(x.algebra())]).unwrap();
    let a = projective_variety(&h, &x).unwrap();
    let b = projective_variety(&h, &n).unwrap();
    let c = compare(&a, &b).unwrap();
    assert_eq!(c.relation, Relation::Equal);
    assert!(!c.by_hilbert);
}

#[test]
fn dimension_is_pair_complexity() {
    let (x, h) = k_mu(9);
    let top = semisimple_quotient(x.algebra());
    let v = injective_variety(&h, &top).unwrap();
    assert_eq!(v.dim.gamma, Some(1));
    assert_eq!(v.dim.gamma, pair_complexity(&x, &top, 9).unwrap().gamma);

    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for _ in 0..4 {
        let n = fixtures::random_radical_module(x.algebra(), 2, 2, &mut rng);
        let vi = injective_variety(&h, &n).unwrap();
        assert_eq!(vi.dim.gamma, pair_complexity(&x, &n, 9).unwrap().gamma);
        let vp = projective_variety(&h, &n).unwrap();
        assert_eq!(vp.dim.gamma, pair_complexity(&n, &x, 9).unwrap().gamma);
        assert_eq!(vi.is_trivial(), vi.dim.gamma == Some(0));
    }
}

#[test]
fn varieties_are_syzygy_invariant() {
    let (x, h) = k_mu(9);
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    for _ in 0..3 {
        let n = fixtures::random_radical_module(x.algebra(), 2, 2, &mut rng);
        let p = compare(&projective_variety(&h, &n).unwrap(), &projective_variety(&h, &syzygy(&n)).unwrap());
        assert_eq!(p.unwrap().relation, Relation::Equal);
        let i = compare(&injective_variety(&h, &n).unwrap(), &injective_variety(&h, &cosyzygy(&n)).unwrap());
        assert_eq!(i.unwrap().relation, Relation::Equal);
    }
}

#[test]
fn pair_variety_over_a_polynomial_ring() {
    // At q = 1 the period class is central, so both actions on Ext*(X, X) agree.
    let x = x_module(&quantum_exterior_with(Field::Rational, "1"));
    let mu = period_class(&x, 1).unwrap().unwrap();
    let h = generate_subalgebra(&x, vec![mu.clone()], 8).unwrap();
    let v = pair_variety(&[1], &[mu.clone()], &[mu.clone()], &x, &x, 8).unwrap();
    let vi = injective_variety(&h, &x).unwrap();
    assert_eq!(v.kind, VarietyKind::Pair);
    assert_eq!(v.ideal_dims, vi.ideal_dims);
    assert_eq!(v.quotient_dims, vi.quotient_dims);
    assert_eq!(compare(&v, &vi).unwrap().relation, Relation::Equal);

    let two = mu.scale(&x.field().from_i64(2));
    match pair_variety(&[1], &[mu.clone()], &[two], &x, &x, 8) {
        Err(Error::ActionsDisagree { generator: 0, .. }) => {}
        other => panic!("expected disagreement, got {other:?}"),
    }
    assert!(pair_variety(&[2], &[mu.clone()], &[mu], &x, &x, 8).is_err());
}

/// At q = 2, t·μ and μ·t differ for the nilpotent endomorphism t of X.
#[test]
fn twisted_period_class_actions_disagree() {
    let (x, h) = k_mu(6);
    let mu = h.generators()[0].clone();
    match pair_variety(&[1], &[mu.clone()], &[mu], &x, &x, 6) {
        Err(Error::ActionsDisagree { degree: 0, generator: 0 }) => {}
        other => panic!("expected disagreement in degree 0, got {other:?}"),
    }
}

#[test]
fn pair_variety_with_injective_target_is_trivial() {
    let (x, h) = k_mu(8);
    let lam = regular_module(x.algebra());
    // Ext^{≥1}(X, Λ) = 0, so any action on Λ's side agrees.
    let mu = h.generators()[0].clone();
    let lam_gen = crate::ext::ExtElement::zero(&crate::ext::ext_space(&lam, &lam, 1).unwrap());
    let v = pair_variety(&[1], &[mu], &[lam_gen], &x, &lam, 8).unwrap();
    assert!(v.is_trivial());
}
