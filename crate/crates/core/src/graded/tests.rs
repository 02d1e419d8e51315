use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::ext::{ext_dims, hom_class, period_class, yoneda, ExtElement};
use crate::fixtures::{self, algebra, quantum_exterior, x_module};
use crate::linalg::{Field, Matrix};
use crate::module::{
    cokernel, direct_sum, regular_module, semisimple_quotient, simple, syzygy, Module, ModuleHom,
};

fn mu(x: &Module) -> ExtElement {
    period_class(x, 1).unwrap().expect("X has period one")
}

fn k_mu(d: usize) -> (Module, GradedSubalgebra) {
    let x = x_module(&quantum_exterior());
    let h = generate_subalgebra(&x, vec![mu(&x)], d).unwrap();
    (x, h)
}

fn nilpotent_endo(x: &Module) -> ModuleHom {
    let t = Matrix::from_i64(x.field(), &[&[0, 0], &[1, 0]]);
    ModuleHom::new(x, x, vec![t]).unwrap()
}

#[test]
fn polynomial_shapes_count_monomials() {
    let shape = RingShape::polynomial(&[1, 1], 7).unwrap();
    assert_eq!(shape.dims(), (0..=7).map(|d| d + 1).collect::<Vec<_>>());
    // Monomials a^i b^j with 2i + 3j = d, counted directly.
    let shape = RingShape::polynomial(&[2, 3], 12).unwrap();
    for d in 0..=12 {
        let count = (0..=d / 2).filter(|i| (d - 2 * i) % 3 == 0).count();
        assert_eq!(shape.dim(d), count, "degree {d}");
    }
    assert!(RingShape::polynomial(&[0], 3).is_err());
}

#[test]
fn period_class_generates_polynomial_ring() {
    let (_, h) = k_mu(8);
    assert_eq!(h.dims(), vec![1; 9]);
    assert_eq!(h.shape().words[3], vec![Word::Product { generator: 0, degree: 2, index: 0 }]);
    let one = h.unit().unwrap();
    let x = h.unit_vector(1, 0);
    let mut p = one;
    for d in 0..8 {
        p = h.multiply(d, &p, 1, &x).unwrap();
        assert!(!p[0].is_zero());
    }
}

#[test]
fn no_generators_gives_ground_field() {
    let x = x_module(&quantum_exterior());
    let h = generate_subalgebra(&x, Vec::new(), 6).unwrap();
    let mut expected = vec![0; 7];
    expected[0] = 1;
    assert_eq!(h.dims(), expected);
}

#[test]
fn numerical_semigroup_hilbert_function() {
    let x = x_module(&quantum_exterior());
    let m = mu(&x);
    let m2 = yoneda(&m, &m).unwrap();
    let m3 = yoneda(&m, &m2).unwrap();
    let d = 9;
    let h = generate_subalgebra(&x, vec![m2, m3], d).unwrap();
    // Degrees reachable as 2a + 3b.
    let expected: Vec<usize> =
        (0..=d).map(|n| usize::from((0..=n / 2).any(|a| (n - 2 * a) % 3 == 0))).collect();
    assert_eq!(h.dims(), expected);
    assert_eq!(h.dims()[..5], [1, 0, 1, 1, 1]);
}

#[test]
fn twisted_generators_are_rejected() {
    let x = x_module(&quantum_exterior());
    let t = hom_class(&nilpotent_endo(&x)).unwrap();
    match generate_subalgebra(&x, vec![mu(&x), t], 4) {
        Err(Error::NotCommutative(0, 1)) => {}
        other => panic!("expected NotCommutative, got {other:?}"),
    }
    let err = generate_subalgebra(&x, vec![mu(&x)], 0).unwrap_err();
    assert!(matches!(err, Error::DegreeOverflow { .. }));
}

#[test]
fn local_degree_zero_parts() {
    let (_, h) = k_mu(4);
    let r = check_h0_local(&h).unwrap();
    assert_eq!(r.verdict, LocalVerdict::Local);
    let m = maximal_graded_ideal(&h, &r).unwrap();
    assert!(m.proper);
    assert_eq!(m.ideal.dims(), vec![0, 1, 1, 1, 1]);

    let x = x_module(&quantum_exterior());
    let k = generate_subalgebra(&x, Vec::new(), 6).unwrap();
    let r = check_h0_local(&k).unwrap();
    assert_eq!(r.verdict, LocalVerdict::Local);
    assert!(maximal_graded_ideal(&k, &r).unwrap().ideal.is_zero());
}

#[test]
fn split_degree_zero_part_has_idempotent() {
    let a = algebra(fixtures::A2, Field::Rational);
    let (m, incs, projs) = direct_sum(&[simple(&a, 0), simple(&a, 1)]).unwrap();
    let e1 = projs[0].then(&incs[0]).unwrap();
    let h = generate_subalgebra(&m, vec![hom_class(&e1).unwrap()], 6).unwrap();
    assert_eq!(h.dim(0), 2);
    let r = check_h0_local(&h).unwrap();
    let LocalVerdict::NotLocal(e) = &r.verdict else { panic!("expected an idempotent, got {:?}", r.verdict) };
    assert_eq!(&h.multiply(0, e, 0, e).unwrap(), e);
    assert_ne!(Some(e.clone()), h.unit());
    assert!(e.iter().any(|c| !c.is_zero()));
    assert!(maximal_graded_ideal(&h, &r).is_err());
}

#[test]
fn nilpotent_degree_zero_generator_joins_the_radical() {
    for field in [Field::Rational, Field::Prime(3)] {
        let d = algebra(fixtures::DUAL_NUMBERS, field);
        let m = regular_module(&d);
        let eps = ModuleHom::new(&m, &m, vec![m.arrow_matrix(0).clone()]).unwrap();
        let h = generate_subalgebra(&m, vec![hom_class(&eps).unwrap()], 6).unwrap();
        assert_eq!(h.dims(), vec![2, 0, 0, 0, 0, 0, 0]);
        let r = check_h0_local(&h).unwrap();
        assert_eq!(r.verdict, LocalVerdict::Local);
        let mg = maximal_graded_ideal(&h, &r).unwrap();
        assert!(mg.proper);
        assert_eq!(mg.ideal.dims()[0], 1);
        let e = h.coordinates_of(&hom_class(&eps).unwrap()).unwrap();
        assert!(mg.ideal.spaces[0].contains(&e));
    }
}

#[test]
fn module_over_itself_has_zero_annihilator() {
    let (x, h) = k_mu(8);
    for side in [Side::Left, Side::Right] {
        let hm = ext_as_module(&h, &x, side).unwrap();
        assert_eq!(hm.dims(), &ext_dims(&x, &x, 8).unwrap()[..]);
        let ann = annihilator(&hm).unwrap();
        assert!(ann.is_zero(), "{side:?}: {:?}", ann.dims());
        assert_eq!(ann.caveat, Some(TRUNCATED_ANNIHILATOR));
        let fg = fg_evidence(&hm).unwrap();
        assert_eq!(fg.verdict, FgVerdict::GeneratedInDegrees(0), "{:?}", fg.new_generators);
    }
}

#[test]
fn injective_target_is_killed_in_positive_degrees() {
    let (_, h) = k_mu(6);
    let lam = regular_module(h.module().algebra());
    let hm = ext_as_module(&h, &lam, Side::Right).unwrap();
    assert!(hm.dims()[1..].iter().all(|&n| n == 0));
    for j in 0..h.generators().len() {
        for p in 0..hm.dims().len() - 1 {
            assert!(hm.generator_action(j, p).unwrap().iter().all(Vec::is_empty));
        }
    }
    let ann = annihilator(&hm).unwrap();
    assert_eq!(ann.dims(), vec![0, 1, 1, 1, 1, 1, 1]);
}

#[test]
fn semisimple_quotient_is_finitely_generated() {
    let (x, h) = k_mu(9);
    let top = semisimple_quotient(x.algebra());
    let hm = ext_as_module(&h, &top, Side::Right).unwrap();
    let fg = fg_evidence(&hm).unwrap();
    let FgVerdict::GeneratedInDegrees(g) = fg.verdict else { panic!("{:?}", fg.new_generators) };
    assert!(g <= 2, "{:?}", fg.new_generators);
    let ann = annihilator(&hm).unwrap();
    assert_eq!(ann.reliable, 9 - g);
}

#[test]
fn planted_generators_are_inconclusive() {
    let shape = RingShape::polynomial(&[1], 8).unwrap();
    let field = Field::Rational;
    // One new basis vector per degree and x acting by zero.
    let acts = vec![(0..8).map(|_| vec![Vec::new()]).collect()];
    let hm = GradedHModule::from_actions(field, Side::Right, shape.clone(), vec![1; 9], acts).unwrap();
    let fg = fg_evidence(&hm).unwrap();
    assert_eq!(fg.new_generators, vec![1; 9]);
    assert_eq!(fg.verdict, FgVerdict::Inconclusive);
    let ann = annihilator(&hm).unwrap();
    assert_eq!(ann.dims(), vec![0, 1, 1, 1, 1, 1, 1, 1, 1]);
    assert_eq!(ann.reliable, 4);

    // x acting by the identity: free of rank one.
    let acts = vec![(0..8).map(|_| vec![vec![(0, field.one())]]).collect()];
    let free = GradedHModule::from_actions(field, Side::Right, shape, vec![1; 9], acts).unwrap();
    assert_eq!(fg_evidence(&free).unwrap().verdict, FgVerdict::GeneratedInDegrees(0));
    assert!(annihilator(&free).unwrap().is_zero());
}

#[test]
fn annihilators_of_sums_and_sequences() {
    let (x, h) = k_mu(8);
    let alg = x.algebra().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..3 {
        let n2 = fixtures::random_radical_module(&alg, 2, 2, &mut rng);
        let (n1, inc) = fixtures::random_submodule(&n2, 1, &mut rng);
        let (n3, _) = cokernel(&inc);
        for side in [Side::Right, Side::Left] {
            let ann = |n: &Module| annihilator(&ext_as_module(&h, n, side).unwrap()).unwrap();
            let (a1, a2, a3) = (ann(&n1), ann(&n2), ann(&n3));
            let d = a1.reliable.min(a2.reliable).min(a3.reliable);
            for (p, q, r) in [(&a2, &a1, &a3), (&a1, &a3, &a2), (&a3, &a2, &a1)] {
                let prod = p.product(q, &h).unwrap();
                assert!(r.contains_up_to(&prod, d), "{side:?}: {:?} {:?} {:?}", p.dims(), q.dims(), r.dims());
            }
            let (sum, _, _) = direct_sum(&[n1.clone(), n3.clone()]).unwrap();
            let a13 = ann(&sum);
            let meet = a1.intersect(&a3);
            assert_eq!(a13.dims(), meet.dims());
            assert!(a13.contains(&meet) && meet.contains(&a13));
        }
    }
}

#[test]
fn annihilators_lie_in_the_maximal_ideal() {
    let (x, h) = k_mu(6);
    let mg = maximal_graded_ideal(&h, &check_h0_local(&h).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for _ in 0..3 {
        let n = fixtures::random_radical_module(x.algebra(), 2, 1, &mut rng);
        if n.is_zero() {
            continue;
        }
        let ann = annihilator(&ext_as_module(&h, &n, Side::Left).unwrap()).unwrap();
        assert!(mg.ideal.contains(&ann));
    }
}

#[test]
fn annihilator_is_syzygy_invariant() {
    let (x, h) = k_mu(9);
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for _ in 0..3 {
        let n = fixtures::random_radical_module(x.algebra(), 2, 2, &mut rng);
        let om = syzygy(&n);
        // Ext^{p+1}(N, M) = Ext^p(ΩN, M) for p ≥ 1.
        let a = annihilator_from(&ext_as_module(&h, &n, Side::Left).unwrap(), 2).unwrap();
        let b = annihilator_from(&ext_as_module(&h, &om, Side::Left).unwrap(), 1).unwrap();
        assert_eq!(a.dims()[..=4], b.dims()[..=4]);
        for d in 0..=4 {
            assert!(a.spaces[d].contains_span(&b.spaces[d]) && b.spaces[d].contains_span(&a.spaces[d]));
        }
    }
}

#[test]
fn hilbert_gammas() {
    let (x, h) = k_mu(8);
    assert_eq!(hilbert_gamma(&h.dims()).unwrap().gamma, Some(1));
    let k = generate_subalgebra(&x, Vec::new(), 8).unwrap();
    assert_eq!(hilbert_gamma(&k.dims()).unwrap().gamma, Some(0));
    let three = RingShape::polynomial(&[2, 2, 2], 16).unwrap();
    assert_eq!(hilbert_gamma(&three.dims()).unwrap().gamma, Some(3));
}

#[test]
fn normalization_of_small_rings() {
    let (x, h) = k_mu(8);
    let n = noether_normalize(&h, 8, 5).unwrap();
    assert_eq!((n.count, n.degree, n.trial), (1, 1, 0));
    assert!(n.parameters[0].same_class(&mu(&x)));
    assert!(n.quotient_dims[1..].iter().all(|&q| q == 0));

    let k = generate_subalgebra(&x, Vec::new(), 8).unwrap();
    let n = noether_normalize(&k, 8, 5).unwrap();
    assert_eq!(n.count, 0);
    assert!(n.parameters.is_empty());
}

#[test]
fn semigroup_ring_normalizes_in_common_degree() {
    let x = x_module(&quantum_exterior());
    let m = mu(&x);
    let m2 = yoneda(&m, &m).unwrap();
    let m3 = yoneda(&m, &m2).unwrap();
    let h = generate_subalgebra(&x, vec![m2, m3], 18).unwrap();
    let n = noether_normalize(&h, 16, 9).unwrap();
    assert_eq!((n.count, n.degree), (1, 6));
    // H/(μ⁶) is spanned by 1, μ², μ³, μ⁴, μ⁵, μ⁷.
    let expected: Vec<usize> = (0..=18).map(|d| usize::from([0, 2, 3, 4, 5, 7].contains(&d))).collect();
    assert_eq!(n.quotient_dims, expected);
}
