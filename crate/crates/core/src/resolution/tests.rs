use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fixtures::{self, algebra, quantum_exterior, x_module};
use crate::linalg::Field;
use crate::module::{
    indecomposable_injective, is_isomorphic, projective_cover, regular_module, simple, syzygy,
};

/// Oracle: dims of P_n by iterating dense projective covers and kernels.
fn dense_term_dims(m: &Module, d: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = m.clone();
    for _ in 0..=d {
        let (p, _) = projective_cover(&cur);
        out.push(p.dim());
        cur = syzygy(&cur);
    }
    out
}

#[test]
fn projective_module_resolves_in_one_step() {
    let a = quantum_exterior();
    let r = min_proj_resolution(&regular_module(&a), 6);
    assert_eq!(r.term_dims()[..=6], [4, 0, 0, 0, 0, 0, 0]);
    assert!(r.syzygy_module(1).is_zero());
}

#[test]
fn period_one_module() {
    let a = quantum_exterior();
    let x = x_module(&a);
    let r = min_proj_resolution(&x, 20);
    assert_eq!(r.term_dims()[..=20], [4; 21]);
    assert_eq!(dense_term_dims(&x, 6), vec![4; 7]);
    for n in 1..=3 {
        assert!(is_isomorphic(&r.syzygy_module(n), &x).is_iso());
    }
}

#[test]
fn koszul_growth_in_char_two() {
    let a = algebra(fixtures::COMMUTATIVE_SQUARE, Field::Prime(2));
    let k = simple(&a, 0);
    let r = min_proj_resolution(&k, 8);
    let expect: Vec<usize> = (0..=8).map(|n| 4 * (n + 1)).collect();
    assert_eq!(r.term_dims()[..=8], expect[..]);
    assert_eq!(dense_term_dims(&k, 5), expect[..=5].to_vec());
}

#[test]
fn complexes_are_exact_and_minimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let algs = [
        quantum_exterior(),
        algebra(fixtures::COMMUTATIVE_SQUARE, Field::Prime(2)),
        algebra(fixtures::A2, Field::Rational),
        algebra(
            "vertex a, b;\narrow x: a -> b;\narrow y: b -> a;\nrelation x*y*x;\nrelation y*x*y;",
            Field::Rational,
        ),
    ];
    for alg in &algs {
        for _ in 0..3 {
            let m = fixtures::random_radical_module(alg, 2, 2, &mut rng);
            let r = min_proj_resolution(&m, 4);
            assert_eq!(r.term_dims()[..=4], dense_term_dims(&m, 4)[..]);
            let (eps, _) = r.augmentation();
            assert!(eps.intertwines() && eps.is_surjective());
            for n in 1..=4 {
                let d = r.differential_hom(n);
                assert!(d.intertwines());
                let prev = if n == 1 { eps.clone() } else { r.differential_hom(n - 1) };
                assert!(d.then(&prev).unwrap().is_zero());
                // Exactness: rank d_n = dim P_{n-1} − rank of the map out of P_{n-1}.
                assert_eq!(d.rank(), r.term_dim(n - 1) - prev.rank());
                for g in r.images(n) {
                    assert!(r.term(n - 1).in_radical(g));
                }
            }
            for n in 0..4 {
                let next = r.syzygy_module(n + 1);
                assert!(next.validate().is_ok());
                assert!(is_isomorphic(&next, &syzygy(&r.syzygy_module(n))).is_iso());
                let (inc, _) = r.syzygy_inclusion(n);
                assert!(inc.intertwines() && inc.is_injective());
            }
        }
    }
}

#[test]
fn cache_extends_incrementally() {
    // An algebra no other test uses, so the shared cache is not extended concurrently.
    let a = fixtures::quantum_exterior_with(Field::Rational, "5");
    let s = simple(&a, 0);
    let short = min_proj_resolution(&s, 3);
    let again = min_proj_resolution(&s, 2);
    assert!(std::sync::Arc::ptr_eq(&short, &again));
    let long = min_proj_resolution(&s, 7);
    assert_eq!(long.length(), 7);
    assert_eq!(long.term_dims()[..=3], short.term_dims()[..]);
    assert_eq!(long.images(2), short.images(2));
}

#[test]
fn injective_resolutions() {
    let a = quantum_exterior();
    let i = indecomposable_injective(&a, 0);
    let r = min_inj_resolution(&i, 6);
    assert_eq!(r.term_dims()[..=6], [4, 0, 0, 0, 0, 0, 0]);
    let x = x_module(&a);
    let rx = min_inj_resolution(&x, 8);
    assert_eq!(rx.term_dims()[..=8], min_proj_resolution(&x, 8).term_dims()[..=8]);
    assert!(is_isomorphic(&rx.cosyzygy_module(1), &x).is_iso());
    let k = algebra(fixtures::GROUND_FIELD, Field::Rational);
    let pt = simple(&k, 0);
    assert_eq!(min_inj_resolution(&pt, 6).term_dims()[..=6], [1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(min_proj_resolution(&pt, 6).term_dims()[..=6], [1, 0, 0, 0, 0, 0, 0]);
}

#[test]
fn gamma_examples() {
    assert_eq!(estimate_gamma(&[0; 8]).unwrap().gamma, Some(0));
    assert_eq!(estimate_gamma(&[4; 8]).unwrap().gamma, Some(1));
    let lin: Vec<usize> = (1..=10).map(|n| 4 * n).collect();
    assert_eq!(estimate_gamma(&lin).unwrap().gamma, Some(2));
    let cube: Vec<usize> = (0..=8).map(|n| 64 * (n + 1) * (n + 2) / 2).collect();
    assert_eq!(estimate_gamma(&cube).unwrap().gamma, Some(3));
    // Eventually zero after a nonzero start.
    assert_eq!(estimate_gamma(&[3, 2, 1, 0, 0, 0, 0, 0]).unwrap().gamma, Some(0));
    // Bounded but alternating.
    let alt = estimate_gamma(&[1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
    assert_eq!((alt.gamma, alt.period), (Some(1), 2));
    // Exponential growth never settles.
    let exp: Vec<usize> = (0..10).map(|n| 1 << n).collect();
    let e = estimate_gamma(&exp).unwrap();
    assert!(!e.stable && e.gamma.is_none());
    assert!(estimate_gamma(&[1, 2, 3]).is_err());
}

#[test]
fn complexity_and_plexity() {
    let a = quantum_exterior();
    assert_eq!(complexity(&regular_module(&a), 8).unwrap().gamma, Some(0));
    let x = x_module(&a);
    assert_eq!(complexity(&x, 10).unwrap().gamma, Some(1));
    assert_eq!(plexity(&x, 10).unwrap().gamma, Some(1));
    let c = algebra(fixtures::COMMUTATIVE_SQUARE, Field::Prime(2));
    assert_eq!(complexity(&simple(&c, 0), 10).unwrap().gamma, Some(2));
    assert!(complexity(&x, 3).is_err());
    // Finite projective dimension over A₂.
    let a2 = algebra(fixtures::A2, Field::Rational);
    assert_eq!(complexity(&simple(&a2, 0), 8).unwrap().gamma, Some(0));
    assert_eq!(plexity(&simple(&a2, 1), 8).unwrap().gamma, Some(0));
}
