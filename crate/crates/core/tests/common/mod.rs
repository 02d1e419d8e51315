#![allow(dead_code)]

pub mod checks;

use proptest::test_runner::{Config, RngSeed, TestRunner};
use varieties::ext::{ext_algebra_generators, period_class};
use varieties::fixtures::{algebra, quantum_exterior, random_radical_module, x_module, COMMUTATIVE_SQUARE};
use varieties::graded::{generate_subalgebra, GradedIdeal, GradedSubalgebra};
use varieties::linalg::Field;
use varieties::module::{regular_module, simple, simples, syzygy, Module};

/// A module M with a commutative subalgebra H of Ext*(M, M).
pub struct Setting {
    pub name: &'static str,
    pub m: Module,
    pub h: GradedSubalgebra,
    pub truncation: usize,
}

/// k[x,y]/(x², y²) over GF(2) with M = k and H = Ext*(k, k) = k[a, b].
pub fn klein_four(d: usize) -> Setting {
    let alg = algebra(COMMUTATIVE_SQUARE, Field::Prime(2));
    let k = simple(&alg, 0);
    let gens = ext_algebra_generators(&k, 1).unwrap();
    let h = generate_subalgebra(&k, gens, d).unwrap();
    Setting { name: "commutative square over GF(2)", m: k, h, truncation: d }
}

/// The quantum exterior algebra at q = 2 over Q with M = X and H = k[μ].
pub fn quantum(d: usize) -> Setting {
    let x = x_module(&quantum_exterior());
    let mu = period_class(&x, 1).unwrap().unwrap();
    let h = generate_subalgebra(&x, vec![mu], d).unwrap();
    Setting { name: "quantum exterior algebra", m: x, h, truncation: d }
}

pub fn settings(d: usize) -> Vec<Setting> {
    vec![klein_four(d), quantum(d)]
}

/// Deterministic proptest runner.
pub fn runner(cases: u32, seed: u64) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    })
}

/// `inner ⊆ outer` in degrees ≤ d.
pub fn included(inner: &GradedIdeal, outer: &GradedIdeal, d: usize) -> bool {
    outer.contains_up_to(inner, d)
}

pub fn equal_up_to(a: &GradedIdeal, b: &GradedIdeal, d: usize) -> bool {
    included(a, b, d) && included(b, a, d)
}

/// M, the simple modules, Λ and `random` radical-relation modules with their syzygies.
pub fn suite_modules(s: &Setting, random: usize, seed: u64) -> Vec<Module> {
    use rand::{Rng, SeedableRng};
    let alg = s.m.algebra();
    let mut out = vec![s.m.clone(), regular_module(alg)];
    out.extend(simples(alg));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let n = random_radical_module(alg, rng.gen_range(1..=2), rng.gen_range(1..=3), &mut rng);
        out.push(if i % 3 == 2 { syzygy(&n) } else { n });
    }
    out
}
