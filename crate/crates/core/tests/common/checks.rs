//! Property checks shared by the integration tests and the acceptance report.
//! Each returns the number of cases checked, or a description of the first failure.

use std::cell::Cell;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use varieties::ext::{ext_dim_via_syzygy, ext_dims, pair_complexity};
use varieties::fixtures::{algebra, random_radical_module, random_submodule, DUAL_NUMBERS};
use varieties::graded::{
    annihilator, annihilator_from, ext_as_module, fg_evidence, FgVerdict, GradedIdeal, Side,
};
use varieties::linalg::Field;
use varieties::module::{
    cokernel, cosyzygy, direct_sum, indecomposable_projective, radical, regular_module, semisimple_quotient,
    simple, syzygy, Module, ModuleHom,
};
use varieties::resolution::min_proj_resolution;
use varieties::variety::{injective_variety, projective_variety};

use super::{equal_up_to, included, runner, settings, suite_modules, Setting};

pub type Check = Result<usize, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn run<S: Strategy>(
    cases: u32,
    seed: u64,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Check {
    runner(cases, seed).run(&strategy, test).map_err(|e| e.to_string())?;
    Ok(cases as usize)
}

fn ann(s: &Setting, n: &Module, side: Side) -> GradedIdeal {
    annihilator(&ext_as_module(&s.h, n, side).unwrap()).unwrap()
}

fn ann_from(s: &Setting, n: &Module, side: Side, from: usize) -> GradedIdeal {
    annihilator_from(&ext_as_module(&s.h, n, side).unwrap(), from).unwrap()
}

fn random(s: &Setting, seed: u64) -> (ChaCha8Rng, Module) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = rng.gen_range(1..=2);
    let rels = rng.gen_range(1..=3);
    let n = random_radical_module(s.m.algebra(), rank, rels, &mut rng);
    (rng, n)
}

pub fn module_annihilator_is_zero(s: &Setting) -> Check {
    for side in [Side::Left, Side::Right] {
        if !ann(s, &s.m, side).is_zero() {
            return Err(format!("{}: Ann Ext*(M, M) ≠ 0 ({side:?})", s.name));
        }
    }
    Ok(2)
}

/// Projective = injective modules have trivial varieties (ideal ⊇ H⁺).
pub fn projectives_are_trivial(s: &Setting) -> Check {
    let alg = s.m.algebra().clone();
    run(16, 11, (1usize..=3, any::<bool>()), |(copies, indecomposable)| {
        let part = if indecomposable { indecomposable_projective(&alg, 0) } else { regular_module(&alg) };
        let (p, _, _) = direct_sum(&vec![part; copies]).unwrap();
        for side in [Side::Left, Side::Right] {
            let a = ann(s, &p, side);
            for d in 1..=s.truncation {
                ensure(a.spaces[d].rank() == s.h.dim(d), || format!("{}: degree {d} not killed", s.name))?;
            }
        }
        ensure(projective_variety(&s.h, &p).unwrap().is_trivial(), || format!("{}: V^p nontrivial", s.name))?;
        ensure(injective_variety(&s.h, &p).unwrap().is_trivial(), || format!("{}: V^i nontrivial", s.name))
    })
}

/// Ann(N_a)·Ann(N_b) ⊆ Ann(N_c) for every arrangement of 0 → N₁ → N₂ → N₃ → 0.
pub fn short_exact_products(s: &Setting) -> Check {
    let nontrivial = Cell::new(0);
    let cases = run(80, 13, any::<u64>(), |seed| {
        let (mut rng, n2) = random(s, seed);
        let count = rng.gen_range(1..=2);
        let (n1, inc): (Module, ModuleHom) = if rng.gen_bool(0.5) {
            let (r, r_inc) = radical(&n2);
            let (n1, i) = random_submodule(&r, count, &mut rng);
            (n1, i.then(&r_inc).unwrap())
        } else {
            random_submodule(&n2, count, &mut rng)
        };
        let (n3, _) = cokernel(&inc);
        let ses = [&n1, &n2, &n3];
        for side in [Side::Left, Side::Right] {
            let anns: Vec<GradedIdeal> = ses.iter().map(|n| ann(s, n, side)).collect();
            let up_to = anns.iter().map(|a| a.reliable).min().unwrap().saturating_sub(1);
            ensure(up_to >= 3, || format!("{}: reliable range {up_to}", s.name))?;
            if anns.iter().all(|a| (1..=up_to).any(|d| a.spaces[d].rank() < s.h.dim(d))) {
                nontrivial.set(nontrivial.get() + 1);
            }
            for (a, b, c) in [(0, 2, 1), (1, 2, 0), (0, 1, 2)] {
                let prod = anns[a].product(&anns[b], &s.h).unwrap();
                ensure(included(&prod, &anns[c], up_to), || {
                    format!("{}: Ann(N{})Ann(N{}) ⊄ Ann(N{}) ({side:?})", s.name, a + 1, b + 1, c + 1)
                })?;
            }
        }
        Ok(())
    })?;
    if nontrivial.get() < 15 {
        return Err(format!("{}: only {} sequences with nontrivial ideals", s.name, nontrivial.get()));
    }
    Ok(cases)
}

pub fn direct_sum_intersection(s: &Setting) -> Check {
    run(30, 17, (any::<u64>(), any::<u64>()), |(s1, s2)| {
        let (_, a) = random(s, s1);
        let (_, b) = random(s, s2);
        let (sum, _, _) = direct_sum(&[a.clone(), b.clone()]).unwrap();
        for side in [Side::Left, Side::Right] {
            let both = ann(s, &a, side).intersect(&ann(s, &b, side));
            let whole = ann(s, &sum, side);
            ensure(equal_up_to(&whole, &both, s.truncation), || {
                format!("{}: {:?} vs {:?} ({side:?})", s.name, whole.dims(), both.dims())
            })?;
        }
        Ok(())
    })
}

/// Annihilators of the Ext tails agree for N, ΩN and Ω⁻¹N after the degree shift.
pub fn syzygy_invariance(s: &Setting) -> Check {
    run(30, 19, any::<u64>(), |seed| {
        let (_, n) = random(s, seed);
        let (om, co) = (syzygy(&n), cosyzygy(&n));
        let up_to = s.truncation / 2;
        // Ext^{p+1}(N, M) = Ext^p(ΩN, M) and Ext^{p-1}(N, M) = Ext^p(Ω⁻¹N, M), p ≥ 2;
        // dually Ext^{p-1}(M, N) = Ext^p(M, ΩN) and Ext^{p+1}(M, N) = Ext^p(M, Ω⁻¹N).
        let pairs = [
            ("Ω, projective", ann_from(s, &n, Side::Left, 2), ann_from(s, &om, Side::Left, 1)),
            ("Ω⁻¹, projective", ann_from(s, &n, Side::Left, 1), ann_from(s, &co, Side::Left, 2)),
            ("Ω, injective", ann_from(s, &n, Side::Right, 1), ann_from(s, &om, Side::Right, 2)),
            ("Ω⁻¹, injective", ann_from(s, &n, Side::Right, 2), ann_from(s, &co, Side::Right, 1)),
        ];
        for (what, a, b) in pairs {
            ensure(equal_up_to(&a, &b, up_to), || format!("{}: {what}", s.name))?;
        }
        Ok(())
    })
}

/// All elementary annihilator properties over every setting.
pub fn propositions(d: usize) -> Check {
    let mut total = 0;
    for s in settings(d) {
        total += module_annihilator_is_zero(&s)?;
        total += projectives_are_trivial(&s)?;
        total += short_exact_products(&s)?;
        total += direct_sum_intersection(&s)?;
        total += syzygy_invariance(&s)?;
    }
    Ok(total)
}

/// γ(H/Ann) against the pair complexity, wherever both estimates are stable.
pub fn dimension_consistency(d: usize) -> Check {
    let mut total = 0;
    for s in settings(d) {
        let mut compared = 0;
        let mut positive = 0;
        for (i, n) in suite_modules(&s, 16, 23).iter().enumerate() {
            let vi = injective_variety(&s.h, n).unwrap();
            let vp = projective_variety(&s.h, n).unwrap();
            let ci = pair_complexity(&s.m, n, d).unwrap();
            let cp = pair_complexity(n, &s.m, d).unwrap();
            for (kind, v, c) in [("V^i", &vi.dim, &ci), ("V^p", &vp.dim, &cp)] {
                if let (true, true, Some(a), Some(b)) = (v.stable, c.stable, v.gamma, c.gamma) {
                    if a != b {
                        return Err(format!(
                            "{}: module {i}, {kind} has dimension {a} but complexity {b}",
                            s.name
                        ));
                    }
                    compared += 1;
                    positive += usize::from(a > 0);
                }
            }
        }
        if compared < 30 || positive < 10 {
            return Err(format!("{}: {compared} stable comparisons, {positive} nontrivial", s.name));
        }
        total += compared;
    }
    Ok(total)
}

/// Finite generation evidence for the top implies it for `samples` random modules, on both sides.
pub fn fg_sampling(d: usize, samples: u32) -> Check {
    let generated = |v: &FgVerdict| matches!(v, FgVerdict::GeneratedInDegrees(_));
    let mut total = 0;
    for s in settings(d) {
        let top = semisimple_quotient(s.m.algebra());
        for side in [Side::Right, Side::Left] {
            let base = fg_evidence(&ext_as_module(&s.h, &top, side).unwrap()).unwrap();
            if !generated(&base.verdict) {
                return Err(format!("{}: no evidence for the top ({side:?})", s.name));
            }
            total += run(samples, 29, any::<u64>(), |seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let n = random_radical_module(
                    s.m.algebra(),
                    rng.gen_range(1..=2),
                    rng.gen_range(1..=3),
                    &mut rng,
                );
                let ev = fg_evidence(&ext_as_module(&s.h, &n, side).unwrap()).unwrap();
                ensure(generated(&ev.verdict), || format!("{}: {side:?} {:?}", s.name, ev.new_generators))
            })?;
        }
    }
    Ok(total)
}

/// dim Ext^n from cocycles against stable Hom of syzygies, n ≤ `n_max`, over all suite pairs.
pub fn ext_routes(n_max: usize) -> Check {
    let mut total = 0;
    for s in settings(n_max) {
        let mods = suite_modules(&s, 4, 31);
        for (i, x) in mods.iter().enumerate() {
            for (j, y) in mods.iter().enumerate() {
                let dims = ext_dims(x, y, n_max).unwrap();
                for (n, &e) in dims.iter().enumerate() {
                    let other = ext_dim_via_syzygy(x, y, n).unwrap();
                    if other != e {
                        return Err(format!("{}: ({i}, {j}) degree {n}: {e} vs {other}", s.name));
                    }
                    total += 1;
                }
            }
        }
    }
    Ok(total)
}

fn mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = (0..2).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn rank(m: &[[i64; 2]; 2]) -> usize {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det != 0 {
        2
    } else if m.iter().flatten().any(|&v| v != 0) {
        1
    } else {
        0
    }
}

/// Over k[x]/(x²) with basis (1, x): P_n = Λ and every differential is
/// multiplication by x. Hom(P_n, k) is the row (1, 0) and the coboundary sends φ to φ∘d.
pub fn hand_ext_dims(d: usize) -> Vec<usize> {
    let x = [[0, 0], [1, 0]];
    assert_eq!(rank(&mul(&x, &x)), 0, "d² = 0");
    assert_eq!(rank(&x), 1, "im d = ker d");
    let phi = [1, 0];
    let pulled: Vec<i64> = (0..2).map(|j| phi[0] * x[0][j] + phi[1] * x[1][j]).collect();
    let coboundary = usize::from(pulled.iter().any(|&v| v != 0));
    (0..=d).map(|n| 1 - coboundary - if n == 0 { 0 } else { coboundary }).collect()
}

pub fn dual_numbers_closed_form(d: usize) -> Check {
    let expected = hand_ext_dims(d);
    for field in [Field::Rational, Field::Prime(2), Field::Prime(7)] {
        let k = simple(&algebra(DUAL_NUMBERS, field), 0);
        let got = ext_dims(&k, &k, d).unwrap();
        if got != expected {
            return Err(format!("{field}: {got:?}"));
        }
        let terms = &min_proj_resolution(&k, d).term_dims()[..=d];
        if terms.iter().any(|&t| t != 2) {
            return Err(format!("{field}: resolution terms {terms:?}"));
        }
    }
    Ok(3 * (d + 1))
}
