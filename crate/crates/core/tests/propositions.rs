//! Elementary properties of annihilator ideals, on random modules.

mod common;

use common::checks;
use common::settings;

const D: usize = 8;

fn each(check: fn(&common::Setting) -> checks::Check) {
    for s in settings(D) {
        if let Err(e) = check(&s) {
            panic!("{e}");
        }
    }
}

#[test]
fn module_has_zero_annihilator() {
    each(checks::module_annihilator_is_zero);
}

#[test]
fn projective_modules_have_trivial_varieties() {
    each(checks::projectives_are_trivial);
}

#[test]
fn products_of_annihilators_along_short_exact_sequences() {
    each(checks::short_exact_products);
}

#[test]
fn annihilator_of_a_direct_sum_is_the_intersection() {
    each(checks::direct_sum_intersection);
}

#[test]
fn annihilators_are_syzygy_and_cosyzygy_invariant() {
    each(checks::syzygy_invariance);
}
