//! The dimension of a support variety agrees with the pair complexity.

mod common;

#[test]
fn variety_dimension_is_pair_complexity() {
    let compared = common::checks::dimension_consistency(10).unwrap();
    assert!(compared >= 60);
}
