//! Ext over the dual numbers against the periodic resolution written by hand.

mod common;

#[test]
fn hand_resolution_gives_one_dimensional_ext() {
    assert_eq!(common::checks::hand_ext_dims(20), vec![1; 21]);
}

#[test]
fn ext_of_the_simple_over_dual_numbers() {
    common::checks::dual_numbers_closed_form(20).unwrap();
}
