//! Ext dimensions from cocycles on a resolution against stable Hom of syzygies.

mod common;

#[test]
fn cohomology_and_syzygy_routes_agree() {
    common::checks::ext_routes(10).unwrap();
}
