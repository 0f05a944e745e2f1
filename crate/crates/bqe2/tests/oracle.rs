//! Engine against dense nalgebra oracles on [-3,3]^d windows.

mod common;

use common::{compare, composition_cases, functional_cases, TOL};

#[test]
fn composition_and_adjoint_match_dense_products() {
    let cases = composition_cases();
    assert_eq!(cases.len(), 18);
    for (name, window, e) in cases {
        let (dev, cols) = compare(window, &e);
        assert!(cols >= 20, "{name}: only {cols} exact columns");
        assert!(dev <= TOL, "{name}: deviation {dev:e}");
    }
}

#[test]
fn functional_calculus_matches_dense_spectral_oracle() {
    for (name, dev) in functional_cases() {
        assert!(dev <= TOL, "{name}: deviation {dev:e}");
    }
}
