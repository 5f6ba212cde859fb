//! Every verification suite must pass with zero failures over the exhaustive
//! GF(2) space (weights pinned to 1) and on seeded random spaces over GF(3)
//! and Z_4. The full-size runs live in the acceptance target; these keep the
//! per-crate test cycle quick.

use wbc_core::harness::{run_suite, suite_names, InstanceSpace};
use wbc_core::RingSpec;

fn assert_clean(suite: &str, space: &InstanceSpace) {
    let res = run_suite(suite, space).unwrap_or_else(|e| panic!("{suite}: {e}"));
    assert!(
        res.passed(),
        "{suite} over {:?}: {} failures, first: {:?}",
        space.ring,
        res.failures.len(),
        res.failures.first().map(|f| (&f.property, serde_json::to_string(&f.instance).unwrap()))
    );
}

#[test]
fn all_suites_exhaustive_gf2() {
    let gf2 = RingSpec::prime_field(2).unwrap();
    for suite in suite_names() {
        assert_clean(suite, &InstanceSpace::exhaustive(&gf2, 2));
    }
}

#[test]
fn all_suites_random_gf3() {
    let gf3 = RingSpec::prime_field(3).unwrap();
    for suite in suite_names() {
        assert_clean(suite, &InstanceSpace::random(&gf3, 2, 0xA11CE, 150));
    }
}

#[test]
fn all_suites_random_z4() {
    let z4 = RingSpec::modular(4).unwrap();
    for suite in suite_names() {
        assert_clean(suite, &InstanceSpace::random(&z4, 2, 0xB0B, 100));
    }
}

#[test]
fn sum_formula_over_gf5() {
    let gf5 = RingSpec::prime_field(5).unwrap();
    assert_clean("sum-formula", &InstanceSpace::random(&gf5, 2, 0x6F5, 150));
}

#[test]
fn suites_are_deterministic() {
    let gf3 = RingSpec::prime_field(3).unwrap();
    let space = InstanceSpace::random(&gf3, 2, 7777, 80);
    for suite in ["thm-5way", "hybrid-decomp", "bott-duffin-4way"] {
        let a = run_suite(suite, &space).unwrap();
        let b = run_suite(suite, &space).unwrap();
        assert_eq!(a, b, "{suite} must be deterministic for a fixed seed");
    }
}

#[test]
fn k1_spaces_work() {
    // scalar rings exercise the k = 1 corner of every solver
    let gf3 = RingSpec::prime_field(3).unwrap();
    for suite in ["thm-8way", "along-d-7way", "sum-formula"] {
        assert_clean(suite, &InstanceSpace::exhaustive(&gf3, 1));
    }
}

#[test]
fn k3_random_space_works() {
    // one bigger-dimension pass through the field solvers
    let gf2 = RingSpec::prime_field(2).unwrap();
    assert_clean("regularity", &InstanceSpace::random(&gf2, 3, 31337, 60));
    assert_clean("thm-5way", &InstanceSpace::random(&gf2, 3, 31338, 40));
}
