//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Exact equality throughout; the time budgets are asserted too.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use relgw::verify::{self, Check};

fn assert_check(number: u32, budget_secs: u128, check: Check) {
    let status = if check.passed { "pass" } else { "FAIL" };
    println!(
        "criterion {:02} {:<26} {} ({} ms) {}",
        number, check.name, status, check.millis, check.detail
    );
    assert!(check.passed, "criterion {number} failed: {}", check.detail);
    assert!(
        check.millis <= budget_secs * 1000,
        "criterion {number} exceeded its {budget_secs} s budget ({} ms)",
        check.millis
    );
}

#[test]
fn criterion_01_quintic_degree_1() {
    assert_check(1, 30, verify::check_quintic_degree_1());
}

#[test]
fn criterion_02_quintic_degree_2() {
    assert_check(2, 600, verify::check_quintic_degree_2());
}

#[test]
fn criterion_03_quintic_degree_3() {
    assert_check(3, 3600, verify::check_quintic_degree_3());
}

#[test]
fn criterion_04_plane_curve_counts() {
    assert_check(4, 10, verify::check_kontsevich_plane_curves());
}

#[test]
fn criterion_05_hyperplane_consistency() {
    assert_check(5, 300, verify::check_hyperplane_consistency());
}

#[test]
fn criterion_06_cubic_surface_lines() {
    assert_check(6, 10, verify::check_cubic_surface_lines());
}

#[test]
fn criterion_07_elliptic_vanishing() {
    assert_check(7, 60, verify::check_elliptic_vanishing());
}

#[test]
fn criterion_08_tangent_conics() {
    assert_check(8, 60, verify::check_tangent_conics());
}

#[test]
fn criterion_09_wdvv_residuals() {
    assert_check(9, 300, verify::check_wdvv_residuals());
}

#[test]
fn criterion_10_axiom_suite() {
    assert_check(10, 300, verify::check_axiom_suite());
}

#[test]
fn criterion_11_cache_determinism() {
    assert_check(11, 120, verify::check_cache_determinism());
}

#[test]
fn criterion_12_enumerator_equivalence() {
    assert_check(12, 600, verify::check_enumerator_equivalence());
}
