//! Acceptance gate: one test per cross-validation battery, so the test
//! list reads as one pass/fail line per criterion. The `suite` subcommand
//! runs the same batteries from the command line.

use ndpm::suite::{
    battery_boolean_membership, battery_clock, battery_crossval, battery_figures,
    battery_oracle_agreement, battery_representation, battery_scaling_invariance, battery_stconn,
    BatteryResult,
};

fn assert_battery(r: BatteryResult) {
    println!("{:<16} {}  ({:.2}s)  {}", r.name, if r.passed { "pass" } else { "FAIL" }, r.seconds, r.detail);
    assert!(r.passed, "battery {} failed: {}", r.name, r.detail);
}

#[test]
fn criterion_1_representation_soundness() {
    assert_battery(battery_representation());
}

#[test]
fn criterion_2_figure_fidelity() {
    assert_battery(battery_figures());
}

#[test]
fn criterion_3_stconn_against_oracle() {
    assert_battery(battery_stconn());
}

#[test]
fn criterion_4_acyclicity_transform() {
    assert_battery(battery_clock());
}

#[test]
fn criterion_5_simulator_operator_equivalence() {
    assert_battery(battery_crossval());
}

#[test]
fn criterion_6_oracle_equivalence() {
    assert_battery(battery_oracle_agreement());
}

#[test]
fn criterion_7_boolean_membership() {
    assert_battery(battery_boolean_membership());
}

#[test]
fn criterion_8_positivity_invariance() {
    assert_battery(battery_scaling_invariance());
}
