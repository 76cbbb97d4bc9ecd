//! The acceptance battery as an integration-test target: one test per
//! criterion, each printing its pass/fail line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use typlab::acceptance as acc;

fn run(f: fn() -> acc::CriterionReport) {
    let r = f();
    println!("{}", r.line());
    assert!(r.pass, "{}", r.line());
}

#[test]
fn criterion_01_kac_typicality() {
    run(acc::c01_kac_typicality);
}

#[test]
fn criterion_02_kac_recurrence_reversal() {
    run(acc::c02_kac_recurrence_reversal);
}

#[test]
fn criterion_03_boltzmann_stirling() {
    run(acc::c03_boltzmann_stirling);
}

#[test]
fn criterion_04_sanov_binomial() {
    run(acc::c04_sanov_binomial);
}

#[test]
fn criterion_05_fenchel_duality() {
    run(acc::c05_fenchel_duality);
}

#[test]
fn criterion_06_coding_sandwich() {
    run(acc::c06_coding_sandwich);
}

#[test]
fn criterion_07_folklore_brudno() {
    run(acc::c07_folklore_brudno);
}

#[test]
fn criterion_08_smb() {
    run(acc::c08_smb);
}

#[test]
fn criterion_09_randomness_battery() {
    run(acc::c09_randomness_battery);
}

#[test]
fn criterion_10_brownian_stats() {
    run(acc::c10_brownian_stats);
}
