//! Every acceptance criterion at its stated scale and time limit; one
//! PASS/FAIL line per criterion.

use cyclocover_cli::checks::{run_check, Mutation, Scale};

fn criterion(id: u32) {
    let outcome = run_check(id, Scale::Full, Mutation::None);
    println!("{}", outcome.line());
    assert!(outcome.failures.is_empty(), "{}", outcome.line());
}

#[test]
fn criterion_01_corollary_conformance() {
    criterion(1);
}

#[test]
fn criterion_02_remark_conformance() {
    criterion(2);
}

#[test]
fn criterion_03_riemann_hurwitz() {
    criterion(3);
}

#[test]
fn criterion_04_two_adic_lemma() {
    criterion(4);
}

#[test]
fn criterion_05_unitary_flagship() {
    criterion(5);
}

#[test]
fn criterion_06_linear_flagship() {
    criterion(6);
}

#[test]
fn criterion_07_odd_characteristic_unitary() {
    criterion(7);
}

#[test]
fn criterion_08_dichotomy_sweep() {
    criterion(8);
}

#[test]
fn criterion_09_class_bookkeeping() {
    criterion(9);
}

#[test]
fn criterion_10_oracle_agreement() {
    criterion(10);
}
