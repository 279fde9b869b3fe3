//! Soundness of H_X relative to a matrix: each axiom is designated-valid and
//! modus ponens preserves designation.

use hxlab::hilbert::{soundness_audit, AxiomSet};
use hxlab::matrix::parse_matrix;
use hxlab::{matrix_t, matrix_tprime};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let axioms = AxiomSet::hx();
    for (name, m) in [("T", matrix_t()), ("Tprime", matrix_tprime())] {
        let report = soundness_audit(&axioms, &m)?;
        println!("{name}\n{report}\n");
        assert!(report.passed());
    }

    // designating 1 too breaks modus ponens in Tprime's tables
    let loose =
        parse_matrix("values 3\ndesignated 1 2\nneg 1 2 1\nimp 0: 2 1 2\nimp 1: 2 2 2\nimp 2: 0 1 2\n")?;
    let report = soundness_audit(&axioms, &loose)?;
    println!("Tprime with 1 designated\n{report}");
    assert!(!report.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
