//! Explanations as labelings: two matrices agree (up to renaming labels) on
//! the reference table, and the one formula where they stop agreeing is
//! Peirce's law.

use hxlab::dataset::{classification_explanation, parse_dataset, REFERENCE_TSV};
use hxlab::explain::{generalization_set, isomorphic_on, FiniteUniverse};
use hxlab::{matrix_t, matrix_tprime, parse_formula, Formula};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let table = parse_dataset(REFERENCE_TSV)?;
    let mut formulas: Vec<Formula> = table.iter().map(|ex| ex.formula.clone()).collect();
    let known: Vec<String> = formulas.iter().map(|f| f.render()).collect();
    formulas.push(parse_formula("((p->q)->p)->p")?);
    let universe = FiniteUniverse::new(formulas.iter().map(|f| f.render()));

    let classical = classification_explanation(&formulas, &matrix_t())?;
    let three = classification_explanation(&formulas, &matrix_tprime())?;
    let g = isomorphic_on(&classical, &three, &known)?.ok_or("not isomorphic on the table")?;
    println!("on the table: {g}");

    let report = generalization_set(&[classical, three], &known, &universe)?;
    println!("{report}");
    assert_eq!(report.adversarial, vec!["((p->q)->p)->p".to_string()]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
