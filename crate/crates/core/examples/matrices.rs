//! Evaluating formulas in the two-valued matrix T and the three-valued
//! matrix Tprime, and loading a matrix from text.

use hxlab::matrix::{check_tautology, classify, evaluate, parse_matrix, render_matrix, Assignment};
use hxlab::{matrix_t, matrix_tprime, parse_formula};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let peirce = parse_formula("((p->q)->p)->p")?;
    for (name, m) in [("T", matrix_t()), ("Tprime", matrix_tprime())] {
        println!("{name}: designated {:?}", m.designated_values());
        println!("  Peirce: {:?}", check_tautology(&peirce, &m)?);
        println!(
            "  ~~Peirce classifies {}",
            classify(&peirce.clone().negated(2), &m)?
        );
    }

    let a = Assignment::new().with("p", 0).with("q", 1);
    println!(
        "Peirce at {a} in Tprime = {}",
        evaluate(&peirce, &matrix_tprime(), &a)?
    );

    // a third matrix from its text form: Lukasiewicz three-valued logic
    let lukasiewicz = parse_matrix(
        "values 3\n\
         designated 2\n\
         neg 2 1 0\n\
         imp 0: 2 2 2\n\
         imp 1: 1 2 2\n\
         imp 2: 0 1 2\n",
    )?;
    print!("{}", render_matrix(&lukasiewicz));
    println!("  Peirce: {:?}", check_tautology(&peirce, &lukasiewicz)?);
    println!(
        "  p->p:   {:?}",
        check_tautology(&parse_formula("p->p")?, &lukasiewicz)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
