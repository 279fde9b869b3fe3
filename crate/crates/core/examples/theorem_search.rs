//! Streaming theorems of H_X and searching for proofs.

use hxlab::hilbert::{bounded_prove, check_proof, AxiomSet, TheoremBudget, TheoremEnumerator};
use hxlab::parse_formula;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budget = TheoremBudget {
        max_theorems: 12,
        ..TheoremBudget::default()
    };
    let mut stream = TheoremEnumerator::new(AxiomSet::hx(), budget);
    while let Some(th) = stream.next_theorem() {
        println!("{:>3}  {}", th.index + 1, th.formula);
    }
    let last = stream.emitted() - 1;
    println!("proof of theorem {}:\n{}", last + 1, stream.proof(last));

    let budget = TheoremBudget {
        max_theorems: 1000,
        pool_size: 0,
        ..TheoremBudget::default()
    };
    let target = parse_formula("p->~~p")?;
    let proof = bounded_prove(&target, &AxiomSet::hx(), budget).ok_or("p->~~p not reached")?;
    check_proof(&proof, &AxiomSet::hx())?;
    println!("{target} in {} steps", proof.len());

    let peirce = parse_formula("((p->q)->p)->p")?;
    assert!(bounded_prove(&peirce, &AxiomSet::hx(), budget).is_none());
    println!(
        "{peirce}: nothing among the first {} theorems",
        budget.max_theorems
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
