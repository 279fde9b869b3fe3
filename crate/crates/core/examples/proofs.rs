//! Writing, checking and rejecting H_X proofs in the text format.

use hxlab::hilbert::{check_proof, parse_proof, AxiomSet};

const IDENTITY: &str = "\
# p->p from X1 and X2
1. p->q->p ; AX1
2. (p->q->r)->(p->q)->p->r ; AX2
3. (p->(q->p)->p)->(p->q->p)->p->p ; SUB 2 {q:=q->p; r:=p}
4. p->(q->p)->p ; SUB 1 {q:=q->p}
5. (p->q->p)->p->p ; MP 3 4
6. p->p ; MP 5 1
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let axioms = AxiomSet::hx();
    for (i, ax) in axioms.iter().enumerate() {
        println!("X{}: {ax}", i + 1);
    }

    let proof = parse_proof(IDENTITY)?;
    check_proof(&proof, &axioms)?;
    println!("accepted: {}", proof.conclusion().unwrap());

    let broken = IDENTITY.replace("MP 5 1", "MP 5 2");
    let rejection = check_proof(&parse_proof(&broken)?, &axioms).unwrap_err();
    println!("broken copy: {rejection}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
