//! Learners as machines: a learner reads an encoded dataset of a target's
//! input-output pairs and writes an encoded machine. The probe runs it and
//! compares what it wrote with the target.

use hxlab::turing::{
    build_constant_learner, desiredone_probe, parse_machine, probe_inputs, reduce_same_to_desiredone,
    DesiredOneInstance, DEFAULT_STEP_BUDGET,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let flip = parse_machine("states 1 start 0\n0 0 -> 0 1 R\n0 1 -> 0 0 R\n")?;
    let flip_twice = parse_machine(
        "states 3 start 0\n0 0 -> 1 1 R\n0 1 -> 1 0 R\n1 0 -> 2 0 L\n1 1 -> 2 1 L\n1 _ -> 2 _ L\n\
         2 0 -> 0 1 R\n2 1 -> 0 0 R\n",
    )?;
    let identity = parse_machine("states 1 start 0\n")?;
    let probes = probe_inputs(4);

    let learns_flip = DesiredOneInstance {
        learner: build_constant_learner(&flip),
        target: flip.clone(),
        inputs: vec!["0".into(), "0110".into()],
    };
    println!(
        "constant learner of the target: {}",
        desiredone_probe(&learns_flip, &probes, DEFAULT_STEP_BUDGET)?
    );

    // equivalence questions become learning questions with no data
    for (name, m1, m2) in [
        ("identity vs flip-twice", &identity, &flip_twice),
        ("identity vs flip", &identity, &flip),
    ] {
        let inst = reduce_same_to_desiredone(m1, m2);
        println!(
            "{name}: {}",
            desiredone_probe(&inst, &probes, DEFAULT_STEP_BUDGET)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
