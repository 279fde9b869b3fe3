//! Every example must run to completion.

#[allow(dead_code)]
#[path = "../examples/formulas.rs"]
mod formulas;

#[test]
fn formulas_example_runs() {
    formulas::run_example().expect("formulas example");
}

#[allow(dead_code)]
#[path = "../examples/matrices.rs"]
mod matrices;

#[test]
fn matrices_example_runs() {
    matrices::run_example().expect("matrices example");
}

#[allow(dead_code)]
#[path = "../examples/soundness.rs"]
mod soundness;

#[test]
fn soundness_example_runs() {
    soundness::run_example().expect("soundness example");
}

#[allow(dead_code)]
#[path = "../examples/proofs.rs"]
mod proofs;

#[test]
fn proofs_example_runs() {
    proofs::run_example().expect("proofs example");
}

#[allow(dead_code)]
#[path = "../examples/theorem_search.rs"]
mod theorem_search;

#[test]
fn theorem_search_example_runs() {
    theorem_search::run_example().expect("theorem_search example");
}

#[allow(dead_code)]
#[path = "../examples/dataset.rs"]
mod dataset;

#[test]
fn dataset_example_runs() {
    dataset::run_example().expect("dataset example");
}

#[allow(dead_code)]
#[path = "../examples/explanations.rs"]
mod explanations;

#[test]
fn explanations_example_runs() {
    explanations::run_example().expect("explanations example");
}

#[allow(dead_code)]
#[path = "../examples/turing_machines.rs"]
mod turing_machines;

#[test]
fn turing_machines_example_runs() {
    turing_machines::run_example().expect("turing_machines example");
}

#[allow(dead_code)]
#[path = "../examples/halt_reduction.rs"]
mod halt_reduction;

#[test]
fn halt_reduction_example_runs() {
    halt_reduction::run_example().expect("halt_reduction example");
}

#[allow(dead_code)]
#[path = "../examples/learner_probe.rs"]
mod learner_probe;

#[test]
fn learner_probe_example_runs() {
    learner_probe::run_example().expect("learner_probe example");
}

#[allow(dead_code)]
#[path = "../examples/command_line.rs"]
mod command_line;

#[test]
fn command_line_example_runs() {
    command_line::run_example().expect("command_line example");
}
