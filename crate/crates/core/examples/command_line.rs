//! Driving the `hxlab` command line in-process.

use hxlab::cli::run;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for args in [
        vec!["taut", "((p->q)->p)->p", "--matrix", "T"],
        vec!["taut", "((p->q)->p)->p", "--matrix", "Tprime"],
        vec!["classify", "~~(((p->q)->p)->p)"],
        vec!["eval", "p->q", "p=2", "q=1", "--matrix", "Tprime"],
        vec!["prove", "p->p", "--budget", "200"],
        vec!["taut", "(p->"],
    ] {
        let result = run(std::iter::once("hxlab").chain(args.iter().copied()));
        println!(
            "$ hxlab {}\n[exit {}] {}\n",
            args.join(" "),
            result.code,
            result.report
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
