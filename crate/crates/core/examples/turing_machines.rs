//! Simulating single-tape machines and spotting provable divergence.

use hxlab::turing::{corpus, observe, parse_machine, simulate, Behavior};

const SUCCESSOR_ON_ONES: &str = "\
# unary successor: walk over the 1s, append one more
states 2 start 0
0 1 -> 0 1 R
0 _ -> 1 1 R
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = parse_machine(SUCCESSOR_ON_ONES)?;
    for input in ["", "1", "111"] {
        println!("{input:>4} -> {}", simulate(&m, input, 1000)?);
    }
    // 0 has no transition in state 0, so the machine halts on it at once
    println!("{:>4} -> {}", "0101", simulate(&m, "0101", 1000)?);

    for entry in corpus().iter().filter(|e| e.name.starts_with("halt-")) {
        let seen: Vec<String> = ["", "0", "1", "01", "110"]
            .iter()
            .map(|w| match observe(&entry.machine, w, 10_000) {
                Ok(Behavior::Halted { output, .. }) => format!("{w:?}->{output:?}"),
                Ok(Behavior::Diverges { .. }) => format!("{w:?}->loops"),
                Ok(Behavior::Unknown { .. }) => format!("{w:?}->?"),
                Err(e) => e.to_string(),
            })
            .collect();
        println!("{:<22} {}", entry.name, seen.join("  "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
