//! Mapping a halting question about `M` on `w` to a pair of machines that
//! differ exactly when `M` halts on `w`.

use hxlab::turing::{
    bounded_io_equivalence, build_looper, decode_machine_pair, encode_pair, parse_machine, probe_inputs,
    reduce_halt_to_co_same, reduce_halt_to_co_same_encoded,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // halts on inputs of even length, loops otherwise
    let m = parse_machine(
        "states 3 start 0\n0 0 -> 1 0 R\n0 1 -> 1 1 R\n1 0 -> 0 0 R\n1 1 -> 0 1 R\n1 _ -> 2 _ R\n\
         2 0 -> 2 0 R\n2 1 -> 2 1 R\n2 _ -> 2 _ R\n",
    )?;
    for w in ["01", "011"] {
        let (looper, probe) = reduce_halt_to_co_same(&m, w);
        assert_eq!(looper, build_looper());
        let verdict = bounded_io_equivalence(&looper, &probe, &probe_inputs(3), 100_000)?;
        println!("w = {w}: probe has {} states; {verdict}", probe.states());
    }

    let encoded = reduce_halt_to_co_same_encoded(&encode_pair(&m, "10"))?;
    let (_, probe) = decode_machine_pair(&encoded)?;
    println!(
        "encoded output: {} bytes, probe with {} states",
        encoded.len(),
        probe.states()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
