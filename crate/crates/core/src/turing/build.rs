//! Machines built by the reductions.

use super::encoding::{encode_machine, text_to_bits};
use super::{Move, Symbol, TuringMachine};

use Move::{L, R};
use Symbol::{Blank, One, Zero};

// Grows a machine state by state; transitions are added after all states
// are allocated.
struct Builder {
    states: usize,
    edges: Vec<(usize, Symbol, usize, Symbol, Move)>,
}

impl Builder {
    fn new() -> Builder {
        Builder {
            states: 0,
            edges: Vec::new(),
        }
    }

    fn state(&mut self) -> usize {
        self.states += 1;
        self.states - 1
    }

    fn states(&mut self, n: usize) -> Vec<usize> {
        (0..n).map(|_| self.state()).collect()
    }

    fn on(&mut self, q: usize, read: Symbol, next: usize, write: Symbol, d: Move) {
        self.edges.push((q, read, next, write, d));
    }

    /// Same move for every symbol, writing `write` (or the scanned symbol).
    fn always(&mut self, q: usize, next: usize, write: Option<Symbol>, d: Move) {
        for a in Symbol::ALL {
            self.on(q, a, next, write.unwrap_or(a), d);
        }
    }

    fn finish(self, start: usize) -> TuringMachine {
        let mut m = TuringMachine::new(self.states, start).expect("builder allocated the start state");
        for (q, a, q2, b, d) in self.edges {
            m.add(q, a, q2, b, d).expect("builder edges are consistent");
        }
        m
    }
}

fn symbol_of(c: char) -> Symbol {
    Symbol::from_char(c).expect("binary string")
}

/// One state, no transitions: halts at once with the input as output.
pub fn build_immediate_halter() -> TuringMachine {
    TuringMachine::new(1, 0).expect("one state")
}

/// One state looping to itself on every symbol; never halts.
pub fn build_looper() -> TuringMachine {
    let mut b = Builder::new();
    let q = b.state();
    b.always(q, q, None, R);
    b.finish(q)
}

/// Machine that ignores its input and writes `bits`: it overwrites the input
/// with `bits`, erases whatever is left of the input, and halts.
pub(crate) fn build_writer(bits: &str) -> TuringMachine {
    let mut b = Builder::new();
    let writes = b.states(bits.len());
    let tail = b.state();
    for (i, c) in bits.chars().enumerate() {
        let next = writes.get(i + 1).copied().unwrap_or(tail);
        b.always(writes[i], next, Some(symbol_of(c)), R);
    }
    // input is a contiguous 0/1 block, so its end is the first blank
    b.on(tail, Zero, tail, Blank, R);
    b.on(tail, One, tail, Blank, R);
    let start = writes.first().copied().unwrap_or(tail);
    b.finish(start)
}

/// The learner that ignores its dataset and outputs `⟨target⟩` as bits.
pub fn build_constant_learner(target: &TuringMachine) -> TuringMachine {
    build_writer(&text_to_bits(&encode_machine(target)))
}

/// A machine that, on any input, erases it, runs `m` on `w`, and if that
/// halts, outputs `w` and halts. If `m` never halts on `w`, neither does
/// the result, on any input.
///
/// Layout: `m`'s cell `i` lives in cells `2i` (a marker) and `2i + 1` (the
/// symbol). Markers are `0` for the leftmost block, `1` for other blocks `m`
/// has visited and blank beyond, which lets the machine find both ends of
/// `m`'s tape. One step of `m` costs two steps.
pub fn build_halt_probe(m: &TuringMachine, w: &str) -> TuringMachine {
    let w: Vec<Symbol> = w.chars().map(symbol_of).collect();
    let mut b = Builder::new();

    // erase the input, leaving the left marker in cell 0
    let start = b.state();
    let erase = b.state();
    let back = b.state();
    b.always(start, erase, Some(Zero), R);
    b.on(erase, Zero, erase, Blank, R);
    b.on(erase, One, erase, Blank, R);
    b.on(erase, Blank, back, Blank, L);
    b.on(back, Blank, back, Blank, L);

    // lay out w block-wise: block 0 symbol, then (marker 1, symbol) pairs
    let layout = b.states(2 * w.len().max(1) - 1);
    b.on(back, Zero, layout[0], Zero, R);
    let rewind_marker = b.state();
    let rewind_symbol = b.state();
    for (i, &q) in layout.iter().enumerate() {
        let next = layout.get(i + 1).copied().unwrap_or(rewind_marker);
        let write = if i % 2 == 0 {
            w.get(i / 2).copied().unwrap_or(Blank)
        } else {
            One
        };
        b.always(q, next, Some(write), R);
    }

    // back to block 0 two cells at a time, then start m on its symbol
    let sim: Vec<usize> = b.states(m.states());
    let move_right: Vec<usize> = b.states(m.states());
    let move_left: Vec<usize> = b.states(m.states());
    b.on(rewind_marker, Blank, rewind_symbol, Blank, L);
    b.on(rewind_marker, One, rewind_symbol, One, L);
    b.on(rewind_marker, Zero, sim[m.start()], Zero, R);
    b.always(rewind_symbol, rewind_marker, None, L);

    let find_end_marker = b.state();
    let find_end_symbol = b.state();
    let clear_symbol = b.state();
    let clear_marker = b.state();
    let output = b.states(w.len().saturating_sub(1));
    let halt = b.state();

    // m's steps on symbol cells; a missing transition of m starts cleanup
    for q in 0..m.states() {
        for a in Symbol::ALL {
            match m.transition(q, a) {
                Some(t) => {
                    let (via, d) = match t.direction {
                        R => (move_right[t.next], R),
                        L => (move_left[t.next], L),
                    };
                    b.on(sim[q], a, via, t.write, d);
                }
                None => b.on(sim[q], a, find_end_marker, a, R),
            }
        }
        // on a marker after a right move: mark the block visited
        b.always(move_right[q], sim[q], Some(One), R);
        // on a marker after a left move: the left edge keeps m in place
        b.on(move_left[q], Zero, sim[q], Zero, R);
        b.on(move_left[q], One, sim[q], One, L);
        b.on(move_left[q], Blank, sim[q], Blank, L);
    }

    // cleanup: walk to the first unvisited block, erase leftwards, write w
    b.on(find_end_marker, One, find_end_symbol, One, R);
    b.on(find_end_marker, Blank, clear_symbol, Blank, L);
    b.always(find_end_symbol, find_end_marker, None, R);
    b.always(clear_symbol, clear_marker, Some(Blank), L);
    b.on(clear_marker, One, clear_symbol, Blank, L);
    let first = w.first().copied().unwrap_or(Blank);
    let after = output.first().copied().unwrap_or(halt);
    b.on(clear_marker, Zero, after, first, R);
    for (i, &q) in output.iter().enumerate() {
        let next = output.get(i + 1).copied().unwrap_or(halt);
        b.always(q, next, Some(w[i + 1]), R);
    }
    b.finish(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turing::{parse_machine, simulate, SimulationResult};

    fn out(m: &TuringMachine, input: &str) -> Option<String> {
        simulate(m, input, 1_000_000).unwrap().output().map(String::from)
    }

    #[test]
    fn looper_is_total_and_diverges() {
        let m = build_looper();
        for a in Symbol::ALL {
            assert_eq!(m.transition(0, a).map(|t| t.next), Some(0));
        }
        assert!(matches!(
            simulate(&m, "", 100).unwrap(),
            SimulationResult::BudgetExhausted { .. }
        ));
    }

    #[test]
    fn writer_ignores_input() {
        let m = build_writer("0110");
        for input in ["", "1", "0000000", "1111"] {
            assert_eq!(out(&m, input).as_deref(), Some("0110"), "{input}");
        }
        assert_eq!(out(&build_writer(""), "101").as_deref(), Some(""));
    }

    #[test]
    fn probe_of_immediate_halter_outputs_w() {
        let m2 = build_halt_probe(&build_immediate_halter(), "01");
        for input in ["", "0", "111", "010101"] {
            assert_eq!(out(&m2, input).as_deref(), Some("01"), "{input}");
        }
        let m2 = build_halt_probe(&build_immediate_halter(), "");
        assert_eq!(out(&m2, "11").as_deref(), Some(""));
    }

    #[test]
    fn probe_of_looper_never_halts() {
        let m2 = build_halt_probe(&build_looper(), "0");
        assert!(matches!(
            simulate(&m2, "", 100_000).unwrap(),
            SimulationResult::BudgetExhausted { .. }
        ));
    }

    #[test]
    fn probe_halts_exactly_when_the_machine_does() {
        let machines = [
            // flips the input, then steps back two cells from its end
            "states 4 start 0\n0 0 -> 0 1 R\n0 1 -> 0 0 R\n0 _ -> 1 _ L\n1 0 -> 1 0 L\n1 1 -> 2 1 L\n2 0 -> 3 0 L\n2 1 -> 3 1 L\n",
            // binary increment from the right end; all-ones inputs bump the left edge
            "states 3 start 0\n0 0 -> 0 0 R\n0 1 -> 0 1 R\n0 _ -> 1 _ L\n1 1 -> 1 0 L\n1 _ -> 2 1 R\n",
            // loops when the input starts with 1
            "states 3 start 0\n0 1 -> 2 1 R\n2 0 -> 2 0 R\n2 1 -> 2 1 R\n2 _ -> 2 _ L\n",
            // appends 1, then turns 1s into 0s leftwards until a 0; bumps the edge on all-ones
            "states 3 start 0\n0 0 -> 0 0 R\n0 1 -> 0 1 R\n0 _ -> 2 1 L\n2 1 -> 2 0 L\n",
        ];
        for text in machines {
            let m = parse_machine(text).unwrap();
            for w in ["", "0", "1", "11", "0110", "1001", "111"] {
                let direct = simulate(&m, w, 10_000).unwrap();
                let probe = simulate(&build_halt_probe(&m, w), "1101", 100_000).unwrap();
                assert_eq!(
                    direct.output().is_some(),
                    probe.output().is_some(),
                    "{text} on {w}"
                );
                if direct.output().is_some() {
                    assert_eq!(probe.output(), Some(w));
                }
            }
        }
    }

    #[test]
    fn constant_learner_outputs_encoding() {
        let target = build_looper();
        let a = build_constant_learner(&target);
        let expected = text_to_bits(&encode_machine(&target));
        assert_eq!(out(&a, "").as_deref(), Some(expected.as_str()));
        assert_eq!(out(&a, "0101").as_deref(), Some(expected.as_str()));
    }
}
