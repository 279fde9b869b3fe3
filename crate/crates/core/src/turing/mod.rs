//! Deterministic single-tape Turing machines over `{0, 1, _}`.
//!
//! The tape is unbounded to the right and has a left edge: a left move on
//! cell 0 leaves the head where it is. A machine halts when no transition is
//! defined for its current state and scanned symbol. The output of a halted
//! machine is the tape from the leftmost to the rightmost non-blank cell,
//! with any blanks in between written as `_`.
//!
//! Machine text format:
//!
//! ```text
//! states 2 start 0
//! 0 1 -> 0 1 R
//! 0 _ -> 1 1 R
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

mod build;
mod corpus;
mod encoding;
mod equiv;

pub use build::{build_constant_learner, build_halt_probe, build_immediate_halter, build_looper};
pub use corpus::{corpus, CorpusEntry};
pub use encoding::{
    bits_to_text, decode_dataset, decode_desiredone, decode_fields, decode_machine, decode_machine_pair,
    decode_pair, encode_dataset, encode_desiredone, encode_fields, encode_machine, encode_machine_pair,
    encode_pair, text_to_bits, DesiredOneInstance, EncodingError,
};
pub use equiv::{
    bounded_io_equivalence, desiredone_probe, desiredone_probe_encoded, observe, probe_inputs,
    reduce_halt_to_co_same, reduce_halt_to_co_same_encoded, reduce_same_to_desiredone,
    reduce_same_to_desiredone_encoded, Behavior, DifferenceReason, EquivalenceVerdict, ProbeError,
    ProbeVerdict,
};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    Blank,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Blank];

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Blank => '_',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            '_' => Some(Symbol::Blank),
            _ => None,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: usize,
    pub write: Symbol,
    pub direction: Move,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineError {
    #[error("machine needs at least one state")]
    NoStates,
    #[error("state {0} out of range")]
    StateOutOfRange(usize),
    #[error("two transitions for state {state} on {symbol}")]
    Duplicate { state: usize, symbol: char },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("input symbol {0:?} is not 0 or 1")]
    BadInput(char),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TuringMachine {
    start: usize,
    delta: Vec<[Option<Transition>; 3]>,
}

impl TuringMachine {
    /// A machine with `states` states and no transitions.
    pub fn new(states: usize, start: usize) -> Result<TuringMachine, MachineError> {
        if states == 0 {
            return Err(MachineError::NoStates);
        }
        if start >= states {
            return Err(MachineError::StateOutOfRange(start));
        }
        Ok(TuringMachine {
            start,
            delta: vec![[None; 3]; states],
        })
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Adds a transition; redefining one is an error.
    pub fn add(
        &mut self,
        state: usize,
        read: Symbol,
        next: usize,
        write: Symbol,
        direction: Move,
    ) -> Result<(), MachineError> {
        for s in [state, next] {
            if s >= self.states() {
                return Err(MachineError::StateOutOfRange(s));
            }
        }
        let slot = &mut self.delta[state][read.index()];
        if slot.is_some() {
            return Err(MachineError::Duplicate {
                state,
                symbol: read.as_char(),
            });
        }
        *slot = Some(Transition {
            next,
            write,
            direction,
        });
        Ok(())
    }

    pub fn transition(&self, state: usize, read: Symbol) -> Option<Transition> {
        self.delta.get(state).and_then(|row| row[read.index()])
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, Symbol, Transition)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            Symbol::ALL
                .iter()
                .filter_map(move |&a| row[a.index()].map(|t| (q, a, t)))
        })
    }

    /// States from which the machine can never halt: every transition is
    /// defined and stays inside the set. Entering one means divergence.
    pub fn trap_states(&self) -> Vec<bool> {
        let mut trap: Vec<bool> = self
            .delta
            .iter()
            .map(|row| row.iter().all(Option::is_some))
            .collect();
        loop {
            let mut changed = false;
            for q in 0..self.states() {
                if trap[q] && self.delta[q].iter().flatten().any(|t| !trap[t.next]) {
                    trap[q] = false;
                    changed = true;
                }
            }
            if !changed {
                return trap;
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("states {} start {}\n", self.states(), self.start);
        for (q, a, t) in self.transitions() {
            out.push_str(&format!(
                "{} {} -> {} {} {}\n",
                q,
                a.as_char(),
                t.next,
                t.write.as_char(),
                match t.direction {
                    Move::L => 'L',
                    Move::R => 'R',
                }
            ));
        }
        out
    }
}

impl fmt::Display for TuringMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn parse_symbol(tok: &str) -> Result<Symbol, String> {
    let mut chars = tok.chars();
    match (chars.next().and_then(Symbol::from_char), chars.next()) {
        (Some(s), None) => Ok(s),
        _ => Err(format!("expected a symbol 0, 1 or _, found {tok:?}")),
    }
}

fn parse_state(tok: &str) -> Result<usize, String> {
    tok.parse()
        .map_err(|_| format!("expected a state number, found {tok:?}"))
}

pub fn parse_machine(text: &str) -> Result<TuringMachine, MachineError> {
    let mut machine: Option<TuringMachine> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: String| MachineError::Syntax { line, message };
        let toks: Vec<&str> = content.split_whitespace().collect();
        match (machine.as_mut(), toks.as_slice()) {
            (None, &["states", n, "start", s]) => {
                let n = parse_state(n).map_err(syntax)?;
                let s = parse_state(s).map_err(syntax)?;
                machine = Some(TuringMachine::new(n, s).map_err(|e| syntax(e.to_string()))?);
            }
            (None, _) => return Err(syntax("expected header `states <n> start <s>`".into())),
            (Some(m), &[q, a, "->", q2, b, d]) => {
                let q = parse_state(q).map_err(syntax)?;
                let a = parse_symbol(a).map_err(syntax)?;
                let q2 = parse_state(q2).map_err(syntax)?;
                let b = parse_symbol(b).map_err(syntax)?;
                let d = match d {
                    "L" => Move::L,
                    "R" => Move::R,
                    other => return Err(syntax(format!("expected L or R, found {other:?}"))),
                };
                m.add(q, a, q2, b, d).map_err(|e| syntax(e.to_string()))?;
            }
            (Some(_), _) => return Err(syntax("expected `q a -> q' b D`".into())),
        }
    }
    machine.ok_or(MachineError::Syntax {
        line: text.lines().count().max(1),
        message: "missing header `states <n> start <s>`".into(),
    })
}

impl FromStr for TuringMachine {
    type Err = MachineError;

    fn from_str(s: &str) -> Result<TuringMachine, MachineError> {
        parse_machine(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SimulationResult {
    Halted { output: String, steps: u64 },
    BudgetExhausted { budget: u64 },
}

impl SimulationResult {
    pub fn output(&self) -> Option<&str> {
        match self {
            SimulationResult::Halted { output, .. } => Some(output),
            SimulationResult::BudgetExhausted { .. } => None,
        }
    }
}

impl fmt::Display for SimulationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimulationResult::Halted { output, steps } => {
                write!(f, "halted after {steps} steps, output {output:?}")
            }
            SimulationResult::BudgetExhausted { budget } => {
                write!(f, "no halt within {budget} steps")
            }
        }
    }
}

/// A running machine.
pub(crate) struct Run<'a> {
    machine: &'a TuringMachine,
    tape: Vec<Symbol>,
    head: usize,
    pub state: usize,
    pub steps: u64,
}

impl<'a> Run<'a> {
    pub fn new(machine: &'a TuringMachine, input: &str) -> Result<Run<'a>, MachineError> {
        let tape = input
            .chars()
            .map(|c| match c {
                '0' => Ok(Symbol::Zero),
                '1' => Ok(Symbol::One),
                other => Err(MachineError::BadInput(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Run {
            machine,
            tape,
            head: 0,
            state: machine.start,
            steps: 0,
        })
    }

    /// True when no transition applies in the current configuration.
    pub fn halted(&self) -> bool {
        let read = self.tape.get(self.head).copied().unwrap_or(Symbol::Blank);
        self.machine.transition(self.state, read).is_none()
    }

    /// One step; false when the machine has halted.
    pub fn step(&mut self) -> bool {
        if self.head == self.tape.len() {
            self.tape.push(Symbol::Blank);
        }
        let Some(t) = self.machine.transition(self.state, self.tape[self.head]) else {
            return false;
        };
        self.tape[self.head] = t.write;
        match t.direction {
            Move::L => self.head = self.head.saturating_sub(1),
            Move::R => self.head += 1,
        }
        self.state = t.next;
        self.steps += 1;
        true
    }

    pub fn output(&self) -> String {
        let first = self.tape.iter().position(|&s| s != Symbol::Blank);
        let last = self.tape.iter().rposition(|&s| s != Symbol::Blank);
        match (first, last) {
            (Some(a), Some(b)) => self.tape[a..=b].iter().map(|s| s.as_char()).collect(),
            _ => String::new(),
        }
    }
}

/// Runs `machine` on `input` for at most `budget` steps.
pub fn simulate(machine: &TuringMachine, input: &str, budget: u64) -> Result<SimulationResult, MachineError> {
    let mut run = Run::new(machine, input)?;
    while run.steps < budget {
        if !run.step() {
            return Ok(SimulationResult::Halted {
                output: run.output(),
                steps: run.steps,
            });
        }
    }
    // the budget is spent; halting right now still counts
    if run.halted() {
        return Ok(SimulationResult::Halted {
            output: run.output(),
            steps: run.steps,
        });
    }
    Ok(SimulationResult::BudgetExhausted { budget })
}
