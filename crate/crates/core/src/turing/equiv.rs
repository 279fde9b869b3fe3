//! Bounded input-output comparison of machines and the two reductions.
//!
//! Input-output equivalence is not recognizable, so the checks here only
//! ever refute it. A machine's behavior on an input is one of: halted with
//! some output, provably divergent (it entered a trap set of states, see
//! [`TuringMachine::trap_states`]), or unknown after the step budget.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use super::build::{build_constant_learner, build_halt_probe, build_looper};
use super::encoding::{
    bits_to_text, decode_desiredone, decode_machine, decode_machine_pair, decode_pair, encode_dataset,
    encode_desiredone, encode_machine_pair, text_to_bits, DesiredOneInstance, EncodingError,
};
use super::{MachineError, Run, TuringMachine};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Behavior {
    Halted {
        output: String,
        steps: u64,
    },
    /// Entered a trap set after `steps` steps.
    Diverges {
        steps: u64,
    },
    Unknown {
        budget: u64,
    },
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Behavior::Halted { output, steps } => write!(f, "halts after {steps} steps with {output:?}"),
            Behavior::Diverges { steps } => write!(f, "diverges (trapped after {steps} steps)"),
            Behavior::Unknown { budget } => write!(f, "undecided after {budget} steps"),
        }
    }
}

/// Runs `m` on `input` for at most `budget` steps, stopping early once it is
/// provably trapped.
pub fn observe(m: &TuringMachine, input: &str, budget: u64) -> Result<Behavior, MachineError> {
    let trap = m.trap_states();
    let mut run = Run::new(m, input)?;
    loop {
        if trap[run.state] {
            return Ok(Behavior::Diverges { steps: run.steps });
        }
        if run.steps == budget {
            // a halt right at the budget still counts
            if run.halted() {
                return Ok(Behavior::Halted {
                    output: run.output(),
                    steps: run.steps,
                });
            }
            return Ok(Behavior::Unknown { budget });
        }
        if !run.step() {
            return Ok(Behavior::Halted {
                output: run.output(),
                steps: run.steps,
            });
        }
    }
}

fn observably_different(a: &Behavior, b: &Behavior) -> bool {
    use Behavior::*;
    match (a, b) {
        (Halted { output: x, .. }, Halted { output: y, .. }) => x != y,
        (Halted { .. }, Diverges { .. }) | (Diverges { .. }, Halted { .. }) => true,
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    ProvenDifferent {
        witness: String,
        left: Behavior,
        right: Behavior,
    },
    IndistinguishableWithinBudget,
}

impl EquivalenceVerdict {
    pub fn is_different(&self) -> bool {
        matches!(self, EquivalenceVerdict::ProvenDifferent { .. })
    }
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceVerdict::ProvenDifferent { witness, left, right } => {
                write!(f, "proven different on {witness:?}: first {left}; second {right}")
            }
            EquivalenceVerdict::IndistinguishableWithinBudget => {
                f.write_str("indistinguishable within budget")
            }
        }
    }
}

/// All binary strings of length at most `max_len`, shortest first, then
/// lexicographic.
pub fn probe_inputs(max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut level = vec![String::new()];
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|s| [format!("{s}0"), format!("{s}1")])
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// Compares `a` and `b` on every input. The witness, if any, is the first
/// distinguishing input in shortest-then-lexicographic order. Never claims
/// equivalence.
pub fn bounded_io_equivalence(
    a: &TuringMachine,
    b: &TuringMachine,
    inputs: &[String],
    budget: u64,
) -> Result<EquivalenceVerdict, MachineError> {
    let mut inputs: Vec<&String> = inputs.iter().collect();
    inputs.sort_by(|x, y| (x.len(), *x).cmp(&(y.len(), *y)));
    inputs.dedup();
    let found = inputs
        .par_iter()
        .map(|x| -> Result<Option<EquivalenceVerdict>, MachineError> {
            let left = observe(a, x, budget)?;
            let right = observe(b, x, budget)?;
            Ok(
                observably_different(&left, &right).then(|| EquivalenceVerdict::ProvenDifferent {
                    witness: (*x).clone(),
                    left,
                    right,
                }),
            )
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    match found {
        Some(Ok(Some(verdict))) => Ok(verdict),
        Some(Err(e)) => Err(e),
        _ => Ok(EquivalenceVerdict::IndistinguishableWithinBudget),
    }
}

/// `⟨M, w⟩ -> ⟨M1, M2⟩` with M1 the looper and M2 the halt probe of M on w:
/// M halts on w exactly when M1 and M2 are not input-output equivalent.
pub fn reduce_halt_to_co_same(m: &TuringMachine, w: &str) -> (TuringMachine, TuringMachine) {
    (build_looper(), build_halt_probe(m, w))
}

pub fn reduce_halt_to_co_same_encoded(pair: &str) -> Result<String, EncodingError> {
    let (m, w) = decode_pair(pair)?;
    let (m1, m2) = reduce_halt_to_co_same(&m, &w);
    Ok(encode_machine_pair(&m1, &m2))
}

/// `⟨M1, M2⟩ -> ⟨A, M1, ∅⟩` with A the learner that always outputs `⟨M2⟩`:
/// M1 and M2 are equivalent exactly when A learns M1 from no data.
pub fn reduce_same_to_desiredone(m1: &TuringMachine, m2: &TuringMachine) -> DesiredOneInstance {
    DesiredOneInstance {
        learner: build_constant_learner(m2),
        target: m1.clone(),
        inputs: Vec::new(),
    }
}

pub fn reduce_same_to_desiredone_encoded(pair: &str) -> Result<String, EncodingError> {
    let (m1, m2) = decode_machine_pair(pair)?;
    Ok(encode_desiredone(&reduce_same_to_desiredone(&m1, &m2)))
}

/// Why a learner's output is known to miss the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DifferenceReason {
    /// The learned machine and the target behave differently on `witness`.
    Behavior {
        witness: String,
        target: Behavior,
        learned: Behavior,
    },
    /// The learner provably never halts on the dataset.
    LearnerDiverges { steps: u64 },
    /// The learner's output does not decode to a machine.
    UndecodableOutput(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    ProvenDifferent(DifferenceReason),
    IndistinguishableWithinBudget,
}

impl ProbeVerdict {
    pub fn is_different(&self) -> bool {
        matches!(self, ProbeVerdict::ProvenDifferent(_))
    }
}

impl fmt::Display for ProbeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeVerdict::IndistinguishableWithinBudget => f.write_str("indistinguishable within budget"),
            ProbeVerdict::ProvenDifferent(DifferenceReason::Behavior {
                witness,
                target,
                learned,
            }) => write!(
                f,
                "proven different on {witness:?}: target {target}; learned {learned}"
            ),
            ProbeVerdict::ProvenDifferent(DifferenceReason::LearnerDiverges { steps }) => {
                write!(
                    f,
                    "proven different: learner trapped after {steps} steps, no output"
                )
            }
            ProbeVerdict::ProvenDifferent(DifferenceReason::UndecodableOutput(msg)) => {
                write!(f, "proven different: learner output is not a machine ({msg})")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbeError {
    #[error("known input {input:?} is not in the target's halting set: {behavior}")]
    OutsideHaltingSet { input: String, behavior: Behavior },
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}

/// Runs the learner on the target's dataset over the known inputs, decodes
/// its output as a machine and compares it with the target on `probe`.
pub fn desiredone_probe(
    inst: &DesiredOneInstance,
    probe: &[String],
    budget: u64,
) -> Result<ProbeVerdict, ProbeError> {
    let mut pairs = Vec::with_capacity(inst.inputs.len());
    for x in &inst.inputs {
        match observe(&inst.target, x, budget)? {
            Behavior::Halted { output, .. } => pairs.push((x.clone(), output)),
            behavior => {
                return Err(ProbeError::OutsideHaltingSet {
                    input: x.clone(),
                    behavior,
                })
            }
        }
    }
    let data = text_to_bits(&encode_dataset(&pairs));
    let output = match observe(&inst.learner, &data, budget)? {
        Behavior::Halted { output, .. } => output,
        Behavior::Diverges { steps } => {
            return Ok(ProbeVerdict::ProvenDifferent(DifferenceReason::LearnerDiverges {
                steps,
            }))
        }
        // still running: nothing is proven
        Behavior::Unknown { .. } => return Ok(ProbeVerdict::IndistinguishableWithinBudget),
    };
    let learned = match bits_to_text(&output).and_then(|text| decode_machine(&text)) {
        Ok(m) => m,
        Err(e) => {
            return Ok(ProbeVerdict::ProvenDifferent(
                DifferenceReason::UndecodableOutput(e.to_string()),
            ))
        }
    };
    Ok(
        match bounded_io_equivalence(&inst.target, &learned, probe, budget)? {
            EquivalenceVerdict::ProvenDifferent { witness, left, right } => {
                ProbeVerdict::ProvenDifferent(DifferenceReason::Behavior {
                    witness,
                    target: left,
                    learned: right,
                })
            }
            EquivalenceVerdict::IndistinguishableWithinBudget => ProbeVerdict::IndistinguishableWithinBudget,
        },
    )
}

/// [`desiredone_probe`] on an encoded `⟨A, E, X⟩`.
pub fn desiredone_probe_encoded(
    instance: &str,
    probe: &[String],
    budget: u64,
) -> Result<ProbeVerdict, ProbeError> {
    desiredone_probe(&decode_desiredone(instance)?, probe, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turing::{build_immediate_halter, parse_machine, DEFAULT_STEP_BUDGET};

    fn writes(bit: char) -> TuringMachine {
        parse_machine(&format!(
            "states 2 start 0\n0 _ -> 1 {bit} R\n0 0 -> 1 {bit} R\n0 1 -> 1 {bit} R\n"
        ))
        .unwrap()
    }

    #[test]
    fn probe_inputs_are_ordered() {
        let p = probe_inputs(2);
        assert_eq!(p, vec!["", "0", "1", "00", "01", "10", "11"]);
        assert_eq!(probe_inputs(6).len(), 127);
    }

    #[test]
    fn identical_machines_are_never_different() {
        let m = writes('0');
        let verdict = bounded_io_equivalence(&m, &m, &probe_inputs(4), 1000).unwrap();
        assert_eq!(verdict, EquivalenceVerdict::IndistinguishableWithinBudget);
        let l = build_looper();
        assert!(!bounded_io_equivalence(&l, &l, &probe_inputs(3), 1000)
            .unwrap()
            .is_different());
    }

    #[test]
    fn different_outputs_on_empty_input() {
        let verdict = bounded_io_equivalence(&writes('0'), &writes('1'), &probe_inputs(3), 100).unwrap();
        match verdict {
            EquivalenceVerdict::ProvenDifferent { witness, left, right } => {
                assert_eq!(witness, "");
                assert_eq!(
                    left,
                    Behavior::Halted {
                        output: "0".into(),
                        steps: 1
                    }
                );
                assert_eq!(
                    right,
                    Behavior::Halted {
                        output: "1".into(),
                        steps: 1
                    }
                );
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn halt_reduction_directions() {
        let (m1, m2) = reduce_halt_to_co_same(&build_immediate_halter(), "01");
        let verdict = bounded_io_equivalence(&m1, &m2, &[String::new()], 10_000).unwrap();
        assert!(
            matches!(verdict, EquivalenceVerdict::ProvenDifferent { ref witness, .. } if witness.is_empty())
        );

        let (m1, m2) = reduce_halt_to_co_same(&build_looper(), "0");
        for budget in [10, 1000, 100_000] {
            let verdict = bounded_io_equivalence(&m1, &m2, &probe_inputs(3), budget).unwrap();
            assert_eq!(verdict, EquivalenceVerdict::IndistinguishableWithinBudget);
        }
        // the probe of a looper is itself recognized as trapped
        assert!(matches!(
            observe(&m2, "11", 10_000).unwrap(),
            Behavior::Diverges { .. }
        ));
    }

    #[test]
    fn encoded_reductions_round_trip() {
        let m = build_immediate_halter();
        let pair = crate::turing::encode_pair(&m, "1");
        let out = reduce_halt_to_co_same_encoded(&pair).unwrap();
        let (m1, m2) = decode_machine_pair(&out).unwrap();
        assert_eq!((m1, m2), reduce_halt_to_co_same(&m, "1"));
        let inst = decode_desiredone(&reduce_same_to_desiredone_encoded(&out).unwrap()).unwrap();
        assert!(inst.inputs.is_empty());
        assert_eq!(inst.target, build_looper());
        assert!(reduce_halt_to_co_same_encoded("1:x").is_err());
    }

    #[test]
    fn desiredone_probe_cases() {
        let h = build_immediate_halter();
        let same = reduce_same_to_desiredone(&h, &h);
        assert_eq!(
            desiredone_probe(&same, &probe_inputs(3), DEFAULT_STEP_BUDGET).unwrap(),
            ProbeVerdict::IndistinguishableWithinBudget
        );
        let differ = reduce_same_to_desiredone(&build_looper(), &h);
        assert!(matches!(
            desiredone_probe(&differ, &probe_inputs(3), DEFAULT_STEP_BUDGET).unwrap(),
            ProbeVerdict::ProvenDifferent(DifferenceReason::Behavior { .. })
        ));
        // a learner that echoes its data cannot be decoded
        let echo = DesiredOneInstance {
            learner: h.clone(),
            target: writes('1'),
            inputs: vec!["0".into()],
        };
        assert!(matches!(
            desiredone_probe(&echo, &probe_inputs(1), 10_000).unwrap(),
            ProbeVerdict::ProvenDifferent(DifferenceReason::UndecodableOutput(_))
        ));
        let stuck = DesiredOneInstance {
            learner: build_looper(),
            target: h.clone(),
            inputs: vec![],
        };
        assert!(matches!(
            desiredone_probe(&stuck, &probe_inputs(1), 1000).unwrap(),
            ProbeVerdict::ProvenDifferent(DifferenceReason::LearnerDiverges { .. })
        ));
        let outside = DesiredOneInstance {
            learner: h,
            target: build_looper(),
            inputs: vec!["1".into()],
        };
        assert!(matches!(
            desiredone_probe(&outside, &probe_inputs(1), 1000),
            Err(ProbeError::OutsideHaltingSet { .. })
        ));
    }

    #[test]
    fn constant_learner_of_target_learns_it() {
        let e = writes('1');
        let inst = DesiredOneInstance {
            learner: build_constant_learner(&e),
            target: e,
            inputs: vec!["".into(), "0".into(), "101".into()],
        };
        assert_eq!(
            desiredone_probe(&inst, &probe_inputs(4), 100_000).unwrap(),
            ProbeVerdict::IndistinguishableWithinBudget
        );
    }
}
