//! The Hilbert-style system H_X: four concrete axioms closed under modus
//! ponens and finite substitution.
//!
//! Step and axiom numbers in [`Proof`]s are 1-based, matching the proof file
//! format.

use std::fmt;

use thiserror::Error;

use crate::formula::{parse_formula, Formula, Substitution};

mod audit;
mod index;
mod search;
mod text;
pub mod unify;

pub use audit::{soundness_audit, AxiomVerdict, SoundnessReport};
pub use search::{
    bounded_prove, enumerate_theorems, Theorem, TheoremBudget, TheoremEnumerator, TheoremOrigin,
};
pub use text::{parse_proof, render_proof, ProofParseError};

/// Ordered, non-empty list of axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSet {
    axioms: Vec<Formula>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("an axiom set needs at least one axiom")]
pub struct EmptyAxiomSet;

pub const X1: &str = "p->(q->p)";
pub const X2: &str = "(p->(q->r))->((p->q)->(p->r))";
pub const X3: &str = "~p->(p->q)";
pub const X4: &str = "(p->~p)->~p";

impl AxiomSet {
    pub fn new(axioms: Vec<Formula>) -> Result<AxiomSet, EmptyAxiomSet> {
        if axioms.is_empty() {
            return Err(EmptyAxiomSet);
        }
        Ok(AxiomSet { axioms })
    }

    /// X1 to X4.
    pub fn hx() -> AxiomSet {
        let axioms = [X1, X2, X3, X4]
            .iter()
            .map(|s| parse_formula(s).expect("axiom literal parses"))
            .collect();
        AxiomSet { axioms }
    }

    /// This set with `extra` appended.
    pub fn extended(&self, extra: Formula) -> AxiomSet {
        let mut axioms = self.axioms.clone();
        axioms.push(extra);
        AxiomSet { axioms }
    }

    /// Axiom `k`, counting from 1.
    pub fn get(&self, k: usize) -> Option<&Formula> {
        k.checked_sub(1).and_then(|i| self.axioms.get(i))
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.axioms.iter()
    }
}

impl Default for AxiomSet {
    fn default() -> AxiomSet {
        AxiomSet::hx()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    Axiom(usize),
    /// `implication` holds `φ -> ψ`, `antecedent` holds `φ`.
    ModusPonens {
        implication: usize,
        antecedent: usize,
    },
    Substitution {
        premise: usize,
        substitution: Substitution,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofStep {
    pub formula: Formula,
    pub justification: Justification,
}

impl ProofStep {
    pub fn axiom(formula: Formula, k: usize) -> ProofStep {
        ProofStep {
            formula,
            justification: Justification::Axiom(k),
        }
    }

    pub fn mp(formula: Formula, implication: usize, antecedent: usize) -> ProofStep {
        ProofStep {
            formula,
            justification: Justification::ModusPonens {
                implication,
                antecedent,
            },
        }
    }

    pub fn sub(formula: Formula, premise: usize, substitution: Substitution) -> ProofStep {
        ProofStep {
            formula,
            justification: Justification::Substitution {
                premise,
                substitution,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
}

impl Proof {
    pub fn new(steps: Vec<ProofStep>) -> Proof {
        Proof { steps }
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_proof(self))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RejectReason {
    #[error("the proof has no steps")]
    Empty,
    #[error("step {0} is not an earlier step")]
    BadReference(usize),
    #[error("there is no axiom {0}")]
    UnknownAxiom(usize),
    #[error("formula differs from axiom {0}")]
    AxiomMismatch(usize),
    #[error("step {0} is not an implication")]
    NotAnImplication(usize),
    #[error("antecedent of step {implication} differs from step {antecedent}")]
    AntecedentMismatch { implication: usize, antecedent: usize },
    #[error("formula differs from the consequent of step {0}")]
    ConsequentMismatch(usize),
    #[error("formula differs from step {0} under the substitution")]
    SubstitutionMismatch(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("rejected at step {step}: {reason}")]
pub struct Rejection {
    pub step: usize,
    pub reason: RejectReason,
}

/// Checks every step locally. `Ok` means the proof establishes its last
/// formula.
pub fn check_proof(proof: &Proof, axioms: &AxiomSet) -> Result<(), Rejection> {
    if proof.steps.is_empty() {
        return Err(Rejection {
            step: 0,
            reason: RejectReason::Empty,
        });
    }
    for (i, step) in proof.steps.iter().enumerate() {
        let number = i + 1;
        let reject = |reason| Rejection { step: number, reason };
        let earlier = |k: usize| {
            if k >= 1 && k < number {
                Ok(&proof.steps[k - 1].formula)
            } else {
                Err(reject(RejectReason::BadReference(k)))
            }
        };
        match &step.justification {
            Justification::Axiom(k) => {
                let ax = axioms
                    .get(*k)
                    .ok_or_else(|| reject(RejectReason::UnknownAxiom(*k)))?;
                if *ax != step.formula {
                    return Err(reject(RejectReason::AxiomMismatch(*k)));
                }
            }
            Justification::ModusPonens {
                implication,
                antecedent,
            } => {
                let major = earlier(*implication)?;
                let minor = earlier(*antecedent)?;
                let (a, b) = major
                    .as_implication()
                    .ok_or_else(|| reject(RejectReason::NotAnImplication(*implication)))?;
                if a != minor {
                    return Err(reject(RejectReason::AntecedentMismatch {
                        implication: *implication,
                        antecedent: *antecedent,
                    }));
                }
                if *b != step.formula {
                    return Err(reject(RejectReason::ConsequentMismatch(*implication)));
                }
            }
            Justification::Substitution {
                premise,
                substitution,
            } => {
                let source = earlier(*premise)?;
                if substitution.apply(source) != step.formula {
                    return Err(reject(RejectReason::SubstitutionMismatch(*premise)));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn three_step() -> Proof {
        Proof::new(vec![
            ProofStep::axiom(f(X1), 1),
            ProofStep::sub(
                f("(p->(q->p))->(q->(p->(q->p)))"),
                1,
                Substitution::new().with("p", f("p->(q->p)")).with("q", f("q")),
            ),
            ProofStep::mp(f("q->(p->(q->p))"), 2, 1),
        ])
    }

    #[test]
    fn single_axiom_is_accepted() {
        let proof = Proof::new(vec![ProofStep::axiom(f(X1), 1)]);
        assert_eq!(check_proof(&proof, &AxiomSet::hx()), Ok(()));
    }

    #[test]
    fn mp_over_axiom_instance() {
        assert_eq!(check_proof(&three_step(), &AxiomSet::hx()), Ok(()));
    }

    #[test]
    fn mismatched_antecedent_is_rejected() {
        let mut proof = three_step();
        proof.steps.push(ProofStep::axiom(f(X3), 3));
        proof.steps.push(ProofStep::mp(f("q->(p->(q->p))"), 2, 4));
        assert_eq!(
            check_proof(&proof, &AxiomSet::hx()),
            Err(Rejection {
                step: 5,
                reason: RejectReason::AntecedentMismatch {
                    implication: 2,
                    antecedent: 4
                }
            })
        );
    }

    #[test]
    fn other_rejections() {
        let ax = AxiomSet::hx();
        let bad = |steps| check_proof(&Proof::new(steps), &ax).unwrap_err().reason;
        assert_eq!(bad(vec![]), RejectReason::Empty);
        assert_eq!(
            bad(vec![ProofStep::axiom(f(X2), 1)]),
            RejectReason::AxiomMismatch(1)
        );
        assert_eq!(
            bad(vec![ProofStep::axiom(f(X1), 5)]),
            RejectReason::UnknownAxiom(5)
        );
        assert_eq!(
            bad(vec![ProofStep::mp(f("p"), 1, 1)]),
            RejectReason::BadReference(1)
        );
        assert_eq!(
            bad(vec![
                ProofStep::axiom(f(X1), 1),
                ProofStep::sub(f("q->(q->p)"), 1, Substitution::new().with("p", f("q")))
            ]),
            RejectReason::SubstitutionMismatch(1)
        );
        assert_eq!(
            bad(vec![
                ProofStep::axiom(f(X3), 3),
                ProofStep::sub(f("~p"), 1, Substitution::new()),
                ProofStep::mp(f("p"), 2, 1)
            ]),
            RejectReason::SubstitutionMismatch(1)
        );
    }

    #[test]
    fn axiom_lookup_is_one_based() {
        let ax = AxiomSet::hx();
        assert_eq!(ax.get(1), Some(&f(X1)));
        assert_eq!(ax.get(4), Some(&f(X4)));
        assert_eq!(ax.get(0), None);
        assert!(AxiomSet::new(vec![]).is_err());
    }
}
