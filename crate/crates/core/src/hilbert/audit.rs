use std::fmt;

use super::AxiomSet;
use crate::formula::Formula;
use crate::matrix::{
    check_mp_preserves, check_tautology, LogicalMatrix, MatrixError, MpCheck, TautologyVerdict,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Formula,
    pub verdict: TautologyVerdict,
}

/// Whether a matrix certifies soundness: every axiom designated-valid and
/// modus ponens designation-preserving. Substitution always preserves
/// validity (evaluating `s(f)` under `a` equals evaluating `f` under
/// `v -> a(s(v))`), so it needs no table check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    pub axioms: Vec<AxiomVerdict>,
    pub modus_ponens: MpCheck,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.modus_ponens.holds() && self.axioms.iter().all(|a| a.verdict.is_tautology())
    }
}

pub fn soundness_audit(axioms: &AxiomSet, m: &LogicalMatrix) -> Result<SoundnessReport, MatrixError> {
    let verdicts = axioms
        .iter()
        .map(|ax| {
            Ok(AxiomVerdict {
                axiom: ax.clone(),
                verdict: check_tautology(ax, m)?,
            })
        })
        .collect::<Result<Vec<_>, MatrixError>>()?;
    Ok(SoundnessReport {
        axioms: verdicts,
        modus_ponens: check_mp_preserves(m),
    })
}

impl fmt::Display for SoundnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.axioms.iter().enumerate() {
            match &a.verdict {
                TautologyVerdict::Tautology => writeln!(f, "axiom {} {}: designated-valid", i + 1, a.axiom)?,
                TautologyVerdict::Counterexample { assignment, value } => writeln!(
                    f,
                    "axiom {} {}: counterexample {} value {}",
                    i + 1,
                    a.axiom,
                    assignment,
                    value
                )?,
            }
        }
        match self.modus_ponens {
            MpCheck::Preserves => writeln!(f, "mp: preserves designation")?,
            MpCheck::Violation {
                antecedent,
                consequent,
            } => writeln!(
                f,
                "mp: fails for antecedent {antecedent}, consequent {consequent}"
            )?,
        }
        writeln!(f, "sub: preserves designation (substitution lemma)")?;
        write!(f, "overall: {}", if self.passed() { "pass" } else { "fail" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::matrix::{matrix_t, matrix_tprime, Assignment};

    #[test]
    fn hx_is_sound_for_both_matrices() {
        for m in [matrix_t(), matrix_tprime()] {
            let report = soundness_audit(&AxiomSet::hx(), &m).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn peirce_axiom_breaks_provability_matrix() {
        let peirce = parse_formula("((p->q)->p)->p").unwrap();
        let ax = AxiomSet::hx().extended(peirce);
        let report = soundness_audit(&ax, &matrix_tprime()).unwrap();
        assert!(!report.passed());
        assert_eq!(
            report.axioms[4].verdict,
            TautologyVerdict::Counterexample {
                assignment: Assignment::new().with("p", 0).with("q", 1),
                value: 0
            }
        );
        assert!(soundness_audit(&ax, &matrix_t()).unwrap().passed());
        assert!(report.to_string().ends_with("overall: fail"));
    }
}
