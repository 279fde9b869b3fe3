//! Line-oriented proof files:
//!
//! ```text
//! # comment
//! 1. p->q->p ; AX1
//! 2. (p->q->p)->q->p->q->p ; SUB 1 {p:=p->q->p; q:=q}
//! 3. q->p->q->p ; MP 2 1
//! ```

use thiserror::Error;

use super::{Justification, Proof, ProofStep};
use crate::formula::{parse_formula, Substitution, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ProofParseError {
    pub line: usize,
    pub message: String,
}

pub fn parse_proof(text: &str) -> Result<Proof, ProofParseError> {
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| ProofParseError { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (index, rest) = content
            .split_once('.')
            .ok_or_else(|| err("expected `<idx>. <formula> ; <rule>`".into()))?;
        let index: usize = index
            .trim()
            .parse()
            .map_err(|_| err(format!("bad step number {:?}", index.trim())))?;
        if index != steps.len() + 1 {
            return Err(err(format!(
                "step number {index} out of sequence, expected {}",
                steps.len() + 1
            )));
        }
        let (formula, rule) = rest
            .split_once(';')
            .ok_or_else(|| err("missing `;` before the rule".into()))?;
        let formula = parse_formula(formula.trim()).map_err(|e| err(e.to_string()))?;
        let justification = parse_rule(rule.trim()).map_err(err)?;
        steps.push(ProofStep {
            formula,
            justification,
        });
    }
    Ok(Proof::new(steps))
}

fn parse_number(s: &str) -> Result<usize, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("expected a step number, found {:?}", s.trim()))
}

fn parse_rule(rule: &str) -> Result<Justification, String> {
    if let Some(k) = rule.strip_prefix("AX") {
        return Ok(Justification::Axiom(parse_number(k)?));
    }
    if let Some(args) = rule.strip_prefix("MP") {
        let nums: Vec<&str> = args.split_whitespace().collect();
        return match nums[..] {
            [i, j] => Ok(Justification::ModusPonens {
                implication: parse_number(i)?,
                antecedent: parse_number(j)?,
            }),
            _ => Err("MP takes two step numbers".into()),
        };
    }
    if let Some(args) = rule.strip_prefix("SUB") {
        let args = args.trim();
        let brace = args
            .find('{')
            .ok_or_else(|| "SUB needs a `{v:=formula; ...}` block".to_string())?;
        let premise = parse_number(&args[..brace])?;
        let body = args[brace + 1..]
            .strip_suffix('}')
            .ok_or_else(|| "unterminated substitution block".to_string())?;
        let mut substitution = Substitution::new();
        for binding in body.split(';').map(str::trim).filter(|b| !b.is_empty()) {
            let (var, value) = binding
                .split_once(":=")
                .ok_or_else(|| format!("expected `v:=formula`, found {binding:?}"))?;
            let var = Var::new(var.trim()).map_err(|e| e.to_string())?;
            if substitution.get(&var).is_some() {
                return Err(format!("variable {var} bound twice"));
            }
            let value = parse_formula(value.trim()).map_err(|e| e.to_string())?;
            substitution.bind(var, value);
        }
        return Ok(Justification::Substitution {
            premise,
            substitution,
        });
    }
    Err(format!("unknown rule {rule:?}; expected AX, MP or SUB"))
}

pub fn render_proof(proof: &Proof) -> String {
    let mut out = String::new();
    for (i, step) in proof.steps.iter().enumerate() {
        let rule = match &step.justification {
            Justification::Axiom(k) => format!("AX{k}"),
            Justification::ModusPonens {
                implication,
                antecedent,
            } => format!("MP {implication} {antecedent}"),
            Justification::Substitution {
                premise,
                substitution,
            } => format!("SUB {premise} {substitution}"),
        };
        out.push_str(&format!("{}. {} ; {}\n", i + 1, step.formula, rule));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{check_proof, AxiomSet};

    const SAMPLE: &str = "\
# instance of X1 detached against X1
1. p->q->p ; AX1
2. (p->q->p)->q->p->q->p ; SUB 1 {p:=p->q->p; q:=q}
3. q->p->q->p ; MP 2 1   # conclusion
";

    #[test]
    fn parses_and_checks() {
        let proof = parse_proof(SAMPLE).unwrap();
        assert_eq!(proof.len(), 3);
        assert_eq!(check_proof(&proof, &AxiomSet::hx()), Ok(()));
    }

    #[test]
    fn render_is_reparsable() {
        let proof = parse_proof(SAMPLE).unwrap();
        let text = render_proof(&proof);
        assert_eq!(parse_proof(&text).unwrap(), proof);
        assert!(text.starts_with("1. p->q->p ; AX1\n"));
    }

    #[test]
    fn empty_substitution_block() {
        let proof = parse_proof("1. p->q->p ; AX1\n2. p->q->p ; SUB 1 {}\n").unwrap();
        assert_eq!(check_proof(&proof, &AxiomSet::hx()), Ok(()));
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(parse_proof("1. p->q->p ; AX1\n3. p ; AX1\n").unwrap_err().line, 2);
        assert_eq!(parse_proof("\n\n1. p-> ; AX1\n").unwrap_err().line, 3);
        assert_eq!(parse_proof("1. p ; FOO\n").unwrap_err().line, 1);
        assert_eq!(parse_proof("1. p ; SUB 1 {p:=q; p:=r}\n").unwrap_err().line, 1);
        assert_eq!(parse_proof("1. p ; MP 1\n").unwrap_err().line, 1);
    }
}
