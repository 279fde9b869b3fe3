//! Propositional formulas over `~` (negation) and `->` (implication).
//!
//! Formulas are immutable trees with shared subterms, so cloning is cheap and
//! values can be sent across threads freely.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

mod parse;

pub use parse::{parse_formula, ParseError};

/// A propositional variable name matching `[a-z][a-z0-9_]*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid variable name {0:?}: expected [a-z][a-z0-9_]*")]
pub struct InvalidVarName(pub String);

impl Var {
    pub fn new(name: &str) -> Result<Var, InvalidVarName> {
        if is_var_name(name) {
            Ok(Var(Arc::from(name)))
        } else {
            Err(InvalidVarName(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_var_name(name: &str) -> bool {
    let mut bytes = name.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_lowercase() => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(Var),
    Not(Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    /// Builds a variable node.
    ///
    /// Panics if `name` is not a valid variable name; use [`Var::new`] for
    /// untrusted input.
    pub fn var(name: &str) -> Formula {
        Formula::Var(Var::new(name).expect("invalid variable name"))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(operand: Formula) -> Formula {
        Formula::Not(Arc::new(operand))
    }

    pub fn imp(antecedent: Formula, consequent: Formula) -> Formula {
        Formula::Imp(Arc::new(antecedent), Arc::new(consequent))
    }

    /// Wraps `self` in `depth` negations.
    pub fn negated(self, depth: usize) -> Formula {
        (0..depth).fold(self, |f, _| Formula::not(f))
    }

    /// Number of connective and variable nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Distinct variable names in first-occurrence (left-to-right) order.
    pub fn variables(&self) -> Vec<Var> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        self.collect_vars(&mut seen, &mut out);
        out
    }

    fn collect_vars(&self, seen: &mut HashSet<Var>, out: &mut Vec<Var>) {
        match self {
            Formula::Var(v) => {
                if seen.insert(v.clone()) {
                    out.push(v.clone());
                }
            }
            Formula::Not(a) => a.collect_vars(seen, out),
            Formula::Imp(a, b) => {
                a.collect_vars(seen, out);
                b.collect_vars(seen, out);
            }
        }
    }

    pub fn contains_var(&self, var: &Var) -> bool {
        match self {
            Formula::Var(v) => v == var,
            Formula::Not(a) => a.contains_var(var),
            Formula::Imp(a, b) => a.contains_var(var) || b.contains_var(var),
        }
    }

    pub fn render(&self) -> String {
        self.render_with(RenderStyle::Minimal)
    }

    pub fn render_with(&self, style: RenderStyle) -> String {
        let mut out = String::new();
        write_formula(self, style, &mut out);
        out
    }
}

/// Parenthesization policy for rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RenderStyle {
    /// Fewest parentheses that still parse back to the same tree.
    #[default]
    Minimal,
    /// Every implication is parenthesized, including the outermost one.
    Full,
}

fn write_formula(f: &Formula, style: RenderStyle, out: &mut String) {
    match f {
        Formula::Var(v) => out.push_str(v.as_str()),
        Formula::Not(a) => {
            out.push('~');
            match (&**a, style) {
                (Formula::Imp(..), RenderStyle::Minimal) => {
                    out.push('(');
                    write_formula(a, style, out);
                    out.push(')');
                }
                _ => write_formula(a, style, out),
            }
        }
        Formula::Imp(a, b) => match style {
            RenderStyle::Minimal => {
                if matches!(&**a, Formula::Imp(..)) {
                    out.push('(');
                    write_formula(a, style, out);
                    out.push(')');
                } else {
                    write_formula(a, style, out);
                }
                out.push_str("->");
                write_formula(b, style, out);
            }
            RenderStyle::Full => {
                out.push('(');
                write_formula(a, style, out);
                out.push_str("->");
                write_formula(b, style, out);
                out.push(')');
            }
        },
    }
}

pub fn render_formula(f: &Formula) -> String {
    f.render()
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({})", self.render())
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Formula, ParseError> {
        parse_formula(s)
    }
}

/// A finite, simultaneous substitution of formulas for variables.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Substitution {
    bindings: BTreeMap<Var, Formula>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn bind(&mut self, var: Var, value: Formula) -> &mut Substitution {
        self.bindings.insert(var, value);
        self
    }

    pub fn with(mut self, var: &str, value: Formula) -> Substitution {
        self.bind(Var::new(var).expect("invalid variable name"), value);
        self
    }

    pub fn get(&self, var: &Var) -> Option<&Formula> {
        self.bindings.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Formula)> {
        self.bindings.iter()
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        if self.bindings.is_empty() {
            return f.clone();
        }
        apply_rec(f, &self.bindings)
    }
}

fn apply_rec(f: &Formula, bindings: &BTreeMap<Var, Formula>) -> Formula {
    match f {
        Formula::Var(v) => bindings.get(v).cloned().unwrap_or_else(|| f.clone()),
        Formula::Not(a) => Formula::not(apply_rec(a, bindings)),
        Formula::Imp(a, b) => Formula::imp(apply_rec(a, bindings), apply_rec(b, bindings)),
    }
}

impl FromIterator<(Var, Formula)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Formula)>>(iter: I) -> Substitution {
        Substitution {
            bindings: iter.into_iter().collect(),
        }
    }
}

/// Renders as `{p:=~p; q:=q}`, the form used in proof files.
impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (var, value)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}:={}", var, value)?;
        }
        f.write_str("}")
    }
}

pub fn apply_substitution(f: &Formula, s: &Substitution) -> Formula {
    s.apply(f)
}

pub fn variables_of(f: &Formula) -> Vec<Var> {
    f.variables()
}

/// Every formula over `vars` with at most `max_size` nodes, each exactly once,
/// ordered by size and then by canonical rendering.
pub fn enumerate_formulas(vars: &[Var], max_size: usize) -> FormulaEnumeration {
    let mut distinct = Vec::new();
    for v in vars {
        if !distinct.contains(v) {
            distinct.push(v.clone());
        }
    }
    FormulaEnumeration {
        vars: distinct,
        max_size,
        levels: Vec::new(),
        pending: Vec::new().into_iter(),
    }
}

/// Lazy, level-by-level enumeration; see [`enumerate_formulas`].
pub struct FormulaEnumeration {
    vars: Vec<Var>,
    max_size: usize,
    // levels[i] holds every formula of size i + 1, sorted by rendering.
    levels: Vec<Vec<Formula>>,
    pending: std::vec::IntoIter<Formula>,
}

impl FormulaEnumeration {
    fn next_level(&mut self) -> Option<Vec<Formula>> {
        let size = self.levels.len() + 1;
        if size > self.max_size {
            return None;
        }
        let mut level: Vec<Formula> = if size == 1 {
            self.vars.iter().cloned().map(Formula::Var).collect()
        } else {
            let mut out: Vec<Formula> = self.levels[size - 2]
                .iter()
                .map(|f| Formula::not(f.clone()))
                .collect();
            // antecedent size i, consequent size size - 1 - i
            for i in 1..size - 1 {
                let j = size - 1 - i;
                for a in &self.levels[i - 1] {
                    for b in &self.levels[j - 1] {
                        out.push(Formula::imp(a.clone(), b.clone()));
                    }
                }
            }
            out
        };
        let mut keyed: Vec<(String, Formula)> = level.drain(..).map(|f| (f.render(), f)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let level: Vec<Formula> = keyed.into_iter().map(|(_, f)| f).collect();
        self.levels.push(level.clone());
        Some(level)
    }
}

impl Iterator for FormulaEnumeration {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        loop {
            if let Some(f) = self.pending.next() {
                return Some(f);
            }
            let level = self.next_level()?;
            self.pending = level.into_iter();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn vars(names: &[&str]) -> Vec<Var> {
        names.iter().map(|n| Var::new(n).unwrap()).collect()
    }

    #[test]
    fn render_minimal_parentheses() {
        assert_eq!(f("p->(q->p)").render(), "p->q->p");
        assert_eq!(Formula::not(Formula::not(Formula::var("p"))).render(), "~~p");
        assert_eq!(f("((p->q)->p)->p").render(), "((p->q)->p)->p");
        assert_eq!(f("~(p->(q->p))").render(), "~(p->q->p)");
    }

    #[test]
    fn render_full_parentheses() {
        assert_eq!(f("p->q->p").render_with(RenderStyle::Full), "(p->(q->p))");
        assert_eq!(f("~~(p->q)").render_with(RenderStyle::Full), "~~(p->q)");
        let full = f("((p->q)->p)->p").render_with(RenderStyle::Full);
        assert_eq!(f(&full), f("((p->q)->p)->p"));
    }

    #[test]
    fn substitution_examples() {
        let s = Substitution::new().with("p", f("~p"));
        assert_eq!(s.apply(&f("p->(q->p)")), f("~p->(q->~p)"));
        assert_eq!(Substitution::new().apply(&f("p")), f("p"));
        let swap = Substitution::new().with("p", f("q")).with("q", f("p"));
        assert_eq!(swap.apply(&f("p->q")), f("q->p"));
    }

    #[test]
    fn substitution_display() {
        let s = Substitution::new().with("q", f("q")).with("p", f("p->q->p"));
        assert_eq!(s.to_string(), "{p:=p->q->p; q:=q}");
    }

    #[test]
    fn variables_in_first_occurrence_order() {
        assert_eq!(f("((p->q)->p)->p").variables(), vars(&["p", "q"]));
        assert_eq!(f("q->p").variables(), vars(&["q", "p"]));
        assert_eq!(f("~~p").variables(), vars(&["p"]));
    }

    #[test]
    fn size_counts_every_node() {
        assert_eq!(f("p").size(), 1);
        assert_eq!(f("~~p").size(), 3);
        assert_eq!(f("(p->(q->r))->((p->q)->(p->r))").size(), 13);
    }

    #[test]
    fn enumerate_small_cases() {
        let one: Vec<_> = enumerate_formulas(&vars(&["p"]), 1).collect();
        assert_eq!(one, vec![f("p")]);
        let two: Vec<_> = enumerate_formulas(&vars(&["p"]), 2).collect();
        assert_eq!(two, vec![f("p"), f("~p")]);
        let three: Vec<String> = enumerate_formulas(&vars(&["p", "q"]), 3)
            .map(|f| f.render())
            .collect();
        assert_eq!(
            three,
            ["p", "q", "~p", "~q", "p->p", "p->q", "q->p", "q->q", "~~p", "~~q"]
        );
    }

    #[test]
    fn enumerate_ignores_duplicate_vars() {
        let n = enumerate_formulas(&vars(&["p", "p"]), 3).count();
        assert_eq!(n, enumerate_formulas(&vars(&["p"]), 3).count());
    }

    #[test]
    fn invalid_var_names() {
        assert!(Var::new("P").is_err());
        assert!(Var::new("1p").is_err());
        assert!(Var::new("").is_err());
        assert!(Var::new("p_1x").is_ok());
    }
}
