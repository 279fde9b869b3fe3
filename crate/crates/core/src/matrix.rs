//! Finite logical matrices: truth tables for `~` and `->` over values
//! `0..n` with an explicit set of designated values.

use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::formula::{Formula, Var};

mod file;

pub use file::{parse_matrix, render_matrix};

pub type Value = u8;

/// Default cap on the number of assignments a single check may visit.
pub const DEFAULT_ASSIGNMENT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("invalid matrix: {0}")]
    Invalid(String),
    #[error("variable {0} has no value in the assignment")]
    Unassigned(Var),
    #[error("value {value} is out of range for a {size}-valued matrix")]
    ValueOutOfRange { value: Value, size: usize },
    #[error("{assignments} assignments exceed the budget of {budget}")]
    BudgetExceeded { assignments: u128, budget: u64 },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Clone, PartialEq, Eq)]
pub struct LogicalMatrix {
    size: usize,
    designated: Vec<bool>,
    neg: Vec<Value>,
    // row-major, indexed [antecedent * size + consequent]
    imp: Vec<Value>,
}

impl LogicalMatrix {
    pub fn new(
        size: usize,
        designated: &[Value],
        neg: Vec<Value>,
        imp: Vec<Vec<Value>>,
    ) -> Result<LogicalMatrix, MatrixError> {
        if size < 2 || size > usize::from(Value::MAX) + 1 {
            return Err(MatrixError::Invalid(format!(
                "value count must be in 2..=256, got {size}"
            )));
        }
        let in_range = |v: Value| usize::from(v) < size;
        let mut mask = vec![false; size];
        for &d in designated {
            if !in_range(d) {
                return Err(MatrixError::ValueOutOfRange { value: d, size });
            }
            mask[usize::from(d)] = true;
        }
        let count = mask.iter().filter(|&&d| d).count();
        if count == 0 || count == size {
            return Err(MatrixError::Invalid(
                "designated values must be a non-empty strict subset".into(),
            ));
        }
        if neg.len() != size {
            return Err(MatrixError::Invalid(format!(
                "negation table has {} entries, expected {size}",
                neg.len()
            )));
        }
        if imp.len() != size || imp.iter().any(|row| row.len() != size) {
            return Err(MatrixError::Invalid(format!(
                "implication table must be {size}x{size}"
            )));
        }
        let imp: Vec<Value> = imp.into_iter().flatten().collect();
        if let Some(&v) = neg.iter().chain(imp.iter()).find(|&&v| !in_range(v)) {
            return Err(MatrixError::ValueOutOfRange { value: v, size });
        }
        Ok(LogicalMatrix {
            size,
            designated: mask,
            neg,
            imp,
        })
    }

    /// Classical two-valued truth: designated value 1.
    pub fn classical() -> LogicalMatrix {
        LogicalMatrix::new(2, &[1], vec![1, 0], vec![vec![1, 1], vec![0, 1]])
            .expect("built-in matrix is valid")
    }

    /// Three-valued matrix whose designated value 2 tracks provability in H_X.
    pub fn provability() -> LogicalMatrix {
        LogicalMatrix::new(
            3,
            &[2],
            vec![1, 2, 1],
            vec![vec![2, 1, 2], vec![2, 2, 2], vec![0, 1, 2]],
        )
        .expect("built-in matrix is valid")
    }

    /// Looks up a built-in matrix by its CLI name (`T` or `Tprime`).
    pub fn builtin(name: &str) -> Option<LogicalMatrix> {
        match name {
            "T" => Some(LogicalMatrix::classical()),
            "Tprime" | "T'" => Some(LogicalMatrix::provability()),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_designated(&self, v: Value) -> bool {
        self.designated[usize::from(v)]
    }

    pub fn designated_values(&self) -> Vec<Value> {
        (0..self.size)
            .filter(|&v| self.designated[v])
            .map(|v| v as Value)
            .collect()
    }

    pub fn neg(&self, v: Value) -> Value {
        self.neg[usize::from(v)]
    }

    pub fn imp(&self, a: Value, b: Value) -> Value {
        self.imp[usize::from(a) * self.size + usize::from(b)]
    }
}

impl fmt::Debug for LogicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LogicalMatrix")
            .field("size", &self.size)
            .field("designated", &self.designated_values())
            .field("neg", &self.neg)
            .field("imp", &self.imp.chunks(self.size).collect::<Vec<_>>())
            .finish()
    }
}

pub fn matrix_t() -> LogicalMatrix {
    LogicalMatrix::classical()
}

pub fn matrix_tprime() -> LogicalMatrix {
    LogicalMatrix::provability()
}

/// Values for a formula's variables, kept in the order they were given.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<(Var, Value)>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn set(&mut self, var: Var, value: Value) -> &mut Assignment {
        match self.values.iter_mut().find(|(v, _)| *v == var) {
            Some(slot) => slot.1 = value,
            None => self.values.push((var, value)),
        }
        self
    }

    pub fn with(mut self, var: &str, value: Value) -> Assignment {
        self.set(Var::new(var).expect("invalid variable name"), value);
        self
    }

    pub fn get(&self, var: &Var) -> Option<Value> {
        self.values.iter().find(|(v, _)| v == var).map(|(_, x)| *x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Var, Value)> {
        self.values.iter()
    }
}

impl FromIterator<(Var, Value)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, Value)>>(iter: I) -> Assignment {
        let mut a = Assignment::new();
        for (v, x) in iter {
            a.set(v, x);
        }
        a
    }
}

/// Renders as `p=0 q=1`.
impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (var, value)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{var}={value}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

pub fn evaluate(f: &Formula, m: &LogicalMatrix, a: &Assignment) -> Result<Value, MatrixError> {
    match f {
        Formula::Var(v) => {
            let x = a.get(v).ok_or_else(|| MatrixError::Unassigned(v.clone()))?;
            if usize::from(x) >= m.size {
                return Err(MatrixError::ValueOutOfRange {
                    value: x,
                    size: m.size,
                });
            }
            Ok(x)
        }
        Formula::Not(x) => Ok(m.neg(evaluate(x, m, a)?)),
        Formula::Imp(x, y) => Ok(m.imp(evaluate(x, m, a)?, evaluate(y, m, a)?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TautologyVerdict {
    Tautology,
    Counterexample { assignment: Assignment, value: Value },
}

impl TautologyVerdict {
    pub fn is_tautology(&self) -> bool {
        matches!(self, TautologyVerdict::Tautology)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NeverDesignatedVerdict {
    NeverDesignated,
    Witness { assignment: Assignment, value: Value },
}

impl NeverDesignatedVerdict {
    pub fn is_never_designated(&self) -> bool {
        matches!(self, NeverDesignatedVerdict::NeverDesignated)
    }
}

/// Outcome of classifying a formula under one matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Designated under every assignment.
    T,
    /// Designated under no assignment.
    C,
    Neither,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::T => "T",
            Classification::C => "C",
            Classification::Neither => "Neither",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MpCheck {
    Preserves,
    /// `antecedent` and `antecedent -> consequent` are designated but `consequent` is not.
    Violation {
        antecedent: Value,
        consequent: Value,
    },
}

impl MpCheck {
    pub fn holds(&self) -> bool {
        matches!(self, MpCheck::Preserves)
    }
}

/// Postfix program for a formula with variables resolved to slots.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    vars: Vec<Var>,
    ops: Vec<Op>,
    max_stack: usize,
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Load(usize),
    Not,
    Imp,
}

const CHUNK: usize = 512;

impl CompiledFormula {
    pub fn new(f: &Formula) -> CompiledFormula {
        let vars = f.variables();
        let mut ops = Vec::with_capacity(f.size());
        let mut depth = 0;
        let mut max_stack = 0;
        compile(f, &vars, &mut ops, &mut depth, &mut max_stack);
        CompiledFormula { vars, ops, max_stack }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn assignment_count(&self, m: &LogicalMatrix) -> u128 {
        (m.size as u128).saturating_pow(self.vars.len() as u32)
    }

    /// Decodes an index in lexicographic assignment order (first variable
    /// most significant, values ascending).
    pub fn assignment_at(&self, m: &LogicalMatrix, mut index: u64) -> Assignment {
        let n = m.size as u64;
        let mut values = vec![0 as Value; self.vars.len()];
        for slot in values.iter_mut().rev() {
            *slot = (index % n) as Value;
            index /= n;
        }
        self.vars.iter().cloned().zip(values).collect()
    }

    /// Visits `(index, value)` for every assignment in lexicographic order
    /// until `visit` breaks.
    pub fn scan<B>(
        &self,
        m: &LogicalMatrix,
        budget: u64,
        mut visit: impl FnMut(u64, Value) -> ControlFlow<B>,
    ) -> Result<Option<B>, MatrixError> {
        let total = self.assignment_count(m);
        if total > u128::from(budget) {
            return Err(MatrixError::BudgetExceeded {
                assignments: total,
                budget,
            });
        }
        let total = total as u64;
        let n = m.size as u64;
        let k = self.vars.len();
        // place value of each variable in the mixed-radix index
        let mut weights = vec![1u64; k];
        for i in (0..k.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * n;
        }
        let mut stack: Vec<[Value; CHUNK]> = vec![[0; CHUNK]; self.max_stack.max(1)];
        let mut start = 0u64;
        while start < total {
            let len = (total - start).min(CHUNK as u64) as usize;
            let mut sp = 0;
            for op in &self.ops {
                match *op {
                    Op::Load(slot) => {
                        let w = weights[slot];
                        let out = &mut stack[sp];
                        for (j, cell) in out[..len].iter_mut().enumerate() {
                            *cell = (((start + j as u64) / w) % n) as Value;
                        }
                        sp += 1;
                    }
                    Op::Not => {
                        let top = &mut stack[sp - 1];
                        for cell in top[..len].iter_mut() {
                            *cell = m.neg[usize::from(*cell)];
                        }
                    }
                    Op::Imp => {
                        let (lower, upper) = stack.split_at_mut(sp - 1);
                        let a = &mut lower[sp - 2];
                        let b = &upper[0];
                        for j in 0..len {
                            a[j] = m.imp[usize::from(a[j]) * m.size + usize::from(b[j])];
                        }
                        sp -= 1;
                    }
                }
            }
            for (j, &v) in stack[0][..len].iter().enumerate() {
                if let ControlFlow::Break(b) = visit(start + j as u64, v) {
                    return Ok(Some(b));
                }
            }
            start += len as u64;
        }
        Ok(None)
    }
}

fn compile(f: &Formula, vars: &[Var], ops: &mut Vec<Op>, depth: &mut usize, max: &mut usize) {
    match f {
        Formula::Var(v) => {
            let slot = vars.iter().position(|x| x == v).expect("variable collected");
            ops.push(Op::Load(slot));
            *depth += 1;
            *max = (*max).max(*depth);
        }
        Formula::Not(a) => {
            compile(a, vars, ops, depth, max);
            ops.push(Op::Not);
        }
        Formula::Imp(a, b) => {
            compile(a, vars, ops, depth, max);
            compile(b, vars, ops, depth, max);
            ops.push(Op::Imp);
            *depth -= 1;
        }
    }
}

pub fn check_tautology(f: &Formula, m: &LogicalMatrix) -> Result<TautologyVerdict, MatrixError> {
    check_tautology_within(f, m, DEFAULT_ASSIGNMENT_BUDGET)
}

/// Tautology check that visits at most `budget` assignments; the reported
/// counterexample is the first one in lexicographic assignment order.
pub fn check_tautology_within(
    f: &Formula,
    m: &LogicalMatrix,
    budget: u64,
) -> Result<TautologyVerdict, MatrixError> {
    let prog = CompiledFormula::new(f);
    let hit = prog.scan(m, budget, |i, v| {
        if m.is_designated(v) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break((i, v))
        }
    })?;
    Ok(match hit {
        None => TautologyVerdict::Tautology,
        Some((i, value)) => TautologyVerdict::Counterexample {
            assignment: prog.assignment_at(m, i),
            value,
        },
    })
}

pub fn check_never_designated(f: &Formula, m: &LogicalMatrix) -> Result<NeverDesignatedVerdict, MatrixError> {
    check_never_designated_within(f, m, DEFAULT_ASSIGNMENT_BUDGET)
}

pub fn check_never_designated_within(
    f: &Formula,
    m: &LogicalMatrix,
    budget: u64,
) -> Result<NeverDesignatedVerdict, MatrixError> {
    let prog = CompiledFormula::new(f);
    let hit = prog.scan(m, budget, |i, v| {
        if m.is_designated(v) {
            ControlFlow::Break((i, v))
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(match hit {
        None => NeverDesignatedVerdict::NeverDesignated,
        Some((i, value)) => NeverDesignatedVerdict::Witness {
            assignment: prog.assignment_at(m, i),
            value,
        },
    })
}

pub fn classify(f: &Formula, m: &LogicalMatrix) -> Result<Classification, MatrixError> {
    classify_within(f, m, DEFAULT_ASSIGNMENT_BUDGET)
}

pub fn classify_within(f: &Formula, m: &LogicalMatrix, budget: u64) -> Result<Classification, MatrixError> {
    let prog = CompiledFormula::new(f);
    let (mut seen_designated, mut seen_other) = (false, false);
    let mixed = prog.scan(m, budget, |_, v| {
        if m.is_designated(v) {
            seen_designated = true;
        } else {
            seen_other = true;
        }
        if seen_designated && seen_other {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(match (mixed, seen_designated) {
        (Some(()), _) => Classification::Neither,
        (None, true) => Classification::T,
        (None, false) => Classification::C,
    })
}

/// Whether modus ponens maps designated premises to a designated conclusion.
pub fn check_mp_preserves(m: &LogicalMatrix) -> MpCheck {
    for a in 0..m.size as Value {
        if !m.is_designated(a) {
            continue;
        }
        for b in 0..m.size as Value {
            if m.is_designated(m.imp(a, b)) && !m.is_designated(b) {
                return MpCheck::Violation {
                    antecedent: a,
                    consequent: b,
                };
            }
        }
    }
    MpCheck::Preserves
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    const PEIRCE: &str = "((p->q)->p)->p";

    #[test]
    fn builtin_tables() {
        let t = matrix_t();
        assert_eq!(t.designated_values(), vec![1]);
        assert_eq!((t.neg(0), t.neg(1)), (1, 0));
        assert_eq!(t.imp(1, 0), 0);
        let tp = matrix_tprime();
        assert_eq!(tp.designated_values(), vec![2]);
        assert_eq!((tp.neg(0), tp.neg(1), tp.neg(2)), (1, 2, 1));
        assert_eq!(tp.imp(2, 0), 0);
        assert_eq!(tp.imp(0, 1), 1);
        assert_eq!(LogicalMatrix::builtin("Tprime"), Some(tp));
        assert_eq!(LogicalMatrix::builtin("X"), None);
    }

    #[test]
    fn evaluate_examples() {
        let a = Assignment::new().with("p", 2).with("q", 0);
        assert_eq!(evaluate(&f("p->q"), &matrix_tprime(), &a).unwrap(), 0);
        let a = Assignment::new().with("p", 0);
        assert_eq!(evaluate(&f("~p"), &matrix_t(), &a).unwrap(), 1);
        let a = Assignment::new().with("p", 0).with("q", 1);
        assert_eq!(evaluate(&f(PEIRCE), &matrix_tprime(), &a).unwrap(), 0);
    }

    #[test]
    fn evaluate_reports_unassigned_variable() {
        let a = Assignment::new().with("p", 1);
        let err = evaluate(&f("p->q"), &matrix_t(), &a).unwrap_err();
        assert_eq!(err, MatrixError::Unassigned(Var::new("q").unwrap()));
    }

    #[test]
    fn peirce_verdicts() {
        assert_eq!(
            check_tautology(&f(PEIRCE), &matrix_t()).unwrap(),
            TautologyVerdict::Tautology
        );
        assert_eq!(
            check_tautology(&f(PEIRCE), &matrix_tprime()).unwrap(),
            TautologyVerdict::Counterexample {
                assignment: Assignment::new().with("p", 0).with("q", 1),
                value: 0,
            }
        );
        assert_eq!(
            classify(&f(PEIRCE), &matrix_tprime()).unwrap(),
            Classification::Neither
        );
    }

    #[test]
    fn lone_variable() {
        for m in [matrix_t(), matrix_tprime()] {
            match check_tautology(&f("p"), &m).unwrap() {
                TautologyVerdict::Counterexample { value, .. } => assert!(!m.is_designated(value)),
                other => panic!("unexpected {other:?}"),
            }
            assert_eq!(classify(&f("p"), &m).unwrap(), Classification::Neither);
        }
        assert_eq!(
            check_never_designated(&f("p"), &matrix_t()).unwrap(),
            NeverDesignatedVerdict::Witness {
                assignment: Assignment::new().with("p", 1),
                value: 1
            }
        );
    }

    #[test]
    fn negated_axiom_is_never_designated() {
        for m in [matrix_t(), matrix_tprime()] {
            assert!(check_never_designated(&f("~(p->(q->p))"), &m)
                .unwrap()
                .is_never_designated());
        }
        assert_eq!(classify(&f("p->~~p"), &matrix_t()).unwrap(), Classification::T);
    }

    #[test]
    fn mp_preservation() {
        assert!(check_mp_preserves(&matrix_t()).holds());
        assert!(check_mp_preserves(&matrix_tprime()).holds());
        let broken = LogicalMatrix::new(2, &[1], vec![1, 0], vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            check_mp_preserves(&broken),
            MpCheck::Violation {
                antecedent: 1,
                consequent: 0
            }
        );
    }

    #[test]
    fn budget_is_enforced() {
        let wide = f("a->b->c->d->e->g->h->i->j->k->l->m->n->o->p->q->r->s->t->u->v->w->x->y->z");
        let err = check_tautology(&wide, &matrix_t()).unwrap_err();
        assert!(
            matches!(err, MatrixError::BudgetExceeded { budget, .. } if budget == DEFAULT_ASSIGNMENT_BUDGET)
        );
        assert!(check_tautology_within(&f("p->q->p"), &matrix_tprime(), 9).is_ok());
        assert!(check_tautology_within(&f("p->q->p"), &matrix_tprime(), 8).is_err());
    }

    #[test]
    fn invalid_matrices() {
        assert!(LogicalMatrix::new(2, &[], vec![1, 0], vec![vec![1, 1], vec![0, 1]]).is_err());
        assert!(LogicalMatrix::new(2, &[0, 1], vec![1, 0], vec![vec![1, 1], vec![0, 1]]).is_err());
        assert!(LogicalMatrix::new(2, &[1], vec![1, 2], vec![vec![1, 1], vec![0, 1]]).is_err());
        assert!(LogicalMatrix::new(2, &[1], vec![1, 0], vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn chunked_scan_matches_direct_evaluation() {
        // 3^7 assignments spans several chunks
        let g = f("(a->~b)->(c->d)->~(e->g->~h)");
        let m = matrix_tprime();
        let prog = CompiledFormula::new(&g);
        let mut count = 0u64;
        prog.scan(&m, u64::MAX, |i, v| {
            let a = prog.assignment_at(&m, i);
            assert_eq!(evaluate(&g, &m, &a).unwrap(), v);
            count += 1;
            ControlFlow::<()>::Continue(())
        })
        .unwrap();
        assert_eq!(count, 3u64.pow(7));
    }
}
