//! Syntactic unification and matching on formulas, used to combine the
//! substitution and modus ponens rules into a single detachment step.

use std::collections::{HashMap, HashSet};

use crate::formula::{Formula, Substitution, Var};

type Bindings = HashMap<Var, Formula>;

fn walk<'a>(f: &'a Formula, b: &'a Bindings) -> &'a Formula {
    let mut cur = f;
    while let Formula::Var(v) = cur {
        match b.get(v) {
            Some(next) => cur = next,
            None => break,
        }
    }
    cur
}

fn occurs(v: &Var, f: &Formula, b: &Bindings) -> bool {
    match walk(f, b) {
        Formula::Var(w) => w == v,
        Formula::Not(a) => occurs(v, a, b),
        Formula::Imp(x, y) => occurs(v, x, b) || occurs(v, y, b),
    }
}

fn unify_into(a: &Formula, c: &Formula, b: &mut Bindings) -> bool {
    let a = walk(a, b).clone();
    let c = walk(c, b).clone();
    match (&a, &c) {
        (Formula::Var(x), Formula::Var(y)) if x == y => true,
        (Formula::Var(x), other) | (other, Formula::Var(x)) => {
            if occurs(x, other, b) {
                return false;
            }
            b.insert(x.clone(), other.clone());
            true
        }
        (Formula::Not(x), Formula::Not(y)) => unify_into(x, y, b),
        (Formula::Imp(x1, y1), Formula::Imp(x2, y2)) => unify_into(x1, x2, b) && unify_into(y1, y2, b),
        _ => false,
    }
}

fn resolve(f: &Formula, b: &Bindings) -> Formula {
    match f {
        Formula::Var(v) => match b.get(v) {
            Some(t) => resolve(t, b),
            None => f.clone(),
        },
        Formula::Not(a) => Formula::not(resolve(a, b)),
        Formula::Imp(x, y) => Formula::imp(resolve(x, b), resolve(y, b)),
    }
}

/// Most general unifier of `a` and `c`, as an idempotent substitution over
/// the variables of both.
pub fn unify(a: &Formula, c: &Formula) -> Option<Substitution> {
    let mut b = Bindings::new();
    if !unify_into(a, c, &mut b) {
        return None;
    }
    Some(
        b.keys()
            .map(|v| (v.clone(), resolve(&Formula::Var(v.clone()), &b)))
            .collect(),
    )
}

/// One-way matching: a substitution `s` on the variables of `pattern` with
/// `s(pattern) == target`.
pub fn match_instance(pattern: &Formula, target: &Formula) -> Option<Substitution> {
    let mut b = Bindings::new();
    if match_into(pattern, target, &mut b) {
        Some(b.into_iter().collect())
    } else {
        None
    }
}

/// Whether `target` is a substitution instance of `pattern`.
pub fn is_instance(pattern: &Formula, target: &Formula) -> bool {
    fn go<'a>(p: &'a Formula, t: &'a Formula, b: &mut Vec<(&'a Var, &'a Formula)>) -> bool {
        match (p, t) {
            (Formula::Var(v), _) => match b.iter().find(|(w, _)| *w == v) {
                Some((_, bound)) => *bound == t,
                None => {
                    b.push((v, t));
                    true
                }
            },
            (Formula::Not(x), Formula::Not(y)) => go(x, y, b),
            (Formula::Imp(x1, y1), Formula::Imp(x2, y2)) => go(x1, x2, b) && go(y1, y2, b),
            _ => false,
        }
    }
    go(pattern, target, &mut Vec::new())
}

fn match_into(pattern: &Formula, target: &Formula, b: &mut Bindings) -> bool {
    match (pattern, target) {
        (Formula::Var(v), _) => match b.get(v) {
            Some(bound) => bound == target,
            None => {
                b.insert(v.clone(), target.clone());
                true
            }
        },
        (Formula::Not(x), Formula::Not(y)) => match_into(x, y, b),
        (Formula::Imp(x1, y1), Formula::Imp(x2, y2)) => match_into(x1, x2, b) && match_into(y1, y2, b),
        _ => false,
    }
}

/// Name of the `i`-th variable in canonical order: `p`..`w`, then `x8`, `x9`, ...
pub fn canonical_var(i: usize) -> Var {
    const FIRST: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];
    let name = match FIRST.get(i) {
        Some(n) => (*n).to_string(),
        None => format!("x{i}"),
    };
    Var::new(&name).expect("canonical names are valid")
}

/// Renaming that maps the variables of `f`, in first-occurrence order, to
/// canonical names. Identity bindings are omitted.
pub fn canonical_renaming(f: &Formula) -> Substitution {
    f.variables()
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, canonical_var(i)))
        .filter(|(v, c)| v != c)
        .map(|(v, c)| (v, Formula::Var(c)))
        .collect()
}

/// Renaming of `f`'s variables to fresh names that do not occur in `avoid`.
pub fn rename_apart(f: &Formula, avoid: &Formula) -> Substitution {
    let taken: HashSet<Var> = avoid.variables().into_iter().collect();
    let mut fresh = (0..)
        .map(|i| Var::new(&format!("y{i}")).unwrap())
        .filter(|v| !taken.contains(v));
    f.variables()
        .into_iter()
        .map(|v| (v, Formula::Var(fresh.next().unwrap())))
        .collect()
}

// Detachment without materializing renamed premises: variables are tagged
// with the premise they come from (0 major, 1 minor), which keeps the two
// variable sets apart.
type Term<'a> = (u8, &'a Formula);

struct TwoSided<'a> {
    bindings: Vec<((u8, &'a Var), Term<'a>)>,
}

impl<'a> TwoSided<'a> {
    fn lookup(&self, side: u8, v: &Var) -> Option<Term<'a>> {
        self.bindings
            .iter()
            .find(|((s, w), _)| *s == side && *w == v)
            .map(|&(_, t)| t)
    }

    fn walk(&self, mut t: Term<'a>) -> Term<'a> {
        while let Formula::Var(v) = t.1 {
            match self.lookup(t.0, v) {
                Some(next) => t = next,
                None => break,
            }
        }
        t
    }

    fn occurs(&self, side: u8, v: &Var, t: Term<'a>) -> bool {
        let t = self.walk(t);
        match t.1 {
            Formula::Var(w) => t.0 == side && w == v,
            Formula::Not(a) => self.occurs(side, v, (t.0, a)),
            Formula::Imp(x, y) => self.occurs(side, v, (t.0, x)) || self.occurs(side, v, (t.0, y)),
        }
    }

    fn unify(&mut self, a: Term<'a>, c: Term<'a>) -> bool {
        let a = self.walk(a);
        let c = self.walk(c);
        match (a.1, c.1) {
            (Formula::Var(x), Formula::Var(y)) if a.0 == c.0 && x == y => true,
            (Formula::Var(x), _) => {
                if self.occurs(a.0, x, c) {
                    return false;
                }
                self.bindings.push(((a.0, x), c));
                true
            }
            (_, Formula::Var(y)) => {
                if self.occurs(c.0, y, a) {
                    return false;
                }
                self.bindings.push(((c.0, y), a));
                true
            }
            (Formula::Not(x), Formula::Not(y)) => self.unify((a.0, x), (c.0, y)),
            (Formula::Imp(x1, y1), Formula::Imp(x2, y2)) => {
                self.unify((a.0, x1), (c.0, x2)) && self.unify((a.0, y1), (c.0, y2))
            }
            _ => false,
        }
    }

    // Builds the resolved term with canonical variable names, giving up once
    // it exceeds `budget` nodes.
    fn resolve(
        &self,
        t: Term<'a>,
        names: &mut Vec<((u8, &'a Var), Formula)>,
        budget: &mut usize,
    ) -> Option<Formula> {
        let t = self.walk(t);
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        Some(match t.1 {
            Formula::Var(v) => {
                if let Some((_, f)) = names.iter().find(|((s, w), _)| *s == t.0 && *w == v) {
                    f.clone()
                } else {
                    let f = Formula::Var(canonical_var(names.len()));
                    names.push(((t.0, v), f.clone()));
                    f
                }
            }
            Formula::Not(a) => Formula::not(self.resolve((t.0, a), names, budget)?),
            Formula::Imp(x, y) => {
                let x = self.resolve((t.0, x), names, budget)?;
                Formula::imp(x, self.resolve((t.0, y), names, budget)?)
            }
        })
    }
}

/// Condensed detachment of `minor` against the implication `major`, with
/// the premises' variables kept apart. Returns the consequent under the most
/// general unifier, canonically renamed, if it has at most `max_size` nodes.
pub(crate) fn detach_canonical(major: &Formula, minor: &Formula, max_size: usize) -> Option<Formula> {
    let Formula::Imp(ante, cons) = major else {
        return None;
    };
    let mut ts = TwoSided { bindings: Vec::new() };
    if !ts.unify((0, ante), (1, minor)) {
        return None;
    }
    let mut budget = max_size;
    ts.resolve((0, cons), &mut Vec::new(), &mut budget)
}
