//! Bounded forward saturation of an axiom set.
//!
//! The search keeps a queue of discovered theorems ordered by size, then by
//! the structural order on formulas, and repeatedly selects the smallest one. Selection
//! emits the theorem, then derives new ones from it:
//!
//! - detachments: for an active implication `A -> B` and an active theorem
//!   `C` (renamed apart), the most general unifier `s` of `A` and `C` yields
//!   `s(B)`, renamed to canonical variables. In H_X terms this is two `sub`
//!   steps, one `mp` step and a renaming `sub` step;
//! - pool instances: every substitution of `p`, `q`, `r` by formulas over
//!   `{p, q}` up to the pool size.
//!
//! A selected detachment becomes active (a premise for later detachments)
//! unless it is a substitution instance of an active theorem, since
//! everything derivable from it is derivable from the more general one. Pool
//! instances never become active. Every selected formula is emitted.
//!
//! The stream is fully deterministic. Formulas larger than the size cap are
//! discarded, which makes the search incomplete; absence from the stream
//! never certifies unprovability.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use super::index::GeneralizationIndex;
use super::unify::{canonical_renaming, detach_canonical, is_instance, match_instance, rename_apart, unify};
use super::{AxiomSet, Proof, ProofStep};
use crate::formula::{enumerate_formulas, Formula, Substitution, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremBudget {
    /// Stream length cap.
    pub max_theorems: usize,
    /// Theorems with more nodes than this are discarded.
    pub max_size: usize,
    /// Largest formula size in the substitution pool; 0 disables pool instances.
    pub pool_size: usize,
}

impl Default for TheoremBudget {
    fn default() -> TheoremBudget {
        TheoremBudget {
            max_theorems: 10_000,
            max_size: 20,
            pool_size: 3,
        }
    }
}

/// How a theorem was obtained. Indices refer to earlier stream positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremOrigin {
    /// Axiom number, 1-based.
    Axiom(usize),
    Detachment {
        major: usize,
        minor: usize,
    },
    /// `choice` numbers the pool substitution, first variable most significant.
    Instance {
        source: usize,
        choice: u64,
    },
}

/// A discovered theorem. `index` is its position in the stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem {
    pub index: usize,
    pub formula: Formula,
    pub origin: TheoremOrigin,
}

// Walks the pool substitutions of each active theorem in activation order.
#[derive(Default)]
struct InstanceCursor {
    position: usize,
    started: bool,
    vars: Vec<Var>,
    choice: u64,
    count: u64,
}

// Substitution number `choice` over `vars`, first variable most significant.
fn pool_substitution(pool: &[Formula], vars: &[Var], mut choice: u64) -> Substitution {
    let n = pool.len() as u64;
    let mut bindings = Vec::with_capacity(vars.len());
    for v in vars.iter().rev() {
        let t = &pool[(choice % n) as usize];
        choice /= n;
        if *t != Formula::Var(v.clone()) {
            bindings.push((v.clone(), t.clone()));
        }
    }
    bindings.into_iter().collect()
}

/// Incremental theorem stream. Only the formulas of active theorems are
/// kept; any other emitted formula is rebuilt from its origin on demand, and
/// duplicates are detected by 64-bit fingerprint.
pub struct TheoremEnumerator {
    axioms: AxiomSet,
    budget: TheoremBudget,
    pool: Vec<Formula>,
    origins: Vec<TheoremOrigin>,
    premises: HashMap<usize, Formula>,
    active: Vec<usize>,
    index: GeneralizationIndex,
    seen: HashSet<u64>,
    queue: BTreeMap<(usize, Formula), TheoremOrigin>,
    axiom_queue: VecDeque<(usize, Formula)>,
    instances: InstanceCursor,
    saturated: bool,
}

fn bindable_vars(f: &Formula) -> Vec<Var> {
    f.variables()
        .into_iter()
        .filter(|v| matches!(v.as_str(), "p" | "q" | "r"))
        .collect()
}

fn fingerprint(f: &Formula) -> u64 {
    let mut h = DefaultHasher::new();
    f.hash(&mut h);
    h.finish()
}

impl TheoremEnumerator {
    pub fn new(axioms: AxiomSet, budget: TheoremBudget) -> TheoremEnumerator {
        let pool_vars: Vec<Var> = ["p", "q"].iter().map(|n| Var::new(n).unwrap()).collect();
        let pool = if budget.pool_size == 0 {
            Vec::new()
        } else {
            enumerate_formulas(&pool_vars, budget.pool_size).collect()
        };
        let mut seen = HashSet::new();
        let axiom_queue = axioms
            .iter()
            .enumerate()
            .filter(|(_, ax)| seen.insert(fingerprint(ax)))
            .map(|(i, ax)| (i + 1, ax.clone()))
            .collect();
        TheoremEnumerator {
            axioms,
            budget,
            pool,
            origins: Vec::new(),
            premises: HashMap::new(),
            active: Vec::new(),
            index: GeneralizationIndex::new(),
            seen,
            queue: BTreeMap::new(),
            axiom_queue,
            instances: InstanceCursor::default(),
            saturated: false,
        }
    }

    pub fn axioms(&self) -> &AxiomSet {
        &self.axioms
    }

    pub fn budget(&self) -> TheoremBudget {
        self.budget
    }

    /// Number of theorems emitted so far.
    pub fn emitted(&self) -> usize {
        self.origins.len()
    }

    /// Stream indices of the theorems used as detachment premises.
    pub fn active(&self) -> &[usize] {
        &self.active
    }

    /// True once nothing new remains under the size cap.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// An already emitted theorem.
    pub fn theorem(&self, index: usize) -> Option<Theorem> {
        let origin = *self.origins.get(index)?;
        Some(Theorem {
            index,
            formula: self.formula_of(index),
            origin,
        })
    }

    pub fn next_theorem(&mut self) -> Option<Theorem> {
        if self.origins.len() >= self.budget.max_theorems || self.saturated {
            return None;
        }
        if let Some((k, formula)) = self.axiom_queue.pop_front() {
            return Some(self.emit(formula, TheoremOrigin::Axiom(k), true));
        }
        if let Some((formula, origin)) = self.next_instance() {
            return Some(self.emit(formula, origin, false));
        }
        let Some(((_, formula), origin)) = self.queue.pop_first() else {
            self.saturated = true;
            return None;
        };
        let activate = !self.is_subsumed(&formula);
        Some(self.emit(formula, origin, activate))
    }

    fn next_instance(&mut self) -> Option<(Formula, TheoremOrigin)> {
        if self.pool.is_empty() {
            return None;
        }
        while self.instances.position < self.active.len() {
            let source = self.active[self.instances.position];
            let formula = &self.premises[&source];
            let cur = &mut self.instances;
            if !cur.started {
                cur.vars = bindable_vars(formula);
                cur.count = (self.pool.len() as u64).pow(cur.vars.len() as u32);
                cur.choice = 0;
                cur.started = true;
            }
            while cur.choice < cur.count {
                let choice = cur.choice;
                cur.choice += 1;
                let sub = pool_substitution(&self.pool, &cur.vars, choice);
                if sub.is_empty() {
                    continue;
                }
                let inst = sub.apply(formula);
                if inst.size() <= self.budget.max_size && self.seen.insert(fingerprint(&inst)) {
                    return Some((inst, TheoremOrigin::Instance { source, choice }));
                }
            }
            cur.position += 1;
            cur.started = false;
        }
        None
    }

    fn is_subsumed(&self, f: &Formula) -> bool {
        self.index.candidates(f, |id| is_instance(&self.premises[&id], f))
    }

    fn emit(&mut self, formula: Formula, origin: TheoremOrigin, activate: bool) -> Theorem {
        let index = self.origins.len();
        self.origins.push(origin);
        if activate {
            self.premises.insert(index, formula.clone());
            self.activate(index);
        }
        Theorem {
            index,
            formula,
            origin,
        }
    }

    fn enqueue(&mut self, formula: Formula, origin: TheoremOrigin) {
        if self.seen.insert(fingerprint(&formula)) {
            self.queue.insert((formula.size(), formula), origin);
        }
    }

    fn activate(&mut self, given: usize) {
        let formula = self.premises[&given].clone();
        self.index.insert(&formula, given);
        self.active.push(given);
        for k in 0..self.active.len() {
            let other = self.active[k];
            for (major, minor) in [(other, given), (given, other)] {
                let result = detach_canonical(
                    &self.premises[&major],
                    &self.premises[&minor],
                    self.budget.max_size,
                );
                if let Some(result) = result {
                    self.enqueue(result, TheoremOrigin::Detachment { major, minor });
                }
                if other == given {
                    break;
                }
            }
        }
    }

    fn formula_of(&self, index: usize) -> Formula {
        if let Some(f) = self.premises.get(&index) {
            return f.clone();
        }
        match self.origins[index] {
            TheoremOrigin::Axiom(k) => self.axioms.get(k).expect("axiom index").clone(),
            TheoremOrigin::Instance { source, choice } => {
                let source = &self.premises[&source];
                pool_substitution(&self.pool, &bindable_vars(source), choice).apply(source)
            }
            TheoremOrigin::Detachment { major, minor } => {
                detach_canonical(&self.premises[&major], &self.premises[&minor], usize::MAX)
                    .expect("recorded detachment replays")
            }
        }
    }

    // Detachment result plus the substitutions that justify it:
    // (result, major_sub, minor_sub, renaming)
    fn detach(&self, major: usize, minor: usize) -> (Formula, Substitution, Substitution, Substitution) {
        let major_formula = &self.premises[&major];
        let minor_formula = &self.premises[&minor];
        let (ante, cons) = major_formula.as_implication().expect("major is an implication");
        let apart = rename_apart(minor_formula, major_formula);
        let mgu = unify(ante, &apart.apply(minor_formula)).expect("premises unify");
        let result = mgu.apply(cons);
        let renaming = canonical_renaming(&result);
        let major_sub: Substitution = major_formula
            .variables()
            .into_iter()
            .filter_map(|v| mgu.get(&v).map(|t| (v, t.clone())))
            .collect();
        let minor_sub: Substitution = minor_formula
            .variables()
            .into_iter()
            .map(|v| {
                let image = mgu.apply(&apart.apply(&Formula::Var(v.clone())));
                (v, image)
            })
            .collect();
        (renaming.apply(&result), major_sub, minor_sub, renaming)
    }

    /// A checkable proof of theorem `index`.
    pub fn proof(&self, index: usize) -> Proof {
        let mut steps = Vec::new();
        let mut memo = HashMap::new();
        self.emit_steps(index, &mut steps, &mut memo);
        Proof::new(steps)
    }

    fn emit_steps(
        &self,
        index: usize,
        steps: &mut Vec<ProofStep>,
        memo: &mut HashMap<usize, usize>,
    ) -> usize {
        if let Some(&n) = memo.get(&index) {
            return n;
        }
        let formula = self.formula_of(index);
        let push = |steps: &mut Vec<ProofStep>, step: ProofStep| {
            steps.push(step);
            steps.len()
        };
        let n = match self.origins[index] {
            TheoremOrigin::Axiom(k) => push(steps, ProofStep::axiom(formula, k)),
            TheoremOrigin::Instance { source, choice } => {
                let i = self.emit_steps(source, steps, memo);
                let vars = bindable_vars(&self.premises[&source]);
                let sub = pool_substitution(&self.pool, &vars, choice);
                push(steps, ProofStep::sub(formula, i, sub))
            }
            TheoremOrigin::Detachment { major, minor } => {
                let i = self.emit_steps(major, steps, memo);
                let j = self.emit_steps(minor, steps, memo);
                let (result, major_sub, minor_sub, renaming) = self.detach(major, minor);
                debug_assert_eq!(result, formula);
                let major_formula = &self.premises[&major];
                let minor_formula = &self.premises[&minor];
                let inst_major = major_sub.apply(major_formula);
                let a = if inst_major == *major_formula {
                    i
                } else {
                    push(steps, ProofStep::sub(inst_major.clone(), i, major_sub))
                };
                let inst_minor = minor_sub.apply(minor_formula);
                let b = if inst_minor == *minor_formula {
                    j
                } else {
                    push(steps, ProofStep::sub(inst_minor, j, minor_sub))
                };
                let (_, consequent) = inst_major
                    .as_implication()
                    .expect("detachment major is an implication");
                let c = push(steps, ProofStep::mp(consequent.clone(), a, b));
                if renaming.is_empty() {
                    c
                } else {
                    push(steps, ProofStep::sub(result, c, renaming))
                }
            }
        };
        memo.insert(index, n);
        n
    }
}

impl Iterator for TheoremEnumerator {
    type Item = Theorem;

    fn next(&mut self) -> Option<Theorem> {
        self.next_theorem()
    }
}

/// Stream of `(theorem, proof)` pairs in discovery order.
pub fn enumerate_theorems(
    axioms: &AxiomSet,
    budget: TheoremBudget,
) -> impl Iterator<Item = (Formula, Proof)> {
    let mut en = TheoremEnumerator::new(axioms.clone(), budget);
    std::iter::from_fn(move || {
        let th = en.next_theorem()?;
        Some((th.formula, en.proof(th.index)))
    })
}

/// Looks for a proof of `target` among the first `budget.max_theorems`
/// detachment-closed theorems, accepting any theorem that `target` is a
/// substitution instance of. Pool instances are skipped since matching
/// already covers them. `None` is not evidence of unprovability.
pub fn bounded_prove(target: &Formula, axioms: &AxiomSet, budget: TheoremBudget) -> Option<Proof> {
    let budget = TheoremBudget {
        pool_size: 0,
        ..budget
    };
    let mut en = TheoremEnumerator::new(axioms.clone(), budget);
    while let Some(th) = en.next_theorem() {
        let Some(sub) = match_instance(&th.formula, target) else {
            continue;
        };
        let mut proof = en.proof(th.index);
        if *target != th.formula {
            let last = proof.len();
            let sub: Substitution = sub
                .iter()
                .filter(|(v, t)| **t != Formula::Var((*v).clone()))
                .map(|(v, t)| (v.clone(), t.clone()))
                .collect();
            proof.steps.push(ProofStep::sub(target.clone(), last, sub));
        }
        return Some(proof);
    }
    None
}
