//! Discrimination tree for retrieving stored formulas that generalize a
//! query formula (the query is a substitution instance of them).

use crate::formula::Formula;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sym {
    Star,
    Not,
    Imp,
}

#[derive(Default)]
struct Node {
    star: Option<u32>,
    not: Option<u32>,
    imp: Option<u32>,
    entries: Vec<usize>,
}

#[derive(Default)]
pub(crate) struct GeneralizationIndex {
    nodes: Vec<Node>,
}

fn preorder(f: &Formula, out: &mut Vec<Sym>) {
    match f {
        Formula::Var(_) => out.push(Sym::Star),
        Formula::Not(a) => {
            out.push(Sym::Not);
            preorder(a, out);
        }
        Formula::Imp(a, b) => {
            out.push(Sym::Imp);
            preorder(a, out);
            preorder(b, out);
        }
    }
}

// skip[i] is the position just past the subterm starting at i
fn subterm_ends(syms: &[Sym]) -> Vec<usize> {
    fn walk(syms: &[Sym], i: usize, skip: &mut [usize]) -> usize {
        let end = match syms[i] {
            Sym::Star => i + 1,
            Sym::Not => walk(syms, i + 1, skip),
            Sym::Imp => {
                let mid = walk(syms, i + 1, skip);
                walk(syms, mid, skip)
            }
        };
        skip[i] = end;
        end
    }
    let mut skip = vec![0; syms.len()];
    if !syms.is_empty() {
        walk(syms, 0, &mut skip);
    }
    skip
}

impl GeneralizationIndex {
    pub fn new() -> GeneralizationIndex {
        GeneralizationIndex {
            nodes: vec![Node::default()],
        }
    }

    pub fn insert(&mut self, f: &Formula, id: usize) {
        let mut syms = Vec::new();
        preorder(f, &mut syms);
        let mut cur = 0usize;
        for s in syms {
            let next = {
                let node = &self.nodes[cur];
                match s {
                    Sym::Star => node.star,
                    Sym::Not => node.not,
                    Sym::Imp => node.imp,
                }
            };
            cur = match next {
                Some(n) => n as usize,
                None => {
                    let n = self.nodes.len();
                    self.nodes.push(Node::default());
                    let slot = match s {
                        Sym::Star => &mut self.nodes[cur].star,
                        Sym::Not => &mut self.nodes[cur].not,
                        Sym::Imp => &mut self.nodes[cur].imp,
                    };
                    *slot = Some(n as u32);
                    n
                }
            };
        }
        self.nodes[cur].entries.push(id);
    }

    /// Ids whose stored formula's shape generalizes `target`. Repeated
    /// variables are not checked; confirm candidates with a real match.
    pub fn candidates(&self, target: &Formula, mut visit: impl FnMut(usize) -> bool) -> bool {
        let mut syms = Vec::new();
        preorder(target, &mut syms);
        let skip = subterm_ends(&syms);
        self.walk(0, 0, &syms, &skip, &mut visit)
    }

    fn walk(
        &self,
        node: usize,
        i: usize,
        syms: &[Sym],
        skip: &[usize],
        visit: &mut impl FnMut(usize) -> bool,
    ) -> bool {
        let n = &self.nodes[node];
        if i == syms.len() {
            return n.entries.iter().any(|&id| visit(id));
        }
        if let Some(star) = n.star {
            if self.walk(star as usize, skip[i], syms, skip, visit) {
                return true;
            }
        }
        let exact = match syms[i] {
            Sym::Star => None,
            Sym::Not => n.not,
            Sym::Imp => n.imp,
        };
        match exact {
            Some(next) => self.walk(next as usize, i + 1, syms, skip, visit),
            None => false,
        }
    }
}
