//! Machines whose behavior is known by construction.
//!
//! Each entry carries a reference function giving its output (`None` for
//! divergence) and an equivalence class: two entries compute the same
//! partial function exactly when their classes are equal. Every divergent
//! entry diverges by entering a trap set, so bounded checks can observe it.

use super::build::{build_looper, build_writer};
use super::{parse_machine, TuringMachine};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    /// Entries with equal classes are input-output equivalent.
    pub class: &'static str,
    pub machine: TuringMachine,
    pub reference: fn(&str) -> Option<String>,
}

impl CorpusEntry {
    pub fn expected(&self, w: &str) -> Option<String> {
        (self.reference)(w)
    }

    pub fn halts_on(&self, w: &str) -> bool {
        self.expected(w).is_some()
    }

    pub fn same_as(&self, other: &CorpusEntry) -> bool {
        self.class == other.class
    }
}

fn flip(c: char) -> char {
    if c == '0' {
        '1'
    } else {
        '0'
    }
}

// n right moves regardless of the tape, then halt
fn walker(n: usize) -> TuringMachine {
    let mut text = format!("states {} start 0\n", n + 1);
    for q in 0..n {
        for a in ['0', '1', '_'] {
            text.push_str(&format!("{q} {a} -> {} {a} R\n", q + 1));
        }
    }
    parse_machine(&text).expect("walker text")
}

fn entry(
    name: &'static str,
    class: &'static str,
    machine: TuringMachine,
    reference: fn(&str) -> Option<String>,
) -> CorpusEntry {
    CorpusEntry {
        name,
        class,
        machine,
        reference,
    }
}

fn text(
    name: &'static str,
    class: &'static str,
    src: &str,
    reference: fn(&str) -> Option<String>,
) -> CorpusEntry {
    let machine = parse_machine(src).unwrap_or_else(|e| panic!("corpus machine {name}: {e}"));
    entry(name, class, machine, reference)
}

pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        text("halt-now", "identity", "states 1 start 0\n", |w| Some(w.into())),
        text(
            "walk-right",
            "identity",
            "states 1 start 0\n0 0 -> 0 0 R\n0 1 -> 0 1 R\n",
            |w| Some(w.into()),
        ),
        entry("walk-5", "identity", walker(5), |w| Some(w.into())),
        entry("walk-40", "identity", walker(40), |w| Some(w.into())),
        // flips each cell, steps back, flips it again
        text(
            "flip-twice",
            "identity",
            "states 3 start 0\n0 0 -> 1 1 R\n0 1 -> 1 0 R\n1 0 -> 2 0 L\n1 1 -> 2 1 L\n1 _ -> 2 _ L\n2 0 -> 0 1 R\n2 1 -> 0 0 R\n",
            |w| Some(w.into()),
        ),
        entry("loop-right", "diverge", build_looper(), |_| None),
        text(
            "loop-left",
            "diverge",
            "states 1 start 0\n0 0 -> 0 0 L\n0 1 -> 0 1 L\n0 _ -> 0 _ L\n",
            |_| None,
        ),
        text(
            "erase-then-spin",
            "diverge",
            "states 2 start 0\n0 0 -> 0 _ R\n0 1 -> 0 _ R\n0 _ -> 1 _ R\n1 0 -> 1 0 R\n1 1 -> 1 1 R\n1 _ -> 1 _ R\n",
            |_| None,
        ),
        text(
            "erase",
            "empty",
            "states 1 start 0\n0 0 -> 0 _ R\n0 1 -> 0 _ R\n",
            |_| Some(String::new()),
        ),
        entry("write-0", "const-0", build_writer("0"), |_| Some("0".into())),
        // leading blanks are not part of the output
        text(
            "erase-then-0",
            "const-0",
            "states 2 start 0\n0 0 -> 0 _ R\n0 1 -> 0 _ R\n0 _ -> 1 0 R\n",
            |_| Some("0".into()),
        ),
        entry("write-1", "const-1", build_writer("1"), |_| Some("1".into())),
        entry("write-01", "const-01", build_writer("01"), |_| Some("01".into())),
        text(
            "flip",
            "flip",
            "states 1 start 0\n0 0 -> 0 1 R\n0 1 -> 0 0 R\n",
            |w| Some(w.chars().map(flip).collect()),
        ),
        text(
            "zero-all",
            "zeros",
            "states 1 start 0\n0 0 -> 0 0 R\n0 1 -> 0 0 R\n",
            |w| Some("0".repeat(w.len())),
        ),
        text(
            "append-1",
            "append-1",
            "states 2 start 0\n0 0 -> 0 0 R\n0 1 -> 0 1 R\n0 _ -> 1 1 R\n",
            |w| Some(format!("{w}1")),
        ),
        text(
            "flip-last",
            "flip-last",
            "states 3 start 0\n0 0 -> 0 0 R\n0 1 -> 0 1 R\n0 _ -> 1 _ L\n1 0 -> 2 1 R\n1 1 -> 2 0 R\n",
            |w| {
                let mut s: Vec<char> = w.chars().collect();
                if let Some(c) = s.last_mut() {
                    *c = flip(*c);
                }
                Some(s.into_iter().collect())
            },
        ),
        text(
            "drop-last",
            "drop-last",
            "states 3 start 0\n0 0 -> 0 0 R\n0 1 -> 0 1 R\n0 _ -> 1 _ L\n1 0 -> 2 _ R\n1 1 -> 2 _ R\n",
            |w| Some(w[..w.len().saturating_sub(1)].into()),
        ),
        text(
            "flip-first",
            "flip-first",
            "states 2 start 0\n0 0 -> 1 1 R\n0 1 -> 1 0 R\n",
            |w| {
                let mut s: Vec<char> = w.chars().collect();
                if let Some(c) = s.first_mut() {
                    *c = flip(*c);
                }
                Some(s.into_iter().collect())
            },
        ),
        text(
            "halt-unless-leading-1",
            "unless-leading-1",
            "states 2 start 0\n0 1 -> 1 1 R\n1 0 -> 1 0 R\n1 1 -> 1 1 R\n1 _ -> 1 _ L\n",
            |w| (!w.starts_with('1')).then(|| w.into()),
        ),
        text(
            "halt-if-even",
            "even",
            "states 3 start 0\n0 0 -> 1 0 R\n0 1 -> 1 1 R\n1 0 -> 0 0 R\n1 1 -> 0 1 R\n1 _ -> 2 _ R\n2 0 -> 2 0 R\n2 1 -> 2 1 R\n2 _ -> 2 _ R\n",
            |w| (w.len() % 2 == 0).then(|| w.into()),
        ),
        text(
            "halt-on-1",
            "contains-1",
            "states 2 start 0\n0 0 -> 0 0 R\n0 _ -> 1 _ R\n1 0 -> 1 0 R\n1 1 -> 1 1 R\n1 _ -> 1 _ R\n",
            |w| w.contains('1').then(|| w.into()),
        ),
        text(
            "halt-if-empty",
            "empty-only",
            "states 2 start 0\n0 0 -> 1 0 R\n0 1 -> 1 1 R\n1 0 -> 1 0 R\n1 1 -> 1 1 R\n1 _ -> 1 _ R\n",
            |w| w.is_empty().then(String::new),
        ),
        text(
            "halt-if-long",
            "length-3",
            "states 5 start 0\n0 0 -> 1 0 R\n0 1 -> 1 1 R\n1 0 -> 2 0 R\n1 1 -> 2 1 R\n2 0 -> 3 0 R\n2 1 -> 3 1 R\n0 _ -> 4 _ R\n1 _ -> 4 _ R\n2 _ -> 4 _ R\n4 0 -> 4 0 L\n4 1 -> 4 1 L\n4 _ -> 4 _ L\n",
            |w| (w.len() >= 3).then(|| w.into()),
        ),
    ]
}
