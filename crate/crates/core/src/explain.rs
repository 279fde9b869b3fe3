//! Explanations as total labelings of a finite universe, and the set
//! constructions built on them: restriction, isomorphism on a subset,
//! generalization sets and adversarial sets.
//!
//! Elements and labels are opaque strings; nothing here knows about logic.
//! Formula universes use canonical renderings as element identifiers.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExplainError {
    #[error("element {0:?} is not in the universe")]
    OutsideUniverse(String),
    #[error("explanation {explanation} has no label for {element:?}")]
    Unlabeled { explanation: usize, element: String },
    #[error("explanations {0} and {1} are not isomorphic on the known set")]
    NotIsomorphicOnKnown(usize, usize),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Ordered set of distinct element identifiers. The order is the canonical
/// scan order used for tie-breaking.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FiniteUniverse {
    elements: Vec<String>,
    position: HashMap<String, usize>,
}

impl FiniteUniverse {
    /// Builds a universe, dropping repeated elements after their first occurrence.
    pub fn new<I, S>(elements: I) -> FiniteUniverse
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut u = FiniteUniverse::default();
        for e in elements {
            let e = e.into();
            if !u.position.contains_key(&e) {
                u.position.insert(e.clone(), u.elements.len());
                u.elements.push(e);
            }
        }
        u
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &str) -> bool {
        self.position.contains_key(e)
    }

    pub fn position(&self, e: &str) -> Option<usize> {
        self.position.get(e).copied()
    }

    /// `subset` in universe order, or an error naming the first stray element.
    pub fn sorted_subset<S: AsRef<str>>(&self, subset: &[S]) -> Result<Vec<String>, ExplainError> {
        let mut idx = Vec::with_capacity(subset.len());
        for e in subset {
            let e = e.as_ref();
            idx.push(
                self.position(e)
                    .ok_or_else(|| ExplainError::OutsideUniverse(e.to_string()))?,
            );
        }
        idx.sort_unstable();
        idx.dedup();
        Ok(idx.into_iter().map(|i| self.elements[i].clone()).collect())
    }
}

/// A total labeling over its own domain.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Explanation {
    labels: HashMap<String, String>,
}

impl Explanation {
    pub fn new() -> Explanation {
        Explanation::default()
    }

    pub fn from_pairs<I, A, B>(pairs: I) -> Explanation
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        Explanation {
            labels: pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        }
    }

    /// Labels every element of `universe` with `label_of`.
    pub fn from_fn(universe: &FiniteUniverse, mut label_of: impl FnMut(&str) -> String) -> Explanation {
        Explanation {
            labels: universe
                .elements()
                .iter()
                .map(|e| (e.clone(), label_of(e)))
                .collect(),
        }
    }

    pub fn insert(&mut self, element: impl Into<String>, label: impl Into<String>) {
        self.labels.insert(element.into(), label.into());
    }

    pub fn label(&self, element: &str) -> Option<&str> {
        self.labels.get(element).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.labels.keys().map(String::as_str)
    }
}

pub fn restrict<S: AsRef<str>>(f: &Explanation, subset: &[S]) -> Result<Explanation, ExplainError> {
    let mut out = Explanation::new();
    for e in subset {
        let e = e.as_ref();
        let label = f
            .label(e)
            .ok_or_else(|| ExplainError::OutsideUniverse(e.to_string()))?;
        out.insert(e, label);
    }
    Ok(out)
}

/// Bijection between the label images of two explanations.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LabelBijection {
    pairs: BTreeMap<String, String>,
}

impl LabelBijection {
    pub fn get(&self, label: &str) -> Option<&str> {
        self.pairs.get(label).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl fmt::Display for LabelBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Incrementally built partial bijection; rejects any pair that would break
/// functionality or injectivity.
#[derive(Clone, Default)]
struct Matching {
    forward: HashMap<String, String>,
    backward: HashMap<String, String>,
}

impl Matching {
    fn admits(&self, a: &str, b: &str) -> bool {
        match (self.forward.get(a), self.backward.get(b)) {
            (Some(x), Some(y)) => x == b && y == a,
            (None, None) => true,
            _ => false,
        }
    }

    fn add(&mut self, a: &str, b: &str) {
        self.forward.insert(a.to_string(), b.to_string());
        self.backward.insert(b.to_string(), a.to_string());
    }

    fn into_bijection(self) -> LabelBijection {
        LabelBijection {
            pairs: self.forward.into_iter().collect(),
        }
    }
}

fn labels_of<'a>(f: &'a Explanation, e: &str, which: usize) -> Result<&'a str, ExplainError> {
    f.label(e).ok_or_else(|| ExplainError::Unlabeled {
        explanation: which,
        element: e.to_string(),
    })
}

/// The bijection `g` with `f2(x) = g(f1(x))` for every `x` in `subset`, if
/// one exists. It is unique on the image of `subset`.
pub fn isomorphic_on<S: AsRef<str>>(
    f1: &Explanation,
    f2: &Explanation,
    subset: &[S],
) -> Result<Option<LabelBijection>, ExplainError> {
    let mut m = Matching::default();
    for e in subset {
        let e = e.as_ref();
        let a = labels_of(f1, e, 0)?;
        let b = labels_of(f2, e, 1)?;
        if !m.admits(a, b) {
            return Ok(None);
        }
        m.add(a, b);
    }
    Ok(Some(m.into_bijection()))
}

/// Whether `h` explains the labeled dataset, i.e. is isomorphic to the
/// dataset's own labeling on the dataset's elements.
pub fn explains<A: AsRef<str>, B: AsRef<str>>(
    h: &Explanation,
    dataset: &[(A, B)],
) -> Result<bool, ExplainError> {
    let labeling = Explanation::from_pairs(dataset.iter().map(|(a, b)| (a.as_ref(), b.as_ref())));
    let elements: Vec<&str> = dataset.iter().map(|(a, _)| a.as_ref()).collect();
    Ok(isomorphic_on(&labeling, h, &elements)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairBijection {
    pub left: usize,
    pub right: usize,
    pub bijection: LabelBijection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizationReport {
    /// In universe order.
    pub generalization: Vec<String>,
    /// `U - G`, in universe order.
    pub adversarial: Vec<String>,
    /// One entry per pair `left < right`, valid on the generalization set.
    pub bijections: Vec<PairBijection>,
}

impl fmt::Display for GeneralizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generalization set ({}):", self.generalization.len())?;
        for e in &self.generalization {
            writeln!(f, "  {e}")?;
        }
        writeln!(f, "adversarial set ({}):", self.adversarial.len())?;
        for e in &self.adversarial {
            writeln!(f, "  {e}")?;
        }
        write!(f, "bijections ({}):", self.bijections.len())?;
        for p in &self.bijections {
            write!(f, "\n  e{} ~ e{}: {}", p.left + 1, p.right + 1, p.bijection)?;
        }
        Ok(())
    }
}

fn check_inputs<S: AsRef<str>>(
    expls: &[Explanation],
    known: &[S],
    universe: &FiniteUniverse,
) -> Result<Vec<String>, ExplainError> {
    for (i, h) in expls.iter().enumerate() {
        for e in universe.elements() {
            labels_of(h, e, i)?;
        }
    }
    universe.sorted_subset(known)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// The canonical generalization set: start from the known set and scan the
/// rest of the universe in order, keeping each element that leaves every pair
/// of explanations isomorphic.
pub fn generalization_set<S: AsRef<str>>(
    expls: &[Explanation],
    known: &[S],
    universe: &FiniteUniverse,
) -> Result<GeneralizationReport, ExplainError> {
    let known = check_inputs(expls, known, universe)?;
    let pairs = pairs(expls.len());
    let mut matchings = vec![Matching::default(); pairs.len()];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        for e in &known {
            let (a, b) = (expls[i].label(e).unwrap(), expls[j].label(e).unwrap());
            if !matchings[k].admits(a, b) {
                return Err(ExplainError::NotIsomorphicOnKnown(i, j));
            }
            matchings[k].add(a, b);
        }
    }
    let known_set: HashSet<&str> = known.iter().map(String::as_str).collect();
    let mut in_g = vec![false; universe.len()];
    for e in &known {
        in_g[universe.position(e).unwrap()] = true;
    }
    for (pos, e) in universe.elements().iter().enumerate() {
        if known_set.contains(e.as_str()) {
            continue;
        }
        let fits = pairs
            .iter()
            .enumerate()
            .all(|(k, &(i, j))| matchings[k].admits(expls[i].label(e).unwrap(), expls[j].label(e).unwrap()));
        if fits {
            for (k, &(i, j)) in pairs.iter().enumerate() {
                matchings[k].add(expls[i].label(e).unwrap(), expls[j].label(e).unwrap());
            }
            in_g[pos] = true;
        }
    }
    let (mut generalization, mut adversarial) = (Vec::new(), Vec::new());
    for (pos, e) in universe.elements().iter().enumerate() {
        if in_g[pos] {
            generalization.push(e.clone());
        } else {
            adversarial.push(e.clone());
        }
    }
    let bijections = pairs
        .iter()
        .zip(matchings)
        .map(|(&(left, right), m)| PairBijection {
            left,
            right,
            bijection: m.into_bijection(),
        })
        .collect();
    Ok(GeneralizationReport {
        generalization,
        adversarial,
        bijections,
    })
}

/// Checks the defining conditions directly: `X ⊆ G ⊆ U`, every pair
/// isomorphic on `G`, and no single element of `U - G` can be added. Single
/// extensions suffice because isomorphism on a set implies isomorphism on
/// each of its subsets.
pub fn is_generalization_set<S: AsRef<str>, T: AsRef<str>>(
    candidate: &[S],
    expls: &[Explanation],
    known: &[T],
    universe: &FiniteUniverse,
) -> Result<bool, ExplainError> {
    let known = check_inputs(expls, known, universe)?;
    let g = universe.sorted_subset(candidate)?;
    let g_set: HashSet<&str> = g.iter().map(String::as_str).collect();
    if known.iter().any(|x| !g_set.contains(x.as_str())) {
        return Ok(false);
    }
    let pairs = pairs(expls.len());
    for &(i, j) in &pairs {
        if isomorphic_on(&expls[i], &expls[j], &g)?.is_none() {
            return Ok(false);
        }
    }
    let mut extended = g.clone();
    for u in universe.elements() {
        if g_set.contains(u.as_str()) {
            continue;
        }
        extended.push(u.clone());
        let mut blocked = false;
        for &(i, j) in &pairs {
            if isomorphic_on(&expls[i], &expls[j], &extended)?.is_none() {
                blocked = true;
                break;
            }
        }
        extended.pop();
        if !blocked {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_adversarial_example<S: AsRef<str>>(
    element: &str,
    expls: &[Explanation],
    known: &[S],
    universe: &FiniteUniverse,
) -> Result<bool, ExplainError> {
    if !universe.contains(element) {
        return Err(ExplainError::OutsideUniverse(element.to_string()));
    }
    let report = generalization_set(expls, known, universe)?;
    Ok(report.adversarial.iter().any(|e| e == element))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

/// One element per line; blank lines and `#` comments are skipped.
pub fn parse_universe(text: &str) -> Result<FiniteUniverse, ExplainError> {
    let mut elements = Vec::new();
    let mut seen = HashSet::new();
    for (line, l) in content_lines(text) {
        let e = l.trim();
        if !seen.insert(e.to_string()) {
            return Err(ExplainError::Syntax {
                line,
                message: format!("duplicate element {e:?}"),
            });
        }
        elements.push(e.to_string());
    }
    Ok(FiniteUniverse::new(elements))
}

/// Lines of `<element>\t<label>`.
pub fn parse_explanation(text: &str) -> Result<Explanation, ExplainError> {
    let mut out = Explanation::new();
    for (line, l) in content_lines(text) {
        let (e, label) = l.split_once('\t').ok_or_else(|| ExplainError::Syntax {
            line,
            message: "expected `<element>\\t<label>`".into(),
        })?;
        let (e, label) = (e.trim(), label.trim());
        if out.label(e).is_some() {
            return Err(ExplainError::Syntax {
                line,
                message: format!("duplicate element {e:?}"),
            });
        }
        out.insert(e, label);
    }
    Ok(out)
}
