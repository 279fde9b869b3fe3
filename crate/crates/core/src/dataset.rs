//! The labeled T/C formula corpus.
//!
//! Class T holds theorems of an axiom set, optionally wrapped in an even
//! number of negations; class C holds theorems under an odd number of
//! negations. Files are tab-separated `<label>\t<formula>` lines with `#`
//! comments, and generation writes a sibling `key=value` manifest.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::hash::{Hash, Hasher};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::explain::Explanation;
use crate::formula::{parse_formula, Formula};
use crate::hilbert::{AxiomSet, TheoremBudget, TheoremEnumerator};
use crate::matrix::{classify, Classification, LogicalMatrix, MatrixError};

pub const FORMAT_VERSION: u32 = 1;

/// The bundled reference rows, 11 per class.
pub const REFERENCE_TSV: &str = include_str!("../data/reference.tsv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    T,
    C,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::T => "T",
            Label::C => "C",
        }
    }

    /// The classification a row with this label must receive.
    pub fn expected(self) -> Classification {
        match self {
            Label::T => Classification::T,
            Label::C => Classification::C,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Label, String> {
        match s {
            "T" => Ok(Label::T),
            "C" => Ok(Label::C),
            other => Err(format!("unknown label {other:?}, expected T or C")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledExample {
    pub formula: Formula,
    pub label: Label,
}

impl LabeledExample {
    pub fn new(formula: Formula, label: Label) -> LabeledExample {
        LabeledExample { formula, label }
    }
}

impl fmt::Display for LabeledExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.label, self.formula)
    }
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn parse_line(line: usize, raw: &str) -> Result<Option<LabeledExample>, DatasetError> {
    let content = raw.trim_end_matches('\r');
    if content.trim().is_empty() || content.starts_with('#') {
        return Ok(None);
    }
    let err = |message: String| DatasetError::Syntax { line, message };
    let (label, formula) = content
        .split_once('\t')
        .ok_or_else(|| err("expected `<label>\\t<formula>`".into()))?;
    let label: Label = label.trim().parse().map_err(err)?;
    let formula = parse_formula(formula.trim()).map_err(|e| err(e.to_string()))?;
    Ok(Some(LabeledExample { formula, label }))
}

/// Parses dataset text. Blank and `#` lines are skipped.
pub fn parse_dataset(text: &str) -> Result<Vec<LabeledExample>, DatasetError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if let Some(ex) = parse_line(i + 1, raw)? {
            out.push(ex);
        }
    }
    Ok(out)
}

pub fn render_dataset(examples: &[LabeledExample]) -> String {
    let mut out = String::new();
    for ex in examples {
        out.push_str(&ex.to_string());
        out.push('\n');
    }
    out
}

pub fn load_dataset(path: &Path) -> Result<Vec<LabeledExample>, DatasetError> {
    let mut out = Vec::new();
    for_each_row(path, |_, ex| {
        out.push(ex);
        Ok(())
    })?;
    Ok(out)
}

pub fn save_dataset(path: &Path, examples: &[LabeledExample]) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for ex in examples {
        writeln!(w, "{ex}")?;
    }
    w.flush()
}

/// Streams the rows of a dataset file with their line numbers.
pub fn for_each_row(
    path: &Path,
    mut visit: impl FnMut(usize, LabeledExample) -> Result<(), DatasetError>,
) -> Result<(), DatasetError> {
    let reader = BufReader::new(File::open(path)?);
    for (i, raw) in reader.lines().enumerate() {
        if let Some(ex) = parse_line(i + 1, &raw?)? {
            visit(i + 1, ex)?;
        }
    }
    Ok(())
}

/// Knobs for [`generate_dataset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerationParams {
    pub per_class: usize,
    pub budget: TheoremBudget,
    /// Largest `k` in the wrappers `~^(2k) t` (class T) and `~^(2k+1) t` (class C).
    pub wrapper_depth: usize,
}

impl Default for GenerationParams {
    fn default() -> GenerationParams {
        GenerationParams {
            per_class: 1000,
            budget: TheoremBudget {
                max_theorems: usize::MAX,
                ..TheoremBudget::default()
            },
            wrapper_depth: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetManifest {
    pub format_version: u32,
    pub count_t: usize,
    pub count_c: usize,
    pub per_class: usize,
    pub max_theorems: usize,
    pub max_size: usize,
    pub pool_size: usize,
    pub wrapper_depth: usize,
    /// Theorems consumed from the enumerator.
    pub theorems_used: usize,
    /// False when the theorem budget ran out before both classes filled up.
    pub complete: bool,
}

impl DatasetManifest {
    pub fn render(&self) -> String {
        let max_theorems = if self.max_theorems == usize::MAX {
            "unbounded".to_string()
        } else {
            self.max_theorems.to_string()
        };
        format!(
            "format_version={}\ncount_T={}\ncount_C={}\nper_class={}\nmax_theorems={}\nmax_size={}\npool_size={}\nwrapper_depth={}\ntheorems_used={}\ncomplete={}\n",
            self.format_version,
            self.count_t,
            self.count_c,
            self.per_class,
            max_theorems,
            self.max_size,
            self.pool_size,
            self.wrapper_depth,
            self.theorems_used,
            self.complete
        )
    }

    pub fn parse(text: &str) -> Result<DatasetManifest, DatasetError> {
        let mut m = DatasetManifest {
            format_version: 0,
            count_t: 0,
            count_c: 0,
            per_class: 0,
            max_theorems: 0,
            max_size: 0,
            pool_size: 0,
            wrapper_depth: 0,
            theorems_used: 0,
            complete: false,
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let err = |message: String| DatasetError::Syntax { line, message };
            let (key, value) = raw
                .split_once('=')
                .ok_or_else(|| err("expected key=value".into()))?;
            let num = || -> Result<usize, DatasetError> {
                if value == "unbounded" {
                    return Ok(usize::MAX);
                }
                value
                    .parse()
                    .map_err(|_| err(format!("bad number {value:?} for {key}")))
            };
            match key {
                "format_version" => m.format_version = num()? as u32,
                "count_T" => m.count_t = num()?,
                "count_C" => m.count_c = num()?,
                "per_class" => m.per_class = num()?,
                "max_theorems" => m.max_theorems = num()?,
                "max_size" => m.max_size = num()?,
                "pool_size" => m.pool_size = num()?,
                "wrapper_depth" => m.wrapper_depth = num()?,
                "theorems_used" => m.theorems_used = num()?,
                "complete" => m.complete = value.parse().map_err(|_| err(format!("bad flag {value:?}")))?,
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        Ok(m)
    }
}

/// Where the manifest of a dataset file lives: `<file>.manifest`.
pub fn manifest_path(dataset: &Path) -> PathBuf {
    let mut name = dataset.as_os_str().to_os_string();
    name.push(".manifest");
    PathBuf::from(name)
}

fn fingerprint(f: &Formula) -> u64 {
    let mut h = DefaultHasher::new();
    f.hash(&mut h);
    h.finish()
}

/// Generates the corpus, handing rows to `sink` in file order. For each
/// theorem `t` in stream order the rows are `T t`, `C ~t`, `T ~~t`,
/// `C ~~~t`, ... up to the wrapper depth, skipping classes that are full
/// and formulas already emitted.
pub fn generate_dataset_with(
    axioms: &AxiomSet,
    params: GenerationParams,
    mut sink: impl FnMut(LabeledExample) -> io::Result<()>,
) -> io::Result<DatasetManifest> {
    let mut en = TheoremEnumerator::new(axioms.clone(), params.budget);
    let mut seen = HashSet::new();
    let (mut count_t, mut count_c) = (0, 0);
    let mut theorems_used = 0;
    let target = params.per_class;
    while count_t < target || count_c < target {
        let Some(th) = en.next_theorem() else { break };
        theorems_used += 1;
        let mut wrapped = th.formula;
        for depth in 0..=2 * params.wrapper_depth + 1 {
            let (label, count) = if depth % 2 == 0 {
                (Label::T, &mut count_t)
            } else {
                (Label::C, &mut count_c)
            };
            if *count < target && seen.insert(fingerprint(&wrapped)) {
                *count += 1;
                sink(LabeledExample::new(wrapped.clone(), label))?;
            }
            wrapped = Formula::not(wrapped);
        }
    }
    Ok(DatasetManifest {
        format_version: FORMAT_VERSION,
        count_t,
        count_c,
        per_class: target,
        max_theorems: params.budget.max_theorems,
        max_size: params.budget.max_size,
        pool_size: params.budget.pool_size,
        wrapper_depth: params.wrapper_depth,
        theorems_used,
        complete: count_t >= target && count_c >= target,
    })
}

/// In-memory generation over H_X.
pub fn generate_dataset(params: GenerationParams) -> (Vec<LabeledExample>, DatasetManifest) {
    let mut rows = Vec::new();
    let manifest = generate_dataset_with(&AxiomSet::hx(), params, |ex| {
        rows.push(ex);
        Ok(())
    })
    .expect("in-memory sink cannot fail");
    (rows, manifest)
}

/// Streams the corpus over H_X to `path` and writes the manifest next to it.
pub fn generate_dataset_file(path: &Path, params: GenerationParams) -> io::Result<DatasetManifest> {
    let mut w = BufWriter::new(File::create(path)?);
    let manifest = generate_dataset_with(&AxiomSet::hx(), params, |ex| writeln!(w, "{ex}"))?;
    w.flush()?;
    std::fs::write(manifest_path(path), manifest.render())?;
    Ok(manifest)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 1-based line in the file, or row number for in-memory data.
    pub line: usize,
    pub example: LabeledExample,
    pub classification: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub rows: usize,
    pub count_t: usize,
    pub count_c: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn absorb(&mut self, other: ValidationReport) {
        self.rows += other.rows;
        self.count_t += other.count_t;
        self.count_c += other.count_c;
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rows: {} (T {}, C {})", self.rows, self.count_t, self.count_c)?;
        for v in &self.violations {
            writeln!(
                f,
                "violation line {}: {} labeled {} classifies {}",
                v.line,
                v.example.formula,
                v.example.label,
                v.classification.as_str()
            )?;
        }
        write!(f, "violations: {}", self.violations.len())
    }
}

fn check_rows(rows: &[(usize, LabeledExample)], m: &LogicalMatrix) -> Result<ValidationReport, MatrixError> {
    let checked: Vec<Option<Violation>> = rows
        .par_iter()
        .map(|(line, ex)| {
            let got = classify(&ex.formula, m)?;
            Ok((got != ex.label.expected()).then(|| Violation {
                line: *line,
                example: ex.clone(),
                classification: got,
            }))
        })
        .collect::<Result<_, MatrixError>>()?;
    let count_t = rows.iter().filter(|(_, ex)| ex.label == Label::T).count();
    Ok(ValidationReport {
        rows: rows.len(),
        count_t,
        count_c: rows.len() - count_t,
        violations: checked.into_iter().flatten().collect(),
    })
}

/// Checks every row against the policy "T rows are `m`-tautologies, C rows
/// are never designated under `m`". Rows are checked in parallel.
pub fn validate_dataset(
    examples: &[LabeledExample],
    m: &LogicalMatrix,
) -> Result<ValidationReport, MatrixError> {
    let rows: Vec<(usize, LabeledExample)> = examples
        .iter()
        .enumerate()
        .map(|(i, ex)| (i + 1, ex.clone()))
        .collect();
    check_rows(&rows, m)
}

const CHUNK_ROWS: usize = 1 << 16;

/// [`validate_dataset`] over a file, streamed in chunks, with every policy in
/// one pass. Reports come back in policy order.
pub fn validate_dataset_file(
    path: &Path,
    policies: &[&LogicalMatrix],
) -> Result<Vec<ValidationReport>, DatasetError> {
    let mut reports: Vec<ValidationReport> = policies
        .iter()
        .map(|_| ValidationReport {
            rows: 0,
            count_t: 0,
            count_c: 0,
            violations: Vec::new(),
        })
        .collect();
    let mut chunk = Vec::with_capacity(CHUNK_ROWS);
    let mut flush = |chunk: &mut Vec<(usize, LabeledExample)>| -> Result<(), DatasetError> {
        for (report, m) in reports.iter_mut().zip(policies) {
            report.absorb(check_rows(chunk, m)?);
        }
        chunk.clear();
        Ok(())
    };
    for_each_row(path, |line, ex| {
        chunk.push((line, ex));
        if chunk.len() == CHUNK_ROWS {
            flush(&mut chunk)?;
        }
        Ok(())
    })?;
    flush(&mut chunk)?;
    Ok(reports)
}

/// The explanation "label each formula by its classification under `m`",
/// over the canonical renderings of `formulas`.
pub fn classification_explanation<'a>(
    formulas: impl IntoIterator<Item = &'a Formula>,
    m: &LogicalMatrix,
) -> Result<Explanation, MatrixError> {
    let mut e = Explanation::new();
    for f in formulas {
        e.insert(f.render(), classify(f, m)?.as_str());
    }
    Ok(e)
}

/// The dataset as element/label pairs for [`crate::explain::explains`].
pub fn dataset_pairs(examples: &[LabeledExample]) -> Vec<(String, String)> {
    examples
        .iter()
        .map(|ex| (ex.formula.render(), ex.label.as_str().to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{matrix_t, matrix_tprime};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn reference_rows() -> Vec<LabeledExample> {
        parse_dataset(REFERENCE_TSV).unwrap()
    }

    #[test]
    fn reference_rows_validate_under_both_policies() {
        let rows = reference_rows();
        assert_eq!(rows.len(), 22);
        for m in [matrix_t(), matrix_tprime()] {
            let report = validate_dataset(&rows, &m).unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!((report.count_t, report.count_c), (11, 11));
        }
    }

    #[test]
    fn peirce_row_is_a_tprime_violation() {
        let mut rows = reference_rows();
        rows.push(LabeledExample::new(f("((p->q)->p)->p"), Label::T));
        let report = validate_dataset(&rows, &matrix_tprime()).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].line, 23);
        assert_eq!(report.violations[0].classification, Classification::Neither);
        assert!(validate_dataset(&rows, &matrix_t()).unwrap().passed());
    }

    #[test]
    fn minimal_generation() {
        let (rows, manifest) = generate_dataset(GenerationParams {
            per_class: 1,
            ..GenerationParams::default()
        });
        assert_eq!(
            rows,
            vec![
                LabeledExample::new(f("p->q->p"), Label::T),
                LabeledExample::new(f("~(p->(q->p))"), Label::C),
            ]
        );
        assert!(manifest.complete);
        assert_eq!(manifest.theorems_used, 1);
    }

    #[test]
    fn generation_is_deterministic_duplicate_free_and_valid() {
        let params = GenerationParams {
            per_class: 3000,
            ..GenerationParams::default()
        };
        let (a, manifest) = generate_dataset(params);
        let (b, _) = generate_dataset(params);
        assert_eq!(render_dataset(&a), render_dataset(&b));
        assert_eq!((manifest.count_t, manifest.count_c), (3000, 3000));
        let distinct: HashSet<&Formula> = a.iter().map(|ex| &ex.formula).collect();
        assert_eq!(distinct.len(), a.len());
        for m in [matrix_t(), matrix_tprime()] {
            assert!(validate_dataset(&a, &m).unwrap().passed());
        }
    }

    #[test]
    fn exhausted_budget_is_flagged() {
        let (rows, manifest) = generate_dataset(GenerationParams {
            per_class: 100,
            budget: TheoremBudget {
                max_theorems: 10,
                ..TheoremBudget::default()
            },
            wrapper_depth: 0,
        });
        assert!(!manifest.complete);
        assert_eq!(rows.len(), 20);
        assert_eq!(manifest.theorems_used, 10);
    }

    #[test]
    fn wrapped_theorem_rows_are_generated() {
        // p->~~p is a theorem; its depth-1 wrappers follow it in the stream.
        let wanted = [
            LabeledExample::new(f("~(p->~~p)"), Label::C),
            LabeledExample::new(f("~~(p->~~p)"), Label::T),
            LabeledExample::new(f("~~~(p->~~p)"), Label::C),
        ];
        let mut found = 0;
        let params = GenerationParams {
            per_class: 450_000,
            ..GenerationParams::default()
        };
        generate_dataset_with(&AxiomSet::hx(), params, |ex| {
            found += wanted.contains(&ex) as usize;
            Ok(())
        })
        .unwrap();
        assert_eq!(found, 3);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let rows = reference_rows();
        let text = render_dataset(&rows);
        assert_eq!(parse_dataset(&text).unwrap(), rows);
        assert_eq!(render_dataset(&parse_dataset(&text).unwrap()), text);
        assert!(parse_dataset("").unwrap().is_empty());
        match parse_dataset("T\tp->p\nX\tp\n") {
            Err(DatasetError::Syntax { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_dataset("T p->p\n"),
            Err(DatasetError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn file_round_trip_with_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.tsv");
        let manifest = generate_dataset_file(
            &path,
            GenerationParams {
                per_class: 500,
                ..GenerationParams::default()
            },
        )
        .unwrap();
        let text = std::fs::read_to_string(manifest_path(&path)).unwrap();
        assert_eq!(DatasetManifest::parse(&text).unwrap(), manifest);
        let rows = load_dataset(&path).unwrap();
        assert_eq!(rows.len(), 1000);
        let copy = dir.path().join("copy.tsv");
        save_dataset(&copy, &rows).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&copy).unwrap());
        let reports = validate_dataset_file(&path, &[&matrix_t(), &matrix_tprime()]).unwrap();
        assert!(reports.iter().all(|r| r.passed() && r.rows == 1000));
    }

    #[test]
    fn classification_explanations_explain_reference_rows() {
        let rows = reference_rows();
        let formulas: Vec<&Formula> = rows.iter().map(|ex| &ex.formula).collect();
        let pairs = dataset_pairs(&rows);
        for m in [matrix_t(), matrix_tprime()] {
            let e = classification_explanation(formulas.iter().copied(), &m).unwrap();
            assert!(crate::explain::explains(&e, &pairs).unwrap());
        }
    }
}
