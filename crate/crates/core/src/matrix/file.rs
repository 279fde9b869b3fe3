//! Text format for matrices:
//!
//! ```text
//! values 3
//! designated 2
//! neg 1 2 1
//! imp 0: 2 1 2
//! imp 1: 2 2 2
//! imp 2: 0 1 2
//! ```
//!
//! Blank lines and `#` comments are ignored.

use super::{LogicalMatrix, MatrixError, Value};

fn syntax(line: usize, message: impl Into<String>) -> MatrixError {
    MatrixError::Syntax {
        line,
        message: message.into(),
    }
}

fn values(line: usize, fields: &[&str]) -> Result<Vec<Value>, MatrixError> {
    fields
        .iter()
        .map(|s| {
            s.parse::<Value>()
                .map_err(|_| syntax(line, format!("expected a truth value, found {s:?}")))
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<LogicalMatrix, MatrixError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| syntax(0, format!("unexpected end of input, expected `{what}` line")))
    };

    let (ln, line) = next("values")?;
    let size = match line.split_whitespace().collect::<Vec<_>>()[..] {
        ["values", n] => n
            .parse::<usize>()
            .map_err(|_| syntax(ln, format!("bad value count {n:?}")))?,
        _ => return Err(syntax(ln, "expected `values <n>`")),
    };

    let (ln, line) = next("designated")?;
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.first() != Some(&"designated") {
        return Err(syntax(ln, "expected `designated v1 v2 ...`"));
    }
    let designated = values(ln, &fields[1..])?;

    let (ln, line) = next("neg")?;
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.first() != Some(&"neg") {
        return Err(syntax(ln, "expected `neg v0 ... v(n-1)`"));
    }
    let neg = values(ln, &fields[1..])?;

    let mut imp = Vec::with_capacity(size);
    for row in 0..size {
        let (ln, line) = next("imp")?;
        let rest = line
            .strip_prefix("imp")
            .ok_or_else(|| syntax(ln, format!("expected `imp {row}: ...`")))?;
        let (label, cells) = rest
            .split_once(':')
            .ok_or_else(|| syntax(ln, "missing `:` after row index"))?;
        if label.trim().parse::<usize>().ok() != Some(row) {
            return Err(syntax(
                ln,
                format!("expected row {row}, found {:?}", label.trim()),
            ));
        }
        imp.push(values(ln, &cells.split_whitespace().collect::<Vec<_>>())?);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(syntax(ln, "trailing content after implication table"));
    }
    LogicalMatrix::new(size, &designated, neg, imp)
}

pub fn render_matrix(m: &LogicalMatrix) -> String {
    let join = |vs: &[Value]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = format!(
        "values {}\ndesignated {}\nneg {}\n",
        m.size,
        join(&m.designated_values()),
        join(&m.neg)
    );
    for (i, row) in m.imp.chunks(m.size).enumerate() {
        out.push_str(&format!("imp {i}: {}\n", join(row)));
    }
    out
}
