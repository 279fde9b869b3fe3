//! String encodings of machines and tuples.
//!
//! A tuple `⟨o1, ..., on⟩` is the fields `len:payload` joined with `|`, where
//! `len` is the payload's byte length; the empty tuple is the empty string.
//! A machine is its text format with newlines written as `;`. Machines read
//! and write binary strings, so text handed to a machine goes through
//! [`text_to_bits`] (eight bits per byte, most significant first).

use thiserror::Error;

use super::{parse_machine, MachineError, TuringMachine};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error("malformed encoding at byte {offset}: {message}")]
    Malformed { offset: usize, message: String },
    #[error("expected {expected} fields, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("bad machine: {0}")]
    Machine(#[from] MachineError),
    #[error("bad bit string: {0}")]
    Bits(String),
    #[error("{0:?} is not a binary string")]
    NotBinary(String),
}

pub fn encode_fields<S: AsRef<str>>(fields: &[S]) -> String {
    fields
        .iter()
        .map(|f| format!("{}:{}", f.as_ref().len(), f.as_ref()))
        .collect::<Vec<_>>()
        .join("|")
}

pub fn decode_fields(s: &str) -> Result<Vec<String>, EncodingError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if !out.is_empty() {
            if bytes[i] != b'|' {
                return Err(EncodingError::Malformed {
                    offset: i,
                    message: "expected `|` between fields".into(),
                });
            }
            i += 1;
        }
        let digits = bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
        if digits == 0 || bytes.get(i + digits) != Some(&b':') {
            return Err(EncodingError::Malformed {
                offset: i,
                message: "expected `<length>:`".into(),
            });
        }
        let len: usize = s[i..i + digits].parse().map_err(|_| EncodingError::Malformed {
            offset: i,
            message: "length out of range".into(),
        })?;
        let body = i + digits + 1;
        let end = body
            .checked_add(len)
            .filter(|&e| e <= bytes.len())
            .ok_or_else(|| EncodingError::Malformed {
                offset: i,
                message: format!("field of length {len} runs past the end"),
            })?;
        let field = s.get(body..end).ok_or_else(|| EncodingError::Malformed {
            offset: body,
            message: "field splits a character".into(),
        })?;
        out.push(field.to_string());
        i = end;
    }
    Ok(out)
}

fn fields_exact(s: &str, n: usize) -> Result<Vec<String>, EncodingError> {
    let fields = decode_fields(s)?;
    if fields.len() != n {
        return Err(EncodingError::Arity {
            expected: n,
            found: fields.len(),
        });
    }
    Ok(fields)
}

fn binary(s: String) -> Result<String, EncodingError> {
    if s.chars().all(|c| c == '0' || c == '1') {
        Ok(s)
    } else {
        Err(EncodingError::NotBinary(s))
    }
}

pub fn encode_machine(m: &TuringMachine) -> String {
    m.render().replace('\n', ";")
}

pub fn decode_machine(s: &str) -> Result<TuringMachine, EncodingError> {
    Ok(parse_machine(&s.replace(';', "\n"))?)
}

/// `⟨M, w⟩`
pub fn encode_pair(m: &TuringMachine, w: &str) -> String {
    encode_fields(&[encode_machine(m), w.to_string()])
}

pub fn decode_pair(s: &str) -> Result<(TuringMachine, String), EncodingError> {
    let mut f = fields_exact(s, 2)?;
    let w = binary(f.pop().expect("two fields"))?;
    Ok((decode_machine(&f[0])?, w))
}

/// `⟨M1, M2⟩`
pub fn encode_machine_pair(m1: &TuringMachine, m2: &TuringMachine) -> String {
    encode_fields(&[encode_machine(m1), encode_machine(m2)])
}

pub fn decode_machine_pair(s: &str) -> Result<(TuringMachine, TuringMachine), EncodingError> {
    let f = fields_exact(s, 2)?;
    Ok((decode_machine(&f[0])?, decode_machine(&f[1])?))
}

/// `⟨⌈X, E(X)⌉⟩`: a tuple of `⟨x, y⟩` pairs.
pub fn encode_dataset<A: AsRef<str>, B: AsRef<str>>(pairs: &[(A, B)]) -> String {
    let items: Vec<String> = pairs
        .iter()
        .map(|(x, y)| encode_fields(&[x.as_ref(), y.as_ref()]))
        .collect();
    encode_fields(&items)
}

pub fn decode_dataset(s: &str) -> Result<Vec<(String, String)>, EncodingError> {
    decode_fields(s)?
        .iter()
        .map(|item| {
            let mut f = fields_exact(item, 2)?;
            let y = f.pop().expect("two fields");
            let x = f.pop().expect("two fields");
            Ok((x, y))
        })
        .collect()
}

/// An instance `⟨A, E, X⟩` of DesiredOne: learner, target, known inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesiredOneInstance {
    pub learner: TuringMachine,
    pub target: TuringMachine,
    pub inputs: Vec<String>,
}

pub fn encode_desiredone(inst: &DesiredOneInstance) -> String {
    encode_fields(&[
        encode_machine(&inst.learner),
        encode_machine(&inst.target),
        encode_fields(&inst.inputs),
    ])
}

pub fn decode_desiredone(s: &str) -> Result<DesiredOneInstance, EncodingError> {
    let f = fields_exact(s, 3)?;
    Ok(DesiredOneInstance {
        learner: decode_machine(&f[0])?,
        target: decode_machine(&f[1])?,
        inputs: decode_fields(&f[2])?
            .into_iter()
            .map(binary)
            .collect::<Result<_, _>>()?,
    })
}

pub fn text_to_bits(text: &str) -> String {
    text.bytes().map(|b| format!("{b:08b}")).collect()
}

pub fn bits_to_text(bits: &str) -> Result<String, EncodingError> {
    if !bits.len().is_multiple_of(8) {
        return Err(EncodingError::Bits(format!(
            "length {} is not a multiple of 8",
            bits.len()
        )));
    }
    let bytes = bits
        .as_bytes()
        .chunks(8)
        .map(|chunk| {
            let s = std::str::from_utf8(chunk).map_err(|e| EncodingError::Bits(e.to_string()))?;
            u8::from_str_radix(s, 2).map_err(|_| EncodingError::Bits(format!("{s:?} is not a byte")))
        })
        .collect::<Result<Vec<u8>, _>>()?;
    String::from_utf8(bytes).map_err(|e| EncodingError::Bits(e.to_string()))
}
