use std::fmt;

use thiserror::Error;

use super::{Formula, Var};

/// Syntax error: byte offset into the input plus the tokens that would have
/// been accepted there.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at offset {offset}: expected {}, found {found}", ExpectedList(.expected))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

struct ExpectedList<'a>(&'a [&'static str]);

impl fmt::Display for ExpectedList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            [] => f.write_str("nothing"),
            [one] => f.write_str(one),
            many => {
                f.write_str("one of ")?;
                for (i, e) in many.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str(e)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token<'a> {
    Tilde,
    Arrow,
    LParen,
    RParen,
    Ident(&'a str),
    End,
}

impl Token<'_> {
    fn describe(&self) -> String {
        match self {
            Token::Tilde => "'~'".into(),
            Token::Arrow => "'->'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Ident(name) => format!("variable '{name}'"),
            Token::End => "end of input".into(),
        }
    }
}

const ATOM_START: &[&str] = &["variable", "'~'", "'('"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    peeked: Option<(usize, Token<'a>)>,
}

impl<'a> Parser<'a> {
    fn lex(&mut self) -> Result<(usize, Token<'a>), ParseError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok((start, Token::End));
        };
        let tok = match b {
            b'~' => {
                self.pos += 1;
                Token::Tilde
            }
            b'(' => {
                self.pos += 1;
                Token::LParen
            }
            b')' => {
                self.pos += 1;
                Token::RParen
            }
            b'-' if bytes.get(start + 1) == Some(&b'>') => {
                self.pos += 2;
                Token::Arrow
            }
            b'-' => {
                return Err(ParseError {
                    offset: start,
                    expected: vec!["'->'"],
                    found: "'-'".into(),
                })
            }
            b if b.is_ascii_lowercase() => {
                let mut end = start + 1;
                while end < bytes.len()
                    && (bytes[end].is_ascii_lowercase() || bytes[end].is_ascii_digit() || bytes[end] == b'_')
                {
                    end += 1;
                }
                self.pos = end;
                Token::Ident(&self.src[start..end])
            }
            _ => {
                let ch = self.src[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: start,
                    expected: vec!["variable", "'~'", "'('", "'->'", "')'"],
                    found: format!("{ch:?}"),
                });
            }
        };
        Ok((start, tok))
    }

    fn peek(&mut self) -> Result<&(usize, Token<'a>), ParseError> {
        if self.peeked.is_none() {
            let t = self.lex()?;
            self.peeked = Some(t);
        }
        Ok(self.peeked.as_ref().unwrap())
    }

    fn bump(&mut self) -> Result<(usize, Token<'a>), ParseError> {
        self.peek()?;
        Ok(self.peeked.take().unwrap())
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.negation()?;
        if self.peek()?.1 == Token::Arrow {
            self.bump()?;
            let rhs = self.implication()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn negation(&mut self) -> Result<Formula, ParseError> {
        let mut depth = 0;
        while self.peek()?.1 == Token::Tilde {
            self.bump()?;
            depth += 1;
        }
        Ok(self.atom()?.negated(depth))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let (offset, tok) = self.bump()?;
        match tok {
            Token::Ident(name) => Ok(Formula::Var(Var::new(name).expect("lexer yields valid names"))),
            Token::LParen => {
                let inner = self.implication()?;
                let (offset, tok) = self.bump()?;
                if tok != Token::RParen {
                    return Err(ParseError {
                        offset,
                        expected: vec!["'->'", "')'"],
                        found: tok.describe(),
                    });
                }
                Ok(inner)
            }
            other => Err(ParseError {
                offset,
                expected: ATOM_START.to_vec(),
                found: other.describe(),
            }),
        }
    }
}

/// Parses the ASCII concrete syntax: `~` binds tighter than `->`, and `->`
/// associates to the right.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        src: text,
        pos: 0,
        peeked: None,
    };
    let f = parser.implication()?;
    let (offset, tok) = parser.bump()?;
    if tok != Token::End {
        return Err(ParseError {
            offset,
            expected: vec!["'->'", "end of input"],
            found: tok.describe(),
        });
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }

    #[test]
    fn peirce_shape() {
        let got = parse_formula("((p->q)->p)->p").unwrap();
        let want = Formula::imp(Formula::imp(Formula::imp(p(), q()), p()), p());
        assert_eq!(got, want);
    }

    #[test]
    fn negated_axiom() {
        let got = parse_formula("~(p->(q->p))").unwrap();
        assert_eq!(got, Formula::not(Formula::imp(p(), Formula::imp(q(), p()))));
    }

    #[test]
    fn arrow_is_right_associative() {
        assert_eq!(
            parse_formula("p->q->p").unwrap(),
            parse_formula("p->(q->p)").unwrap()
        );
    }

    #[test]
    fn tilde_binds_tighter() {
        assert_eq!(
            parse_formula("~p->q").unwrap(),
            Formula::imp(Formula::not(p()), q())
        );
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            parse_formula("  ( p ->  q )\t-> ~ ~p ").unwrap(),
            parse_formula("(p->q)->~~p").unwrap()
        );
    }

    #[test]
    fn unterminated_input_reports_offset() {
        let err = parse_formula("(p->").unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(err.expected, ATOM_START.to_vec());
        assert_eq!(err.found, "end of input");
    }

    #[test]
    fn unbalanced_and_stray_tokens() {
        assert_eq!(parse_formula("(p->q").unwrap_err().offset, 5);
        assert_eq!(parse_formula("p q").unwrap_err().offset, 2);
        assert_eq!(parse_formula("p - q").unwrap_err().offset, 2);
        assert_eq!(parse_formula("P").unwrap_err().offset, 0);
        assert_eq!(parse_formula("").unwrap_err().offset, 0);
        assert_eq!(parse_formula("p)").unwrap_err().offset, 1);
    }

    #[test]
    fn error_message_lists_expectations() {
        let msg = parse_formula("(p->").unwrap_err().to_string();
        assert_eq!(
            msg,
            "syntax error at offset 4: expected one of variable, '~', '(', found end of input"
        );
    }
}
