//! Text form of propositions.
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor ('&' factor)*
//! factor := atom | '∅' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. The formatter emits the minimal DNF with atoms in
//! frame order, so its output parses back to the same bitstring.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Frame, ParseError, Proposition, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Atom(String),
    Empty,
    And,
    Or,
    Open,
    Close,
    End,
}

struct Parser<'a> {
    frame: &'a Frame,
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '&' => Token::And,
            '|' => Token::Or,
            '(' => Token::Open,
            ')' => Token::Close,
            '∅' => Token::Empty,
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Token::Atom(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ParseError {
                    position: i,
                    message: alloc::format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((chars.len(), Token::End));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn position(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn error(&self, message: &str) -> Error {
        ParseError {
            position: self.position(),
            message: message.to_string(),
        }
        .into()
    }

    fn expr(&mut self) -> Result<Proposition> {
        let mut acc = self.term()?;
        while *self.peek() == Token::Or {
            self.pos += 1;
            acc = acc.unite(&self.term()?)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Proposition> {
        let mut acc = self.factor()?;
        while *self.peek() == Token::And {
            self.pos += 1;
            acc = acc.intersect(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Proposition> {
        match self.peek().clone() {
            Token::Atom(name) => {
                self.pos += 1;
                self.frame.atom(&name)
            }
            Token::Empty => {
                self.pos += 1;
                Ok(self.frame.empty())
            }
            Token::Open => {
                self.pos += 1;
                let inner = self.expr()?;
                if *self.peek() != Token::Close {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Token::End => Err(self.error("unexpected end of expression")),
            _ => Err(self.error("expected an atom or '('")),
        }
    }
}

/// Parses `text` against `frame`; `&` binds tighter than `|`.
pub fn parse_prop(frame: &Frame, text: &str) -> Result<Proposition> {
    let mut parser = Parser {
        frame,
        tokens: tokenize(text)?,
        pos: 0,
    };
    let p = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

/// Canonical DNF text, e.g. `A&B|B&C`; `∅` for the empty proposition.
pub fn format_prop(frame: &Frame, p: &Proposition) -> String {
    let Ok(terms) = p.dnf_terms() else {
        return "∅".to_string();
    };
    let mut parts: Vec<String> = terms
        .iter()
        .map(|t| {
            t.indices()
                .map(|i| frame.atoms()[i].as_str())
                .collect::<Vec<_>>()
                .join("&")
        })
        .collect();
    parts.sort();
    parts.join("|")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Frame {
        Frame::new(&["A", "B", "C"]).unwrap()
    }

    #[test]
    fn parses_set_notation() {
        let f = abc();
        let a = f.atom("A").unwrap();
        let b = f.atom("B").unwrap();
        let c = f.atom("C").unwrap();
        assert_eq!(parse_prop(&f, "A|C").unwrap(), a.unite(&c).unwrap());
        assert_eq!(
            parse_prop(&f, "B&(A|C)").unwrap(),
            b.intersect(&a.unite(&c).unwrap()).unwrap()
        );
        // '&' binds tighter than '|'.
        assert_eq!(
            parse_prop(&f, " A | B & C ").unwrap(),
            a.unite(&b.intersect(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let f = abc();
        let err = parse_prop(&f, "A&").unwrap_err();
        assert_eq!(
            err,
            Error::Parse(ParseError {
                position: 2,
                message: "unexpected end of expression".into()
            })
        );
        assert!(matches!(
            parse_prop(&f, "(A|B"),
            Err(Error::Parse(ParseError { position: 4, .. }))
        ));
        assert!(matches!(
            parse_prop(&f, "A B"),
            Err(Error::Parse(ParseError { position: 2, .. }))
        ));
        assert!(matches!(
            parse_prop(&f, "A+B"),
            Err(Error::Parse(ParseError { position: 1, .. }))
        ));
        assert!(matches!(
            parse_prop(&f, ""),
            Err(Error::Parse(ParseError { position: 0, .. }))
        ));
        assert_eq!(parse_prop(&f, "A|D"), Err(Error::UnknownAtom("D".into())));
    }

    #[test]
    fn formats_canonical_dnf() {
        let f = abc();
        let p = parse_prop(&f, "B&(A|C)").unwrap();
        assert_eq!(format_prop(&f, &p), "A&B|B&C");
        assert_eq!(format_prop(&f, &parse_prop(&f, "C|A").unwrap()), "A|C");
        assert_eq!(format_prop(&f, &f.empty()), "∅");
        assert_eq!(format_prop(&f, &f.total_ignorance()), "A|B|C");
        assert_eq!(parse_prop(&f, "∅").unwrap(), f.empty());
    }
}
