//! Infix and prefix readers for LTL formulas.
//!
//! Infix precedence, loosest first: `->` (right-assoc), `|`, `&`, `U`/`R`
//! (right-assoc), then the unary operators `! X F G`.
//!
//! The prefix reader follows the LBT convention used by several LTL tools:
//! `! & | i e X F G U R V t f`, operands written after the operator.

use thiserror::Error;

use super::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: unexpected end of input")]
    UnexpectedEnd { offset: usize },
    #[error("syntax error at offset {offset}: unexpected `{found}`")]
    Unexpected { offset: usize, found: String },
    #[error("unknown operator `{op}` at offset {offset}")]
    UnknownOperator { offset: usize, op: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::UnexpectedEnd { offset }
            | ParseError::Unexpected { offset, .. }
            | ParseError::UnknownOperator { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Quoted(String),
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Next,
    Finally,
    Globally,
    Until,
    Release,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) => s.clone(),
            Tok::Quoted(s) => format!("\"{s}\""),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Not => "!".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Implies => "->".into(),
            Tok::Next => "X".into(),
            Tok::Finally => "F".into(),
            Tok::Globally => "G".into(),
            Tok::Until => "U".into(),
            Tok::Release => "R".into(),
        }
    }
}

fn lex(text: &str, prefix: bool) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_lowercase() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_owned())));
            continue;
        }
        if c == b'"' && prefix {
            let end = text[i + 1..]
                .find('"')
                .ok_or(ParseError::UnexpectedEnd { offset: text.len() })?;
            out.push((start, Tok::Quoted(text[i + 1..i + 1 + end].to_owned())));
            i += end + 2;
            continue;
        }
        let tok = match c {
            b'(' if !prefix => Tok::LParen,
            b')' if !prefix => Tok::RParen,
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'X' => Tok::Next,
            b'F' => Tok::Finally,
            b'G' => Tok::Globally,
            b'U' => Tok::Until,
            b'R' => Tok::Release,
            b'V' if prefix => Tok::Release,
            b'-' if !prefix && bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(ParseError::UnknownOperator {
                    offset: start,
                    op: ch.to_string(),
                });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((offset, tok)) => ParseError::Unexpected {
                offset: *offset,
                found: tok.text(),
            },
            None => ParseError::UnexpectedEnd { offset: self.end },
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Implies) {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.binary()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            lhs = Formula::and(lhs, self.binary()?);
        }
        Ok(lhs)
    }

    fn binary(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        match self.peek() {
            Some(Tok::Until) => {
                self.bump();
                Ok(Formula::until(lhs, self.binary()?))
            }
            Some(Tok::Release) => {
                self.bump();
                Ok(Formula::release(lhs, self.binary()?))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let op: fn(Formula) -> Formula = match self.peek() {
            Some(Tok::Not) => Formula::not,
            Some(Tok::Next) => Formula::next,
            Some(Tok::Finally) => Formula::finally,
            Some(Tok::Globally) => Formula::globally,
            _ => return self.primary(),
        };
        self.bump();
        Ok(op(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let f = match name.as_str() {
                    "true" => Formula::tt(),
                    "false" => Formula::ff(),
                    _ => Formula::atom(name),
                };
                self.bump();
                Ok(f)
            }
            Some(Tok::LParen) => {
                self.bump();
                let f = self.implication()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected());
                }
                self.bump();
                Ok(f)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn prefix(&mut self) -> Result<Formula, ParseError> {
        let offset = self.offset();
        let tok = self.bump().ok_or(ParseError::UnexpectedEnd { offset })?;
        let unary: Option<fn(Formula) -> Formula> = match &tok {
            Tok::Not => Some(Formula::not),
            Tok::Next => Some(Formula::next),
            Tok::Finally => Some(Formula::finally),
            Tok::Globally => Some(Formula::globally),
            _ => None,
        };
        if let Some(op) = unary {
            return Ok(op(self.prefix()?));
        }
        let binary: Option<fn(Formula, Formula) -> Formula> = match &tok {
            Tok::And => Some(Formula::and),
            Tok::Or => Some(Formula::or),
            Tok::Until => Some(Formula::until),
            Tok::Release => Some(Formula::release),
            Tok::Ident(s) if s == "i" => Some(Formula::implies),
            Tok::Ident(s) if s == "e" => Some(|l, r| {
                Formula::or(
                    Formula::and(l, r),
                    Formula::and(Formula::not(l), Formula::not(r)),
                )
            }),
            _ => None,
        };
        if let Some(op) = binary {
            let l = self.prefix()?;
            let r = self.prefix()?;
            return Ok(op(l, r));
        }
        match tok {
            Tok::Ident(s) if s == "t" || s == "true" => Ok(Formula::tt()),
            Tok::Ident(s) if s == "f" || s == "false" => Ok(Formula::ff()),
            Tok::Ident(s) | Tok::Quoted(s) => Ok(Formula::atom(&s)),
            other => Err(ParseError::Unexpected {
                offset,
                found: other.text(),
            }),
        }
    }
}

/// Parses the infix syntax. Negation is kept as written; see
/// [`to_pnf`](super::to_pnf).
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text, false)?,
        pos: 0,
        end: text.len(),
    };
    let f = p.implication()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(f)
}

/// Parses the LBT-style prefix syntax.
pub fn parse_prefix(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text, true)?,
        pos: 0,
        end: text.len(),
    };
    let f = p.prefix()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }
    fn b() -> Formula {
        Formula::atom("b")
    }

    #[test]
    fn until_with_parenthesized_conjunction() {
        let f = parse_formula("a U (b & X a)").unwrap();
        assert_eq!(f, Formula::until(a(), Formula::and(b(), Formula::next(a()))));
    }

    #[test]
    fn derived_operators_desugar() {
        let f = parse_formula("F G a").unwrap();
        assert_eq!(
            f,
            Formula::until(Formula::tt(), Formula::release(Formula::ff(), a()))
        );
    }

    #[test]
    fn dangling_until_reports_end_offset() {
        assert_eq!(
            parse_formula("a U"),
            Err(ParseError::UnexpectedEnd { offset: 3 })
        );
    }

    #[test]
    fn unknown_operator() {
        let err = parse_formula("a W b").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnknownOperator {
                offset: 2,
                op: "W".into()
            }
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("a U b U a").unwrap();
        assert_eq!(f, Formula::until(a(), Formula::until(b(), a())));
        let g = parse_formula("a & b U a | b").unwrap();
        assert_eq!(
            g,
            Formula::or(Formula::and(a(), Formula::until(b(), a())), b())
        );
        let h = parse_formula("a -> b -> a").unwrap();
        assert_eq!(h, Formula::implies(a(), Formula::implies(b(), a())));
        let k = parse_formula("GFa").unwrap();
        assert_eq!(k, Formula::globally(Formula::finally(a())));
    }

    #[test]
    fn stray_tokens() {
        assert!(matches!(
            parse_formula("(a"),
            Err(ParseError::UnexpectedEnd { offset: 2 })
        ));
        assert!(matches!(
            parse_formula("a b"),
            Err(ParseError::Unexpected { offset: 2, .. })
        ));
        assert!(matches!(
            parse_formula(""),
            Err(ParseError::UnexpectedEnd { offset: 0 })
        ));
    }

    #[test]
    fn prefix_syntax() {
        let f = parse_prefix("U a & b X a").unwrap();
        assert_eq!(f, parse_formula("a U (b & X a)").unwrap());
        let g = parse_prefix("i G p0 V t \"q r\"").unwrap();
        assert_eq!(
            g,
            Formula::implies(
                Formula::globally(Formula::atom("p0")),
                Formula::release(Formula::tt(), Formula::atom("q r"))
            )
        );
        assert!(matches!(
            parse_prefix("U a"),
            Err(ParseError::UnexpectedEnd { .. })
        ));
    }
}
