//! Boolean query expressions over the registered space predicates.
//!
//! Grammar: expr := term (`|` term)*; term := factor (`&` factor)*;
//! factor := `~` factor | `(` expr `)` | ident.

use std::fmt;

use crate::error::{Error, Result};
use crate::space::FiniteSpace;
use crate::spaceprops;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyExpr {
    Ident(String),
    Not(Box<PropertyExpr>),
    And(Box<PropertyExpr>, Box<PropertyExpr>),
    Or(Box<PropertyExpr>, Box<PropertyExpr>),
}

impl PropertyExpr {
    /// Evaluates against the predicate registry; unknown identifiers are
    /// reported at evaluation time.
    pub fn eval(&self, sp: &FiniteSpace) -> Result<bool> {
        match self {
            PropertyExpr::Ident(name) => match spaceprops::lookup(name) {
                Some(p) => p(sp),
                None => Err(Error::UnknownIdentifier(name.clone())),
            },
            PropertyExpr::Not(e) => Ok(!e.eval(sp)?),
            PropertyExpr::And(a, b) => Ok(a.eval(sp)? && b.eval(sp)?),
            PropertyExpr::Or(a, b) => Ok(a.eval(sp)? || b.eval(sp)?),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            PropertyExpr::Or(..) => 0,
            PropertyExpr::And(..) => 1,
            PropertyExpr::Not(..) => 2,
            PropertyExpr::Ident(..) => 3,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let me = self.precedence();
        if me < min {
            write!(f, "(")?;
        }
        match self {
            PropertyExpr::Ident(name) => write!(f, "{name}")?,
            PropertyExpr::Not(e) => {
                write!(f, "~")?;
                e.fmt_prec(f, 2)?;
            }
            PropertyExpr::And(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " & ")?;
                b.fmt_prec(f, 2)?;
            }
            PropertyExpr::Or(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " | ")?;
                b.fmt_prec(f, 1)?;
            }
        }
        if me < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for PropertyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    And,
    Or,
    Not,
    LParen,
    RParen,
}

struct Lexer {
    tokens: Vec<(Token, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexer> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let at = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '&' | '|' | '~' | '(' | ')' => {
                chars.next();
                col += 1;
                let t = match c {
                    '&' => Token::And,
                    '|' => Token::Or,
                    '~' => Token::Not,
                    '(' => Token::LParen,
                    _ => Token::RParen,
                };
                tokens.push((t, at.0, at.1));
            }
            c if c.is_ascii_lowercase() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        ident.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Ident(ident), at.0, at.1));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(Lexer {
        tokens,
        pos: 0,
        end: (line, col),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}

pub fn parse_query(text: &str) -> Result<PropertyExpr> {
    let mut lx = lex(text)?;
    let expr = parse_or(&mut lx)?;
    if lx.peek().is_some() {
        return Err(lx.error("trailing input after expression"));
    }
    Ok(expr)
}

fn parse_or(lx: &mut Lexer) -> Result<PropertyExpr> {
    let mut left = parse_and(lx)?;
    while lx.peek() == Some(&Token::Or) {
        lx.next();
        let right = parse_and(lx)?;
        left = PropertyExpr::Or(Box::new(left), Box::new(right));
    }
    Ok(left)
}

fn parse_and(lx: &mut Lexer) -> Result<PropertyExpr> {
    let mut left = parse_factor(lx)?;
    while lx.peek() == Some(&Token::And) {
        lx.next();
        let right = parse_factor(lx)?;
        left = PropertyExpr::And(Box::new(left), Box::new(right));
    }
    Ok(left)
}

fn parse_factor(lx: &mut Lexer) -> Result<PropertyExpr> {
    match lx.peek() {
        Some(Token::Not) => {
            lx.next();
            Ok(PropertyExpr::Not(Box::new(parse_factor(lx)?)))
        }
        Some(Token::LParen) => {
            lx.next();
            let inner = parse_or(lx)?;
            if lx.peek() != Some(&Token::RParen) {
                return Err(lx.error("expected `)`"));
            }
            lx.next();
            Ok(inner)
        }
        Some(Token::Ident(_)) => {
            if let Some(Token::Ident(name)) = lx.next() {
                Ok(PropertyExpr::Ident(name))
            } else {
                unreachable!()
            }
        }
        _ => Err(lx.error("expected identifier, `~`, or `(`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::FiniteSpace;

    #[test]
    fn parses_and_not() {
        let e = parse_query("locally_indiscrete & ~indiscrete").unwrap();
        assert_eq!(
            e,
            PropertyExpr::And(
                Box::new(PropertyExpr::Ident("locally_indiscrete".into())),
                Box::new(PropertyExpr::Not(Box::new(PropertyExpr::Ident(
                    "indiscrete".into()
                ))))
            )
        );
    }

    #[test]
    fn parses_parenthesized_or() {
        let e = parse_query("(hyperconnected | resolvable)").unwrap();
        assert!(matches!(e, PropertyExpr::Or(..)));
    }

    #[test]
    fn reports_error_at_end_of_input() {
        let err = parse_query("a &").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 4);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_characters() {
        assert!(matches!(parse_query("a ^ b"), Err(Error::Parse { .. })));
    }

    #[test]
    fn unknown_identifier_deferred_to_evaluation() {
        let e = parse_query("made_up_name").unwrap();
        let sp = FiniteSpace::indiscrete(2);
        assert!(matches!(e.eval(&sp), Err(Error::UnknownIdentifier(_))));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "locally_indiscrete & ~indiscrete",
            "(hyperconnected | resolvable) & semi_hausdorff",
            "~(a | b) & c",
            "a | b & c | ~d",
        ] {
            let e = parse_query(text).unwrap();
            let again = parse_query(&e.to_string()).unwrap();
            assert_eq!(e, again, "display of `{text}` did not round trip");
        }
    }

    #[test]
    fn evaluates_against_registry() {
        let sp = FiniteSpace::indiscrete(2);
        assert!(parse_query("indiscrete").unwrap().eval(&sp).unwrap());
        assert!(parse_query("locally_indiscrete & ~semi_hausdorff")
            .unwrap()
            .eval(&sp)
            .unwrap());
        assert!(!parse_query("discrete").unwrap().eval(&sp).unwrap());
    }
}
