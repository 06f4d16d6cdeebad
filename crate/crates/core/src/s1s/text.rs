//! ASCII syntax: `(all x)`, `(ex x)`, `(all2 X)`, `(ex2 X)` bind the
//! following parenthesised group or atom; `s(t)` is the successor; `&`, `|`,
//! `->`, `~`, `=` as usual. Binary operands that are themselves binary are
//! always parenthesised, so no precedence rules are needed.

use crate::error::{Error, Result};

use super::{Term, S1S};

pub fn print_s1s(a: &S1S) -> String {
    let mut out = String::new();
    write(a, &mut out);
    out
}

fn term(t: &Term, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Succ(t) => {
            out.push_str("s(");
            term(t, out);
            out.push(')');
        }
    }
}

fn is_unit(a: &S1S) -> bool {
    !matches!(a, S1S::And(..) | S1S::Or(..) | S1S::Implies(..) | S1S::Eq(..))
}

fn unit(a: &S1S, out: &mut String) {
    if is_unit(a) {
        write(a, out);
    } else {
        out.push('(');
        write(a, out);
        out.push(')');
    }
}

fn write(a: &S1S, out: &mut String) {
    match a {
        S1S::Pred(x, t) => {
            out.push_str(x);
            out.push('(');
            term(t, out);
            out.push(')');
        }
        S1S::Eq(t, u) => {
            term(t, out);
            out.push_str(" = ");
            term(u, out);
        }
        S1S::Not(b) => {
            out.push('~');
            unit(b, out);
        }
        S1S::And(b, c) | S1S::Or(b, c) | S1S::Implies(b, c) => {
            let op = match a {
                S1S::And(..) => " & ",
                S1S::Or(..) => " | ",
                _ => " -> ",
            };
            unit(b, out);
            out.push_str(op);
            unit(c, out);
        }
        S1S::All(x, b) | S1S::Ex(x, b) | S1S::All2(x, b) | S1S::Ex2(x, b) => {
            let kw = match a {
                S1S::All(..) => "all",
                S1S::Ex(..) => "ex",
                S1S::All2(..) => "all2",
                _ => "ex2",
            };
            out.push('(');
            out.push_str(kw);
            out.push(' ');
            out.push_str(x);
            out.push(')');
            unit(b, out);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    LParen,
    RParen,
    And,
    Or,
    Imp,
    Not,
    Eq,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
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
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '&' => Tok::And,
            '|' => Tok::Or,
            '~' => Tok::Not,
            '=' => Tok::Eq,
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((Tok::Imp, i));
                i += 2;
                continue;
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Word(chars[start..i].iter().collect()), start));
                continue;
            }
            other => return Err(err(i, format!("unexpected character `{other}`"))),
        };
        out.push((tok, i));
        i += 1;
    }
    Ok(out)
}

fn err(offset: usize, message: String) -> Error {
    Error::Parse {
        line: 1,
        column: offset + 1,
        message,
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

/// Parses the syntax produced by [`print_s1s`].
pub fn parse_s1s(text: &str) -> Result<S1S> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let a = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(a)
}

impl Parser {
    fn peek(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn error(&self, message: &str) -> Error {
        let offset = self.toks.get(self.pos).map_or(0, |(_, o)| *o);
        err(offset, message.to_string())
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek(0) == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {tok:?}")))
        }
    }

    fn word(&mut self) -> Result<String> {
        match self.peek(0) {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.error("expected a name")),
        }
    }

    fn formula(&mut self) -> Result<S1S> {
        let lhs = self.unit()?;
        let op = match self.peek(0) {
            Some(Tok::And) => S1S::and,
            Some(Tok::Or) => S1S::or,
            Some(Tok::Imp) => S1S::implies,
            _ => return Ok(lhs),
        };
        self.pos += 1;
        let rhs = self.unit()?;
        Ok(op(lhs, rhs))
    }

    fn quantifier_ahead(&self) -> Option<String> {
        match (self.peek(0), self.peek(1), self.peek(2), self.peek(3)) {
            (Some(Tok::LParen), Some(Tok::Word(kw)), Some(Tok::Word(_)), Some(Tok::RParen))
                if matches!(kw.as_str(), "all" | "ex" | "all2" | "ex2") =>
            {
                Some(kw.clone())
            }
            _ => None,
        }
    }

    fn unit(&mut self) -> Result<S1S> {
        if let Some(kw) = self.quantifier_ahead() {
            self.pos += 2;
            let x = self.word()?;
            self.expect(Tok::RParen)?;
            let body = self.unit()?;
            return Ok(match kw.as_str() {
                "all" => S1S::all(x, body),
                "ex" => S1S::ex(x, body),
                "all2" => S1S::all2(x, body),
                _ => S1S::ex2(x, body),
            });
        }
        match self.peek(0) {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(S1S::not(self.unit()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let a = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(a)
            }
            Some(Tok::Word(w)) if w.starts_with('X') && self.peek(1) == Some(&Tok::LParen) => {
                let x = self.word()?;
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(S1S::Pred(x, t))
            }
            Some(Tok::Word(_)) => {
                let t = self.term()?;
                self.expect(Tok::Eq)?;
                Ok(S1S::Eq(t, self.term()?))
            }
            _ => Err(self.error("expected a formula")),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let w = self.word()?;
        if w == "s" && self.peek(0) == Some(&Tok::LParen) {
            self.pos += 1;
            let t = self.term()?;
            self.expect(Tok::RParen)?;
            return Ok(Term::succ(t));
        }
        Ok(Term::Var(w))
    }
}
