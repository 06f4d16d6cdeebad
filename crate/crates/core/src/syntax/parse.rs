use crate::error::{Error, Result};

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Circ,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Prec,
    ForallSym,
    ExistsSym,
    Dot,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(s, "o" | "bot" | "top")
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        let err = |message: String| Error::Parse {
            line: l0,
            column: c0,
            message,
        };
        let mut width = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                column += 1;
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '.' => Tok::Dot,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '~' | '¬' => Tok::Not,
            '◦' | '∘' => Tok::Circ,
            '⊃' | '→' => Tok::Imp,
            '↔' => Tok::Iff,
            '≺' => Tok::Prec,
            '⊥' => Tok::Zero,
            '⊤' => Tok::One,
            '∀' => Tok::ForallSym,
            '∃' => Tok::ExistsSym,
            '-' => match chars.get(i + 1) {
                Some('>') => {
                    width = 2;
                    Tok::Imp
                }
                Some('<') => {
                    width = 2;
                    Tok::Prec
                }
                _ => return Err(err("expected `->` or `-<`".into())),
            },
            '<' => {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    width = 3;
                    Tok::Iff
                } else {
                    return Err(err("expected `<->`".into()));
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                width = j - i;
                match word.as_str() {
                    "0" | "bot" => Tok::Zero,
                    "1" | "top" => Tok::One,
                    "o" => Tok::Circ,
                    w if is_identifier(w) => Tok::Ident(word),
                    _ => return Err(err(format!("bad identifier `{word}`"))),
                }
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
        i += width;
        column += width;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

/// Parses the concrete syntax. Derived connectives (`~`, `<->`, `-<`) are
/// expanded into primitives.
pub fn parse(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let end = text.lines().enumerate().last().map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    let mut p = Parser { toks, pos: 0, end };
    let f = p.formula()?;
    if let Some(t) = p.peek() {
        let message = if t.tok == Tok::RParen {
            "unbalanced parentheses: unexpected `)`".to_string()
        } else {
            format!("unexpected trailing input {:?}", t.tok)
        };
        return Err(p.error_at(p.pos, message));
    }
    Ok(f)
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn peek_tok(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|s| &s.tok)
    }

    fn error_at(&self, pos: usize, message: String) -> Error {
        let (line, column) = self
            .toks
            .get(pos)
            .map_or(self.end, |t| (t.line, t.column));
        Error::Parse {
            line,
            column,
            message,
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek_tok(0) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Is a quantifier prefix (`A p.`, `∀p.`) at the cursor? Returns `Some(is_forall)`.
    fn quantifier_ahead(&self) -> Option<bool> {
        let kind = match self.peek_tok(0)? {
            Tok::ForallSym => true,
            Tok::ExistsSym => false,
            Tok::Ident(w) if w == "A" || w == "E" => {
                if !matches!(self.peek_tok(1), Some(Tok::Ident(_))) || self.peek_tok(2) != Some(&Tok::Dot) {
                    return None;
                }
                w == "A"
            }
            _ => return None,
        };
        Some(kind)
    }

    fn formula(&mut self) -> Result<Formula> {
        if self.quantifier_ahead().is_some() {
            return self.quantified();
        }
        let mut lhs = self.implication()?;
        loop {
            if self.eat(&Tok::Iff) {
                let rhs = self.implication()?;
                lhs = Formula::iff(lhs, rhs);
            } else if self.eat(&Tok::Prec) {
                let rhs = self.implication()?;
                lhs = Formula::prec(lhs, rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn quantified(&mut self) -> Result<Formula> {
        let is_forall = self.quantifier_ahead().expect("checked by caller");
        self.pos += 1;
        let name = match self.peek_tok(0) {
            Some(Tok::Ident(n)) => n.clone(),
            _ => return Err(self.error_at(self.pos, "expected a variable after quantifier".into())),
        };
        self.pos += 1;
        if !self.eat(&Tok::Dot) {
            return Err(self.error_at(self.pos, "expected `.` after quantified variable".into()));
        }
        let body = self.formula()?;
        Ok(if is_forall {
            Formula::forall(name, body)
        } else {
            Formula::exists(name, body)
        })
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Imp) {
            let rhs = if self.quantifier_ahead().is_some() {
                self.quantified()?
            } else {
                self.implication()?
            };
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Circ) {
            return Ok(Formula::circ(self.unary()?));
        }
        if self.eat(&Tok::Not) {
            return Ok(Formula::neg(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        if self.quantifier_ahead().is_some() {
            return self.quantified();
        }
        let start = self.pos;
        let Some(t) = self.peek().cloned() else {
            return Err(self.error_at(self.pos, "unexpected end of input".into()));
        };
        self.pos += 1;
        match t.tok {
            Tok::Ident(n) => Ok(Formula::Var(n)),
            Tok::Zero => Ok(Formula::Bottom),
            Tok::One => Ok(Formula::Top),
            Tok::LParen => {
                let inner = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error_at(start, "unbalanced parentheses: missing `)`".into()));
                }
                Ok(inner)
            }
            Tok::RParen => Err(self.error_at(start, "unbalanced parentheses: unexpected `)`".into())),
            other => Err(self.error_at(start, format!("unexpected {other:?}"))),
        }
    }
}
