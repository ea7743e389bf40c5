//! Concrete syntax for BTL.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*            left-assoc
//! imp     := or ("->" or)*               right-assoc
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary
//!          | "always" "[" num "]" unary | "always" unary
//!          | "eventually" "[" num "]" unary
//!          | "after" "[" num "]" unary
//!          | "between" "[" num "," num "]" unary
//!          | atomOrParen ("U" "[" "=" num "]" unary | "U" unary)?
//! atomOrParen := ident | "(" formula ")"
//! num     := decimal | integer "/" integer
//! ```

use std::collections::BTreeMap;

use super::{Btl, PropId};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Maps proposition names to indices.
///
/// Names of the form `p<N>` (N >= 1) always denote `p_N`; any other name is
/// assigned the next index above every index in use.
#[derive(Clone, Debug, Default)]
pub struct PropTable {
    names: BTreeMap<String, PropId>,
    max_index: u32,
}

impl PropTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index for a name of the form `p<N>`, if it is one.
    pub fn canonical(name: &str) -> Option<PropId> {
        let digits = name.strip_prefix('p')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
            return None;
        }
        digits.parse::<u32>().ok().map(PropId::new)
    }

    /// Returns the id for `name`, allocating one if needed.
    pub fn declare(&mut self, name: &str) -> PropId {
        if let Some(id) = self.names.get(name) {
            return *id;
        }
        let id = match Self::canonical(name) {
            Some(id) => id,
            None => PropId::new(self.max_index + 1),
        };
        self.max_index = self.max_index.max(id.index());
        self.names.insert(name.to_string(), id);
        id
    }

    /// Id of a name seen before, or of any canonical `p<N>` name.
    pub fn lookup(&self, name: &str) -> Option<PropId> {
        self.names.get(name).copied().or_else(|| Self::canonical(name))
    }

    pub fn name(&self, id: PropId) -> String {
        self.names.iter().find(|(_, v)| **v == id).map(|(k, _)| k.clone()).unwrap_or_else(|| id.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Bang,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Eq,
    Minus,
    Always,
    Eventually,
    After,
    Between,
    Until,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
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
        let tok = match c {
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b',' => Tok::Comma,
            b'!' => Tok::Bang,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'=' => Tok::Eq,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'-' => Tok::Minus,
            b'<' if text[i..].starts_with("<->") => {
                i += 2;
                Tok::DArrow
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.' || bytes[i] == b'/') {
                    i += 1;
                }
                out.push((Tok::Num(text[start..i].to_string()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "always" => Tok::Always,
                    "eventually" => Tok::Eventually,
                    "after" => Tok::After,
                    "between" => Tok::Between,
                    "U" => Tok::Until,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((tok, start));
                continue;
            }
            other => {
                return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{}`", other as char) });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    table: &'a mut PropTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.syntax(format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Btl> {
        let mut lhs = self.imp()?;
        while self.eat(&Tok::DArrow) {
            let rhs = self.imp()?;
            lhs = Btl::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Btl> {
        let lhs = self.or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            return Ok(Btl::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Btl> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Bar) {
            let rhs = self.and()?;
            lhs = Btl::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Btl> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = Btl::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn num(&mut self) -> Result<Rational> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Minus) => Err(Error::NegativeConstant { pos: at }),
            Some(Tok::Num(text)) => {
                self.pos += 1;
                text.parse::<Rational>().map_err(|e| match e {
                    Error::Overflow(m) => Error::Overflow(m),
                    _ => Error::Syntax { pos: at, msg: format!("malformed number `{text}`") },
                })
            }
            _ => self.syntax("expected a number"),
        }
    }

    fn bracketed(&mut self) -> Result<Rational> {
        self.expect(&Tok::LBrack, "`[`")?;
        let c = self.num()?;
        self.expect(&Tok::RBrack, "`]`")?;
        Ok(c)
    }

    fn unary(&mut self) -> Result<Btl> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Btl::not(self.unary()?))
            }
            Some(Tok::Always) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LBrack) {
                    let c = self.bracketed()?;
                    Ok(Btl::always(c, self.unary()?))
                } else {
                    Ok(Btl::always_unbounded(self.unary()?))
                }
            }
            Some(Tok::Eventually) => {
                self.pos += 1;
                let c = self.bracketed()?;
                Ok(Btl::eventually(c, self.unary()?))
            }
            Some(Tok::After) => {
                self.pos += 1;
                let c = self.bracketed()?;
                Ok(Btl::after(c, self.unary()?))
            }
            Some(Tok::Between) => {
                let at = self.offset();
                self.pos += 1;
                self.expect(&Tok::LBrack, "`[`")?;
                let lo = self.num()?;
                self.expect(&Tok::Comma, "`,`")?;
                let hi = self.num()?;
                self.expect(&Tok::RBrack, "`]`")?;
                if lo > hi {
                    return Err(Error::EmptyBetween { pos: at, lo, hi });
                }
                Ok(Btl::between(lo, hi, self.unary()?))
            }
            _ => {
                let lhs = self.atom_or_paren()?;
                if self.eat(&Tok::Until) {
                    if self.eat(&Tok::LBrack) {
                        self.expect(&Tok::Eq, "`=`")?;
                        let c = self.num()?;
                        self.expect(&Tok::RBrack, "`]`")?;
                        return Ok(Btl::until_exact(c, lhs, self.unary()?));
                    }
                    return Ok(Btl::until(lhs, self.unary()?));
                }
                Ok(lhs)
            }
        }
    }

    fn atom_or_paren(&mut self) -> Result<Btl> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Btl::Prop(self.table.declare(&name)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Minus) => Err(Error::NegativeConstant { pos: self.offset() }),
            Some(_) => self.syntax("expected a proposition, `(`, `!` or a temporal operator"),
            None => self.syntax("unexpected end of formula"),
        }
    }
}

/// Parses a formula, mapping `p<N>` to `p_N` and other names to fresh indices.
pub fn parse_btl(text: &str) -> Result<Btl> {
    parse_btl_with(text, &mut PropTable::new())
}

/// Parses a formula, recording proposition names in `table`.
pub fn parse_btl_with(text: &str, table: &mut PropTable) -> Result<Btl> {
    let toks = lex(text)?;
    // canonical names first so free-form names never take their indices
    for (t, _) in &toks {
        if let Tok::Ident(name) = t {
            if PropTable::canonical(name).is_some() {
                table.declare(name);
            }
        }
    }
    let mut parser = Parser { toks, pos: 0, end: text.len(), table };
    let f = parser.formula()?;
    if parser.pos != parser.toks.len() {
        return parser.syntax("unexpected trailing input");
    }
    Ok(f)
}
