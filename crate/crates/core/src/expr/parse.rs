use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Expr, Func, Mode};
use crate::realalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownIdentifier(String),
    ModeViolation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Character offset into the input.
    pub pos: usize,
    pub input: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match &self.kind {
            ParseErrorKind::Syntax(m) => m.clone(),
            ParseErrorKind::UnknownIdentifier(s) => format!("unknown identifier `{s}`"),
            ParseErrorKind::ModeViolation(s) => format!("`{s}` is not allowed in this mode"),
        };
        writeln!(f, "parse error at column {}: {msg}", self.pos + 1)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.pos))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
    End,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, (String, usize)> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let st = *i;
        while *i < cs.len() && cs[*i].is_ascii_digit() {
            *i += 1;
        }
        cs[st..*i].iter().collect::<String>()
    };
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && cs.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let st = i;
            let int = digits(&mut i);
            let mut v = Rational::from_integer(int.parse::<BigInt>().unwrap_or_default());
            if i < cs.len() && cs[i] == '.' {
                i += 1;
                let frac = digits(&mut i);
                if !frac.is_empty() {
                    let scale = BigInt::from(10u32).pow(frac.len() as u32);
                    v += Rational::new(frac.parse::<BigInt>().unwrap(), scale);
                }
            }
            // `p/q` with no whitespace is a single literal
            if i + 1 < cs.len() && cs[i] == '/' && cs[i + 1].is_ascii_digit() && !int.is_empty() && !cs[st..i].contains(&'.') {
                let save = i;
                i += 1;
                let den = digits(&mut i);
                if i < cs.len() && cs[i] == '.' {
                    i = save;
                } else {
                    let d: BigInt = den.parse().unwrap();
                    if d.is_zero() {
                        return Err(("zero denominator in literal".into(), save + 1));
                    }
                    v /= Rational::from_integer(d);
                }
            }
            out.push((Tok::Num(v), st));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            let w: String = cs[st..i].iter().collect::<String>().to_lowercase();
            out.push((Tok::Ident(w), st));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err((format!("unexpected character `{c}`"), i));
        }
    }
    out.push((Tok::End, cs.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    mode: Mode,
    var: String,
    input: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn err(&self, kind: ParseErrorKind, pos: usize) -> ParseError {
        ParseError { kind, pos, input: self.input.to_string() }
    }

    fn syntax(&self, msg: &str) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.to_string()), self.pos())
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Op(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::add(e, self.term()?);
            } else if self.eat('-') {
                e = Expr::sub(e, self.term()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.factor()?;
        loop {
            if self.eat('*') {
                e = Expr::mul(e, self.factor()?);
            } else if self.eat('/') {
                e = Expr::div(e, self.factor()?);
            } else {
                return Ok(e);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let b = self.base()?;
        if !self.eat('^') {
            return Ok(b);
        }
        let neg = self.eat('-');
        let start = self.pos();
        match self.peek().clone() {
            Tok::Num(r) if r.is_integer() => {
                self.at += 1;
                let n: i64 = r
                    .to_integer()
                    .try_into()
                    .map_err(|_| self.err(ParseErrorKind::Syntax("exponent too large".into()), start))?;
                if n > u32::MAX as i64 {
                    return Err(self.err(ParseErrorKind::Syntax("exponent too large".into()), start));
                }
                Ok(Expr::pow(b, if neg { -n } else { n }))
            }
            _ => Err(self.syntax("exponent must be an integer; use sqrt for fractional powers")),
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(r) => {
                self.at += 1;
                Ok(Expr::rational(r))
            }
            Tok::Op('-') => {
                self.at += 1;
                Ok(Expr::neg(self.base()?))
            }
            Tok::Op('(') => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(w) => {
                self.at += 1;
                if let Some(f) = Func::from_name(&w) {
                    if !self.eat('(') {
                        return Err(self.syntax(&format!("expected `(` after {w}")));
                    }
                    let a = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::apply(f, a));
                }
                self.ident(&w, pos)
            }
            Tok::End => Err(self.syntax("unexpected end of input")),
            Tok::Op(c) => Err(self.syntax(&format!("unexpected `{c}`"))),
        }
    }

    fn ident(&self, w: &str, pos: usize) -> Result<Expr, ParseError> {
        let real_var = w == "x" || w == "y";
        match self.mode {
            Mode::Complex if w == self.var => Ok(Expr::var(w)),
            Mode::Complex if w == "i" => Ok(Expr::i()),
            Mode::Complex if real_var => Err(self.err(ParseErrorKind::ModeViolation(w.into()), pos)),
            Mode::Real if real_var => Ok(Expr::var(w)),
            Mode::Real if w == "i" || w == self.var => {
                Err(self.err(ParseErrorKind::ModeViolation(w.into()), pos))
            }
            _ => Err(self.err(ParseErrorKind::UnknownIdentifier(w.into()), pos)),
        }
    }
}

/// Parses with the default complex variable `z`.
pub fn parse(text: &str, mode: Mode) -> Result<Expr, ParseError> {
    parse_with_var(text, mode, "z")
}

/// Parses with a declared complex variable name (ignored in real mode
/// except that using it there is a mode violation).
pub fn parse_with_var(text: &str, mode: Mode, var: &str) -> Result<Expr, ParseError> {
    let toks = lex(text).map_err(|(m, p)| ParseError {
        kind: ParseErrorKind::Syntax(m),
        pos: p,
        input: text.to_string(),
    })?;
    let mut p = Parser { toks, at: 0, mode, var: var.to_lowercase(), input: text };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}
