//! Expression trees over one complex variable or two real variables,
//! with exact Gaussian-rational constants.

mod parse;
mod split;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::realalg::upoly::fmt_rational;
use crate::realalg::Rational;

pub use parse::{parse, parse_with_var, ParseError, ParseErrorKind};
pub use split::{complex_split, eval_exact, reim_split, ComplexRatFun, RatFun, RatFunPair, SplitError};

/// `re + im*i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn real(re: Rational) -> Self {
        Gaussian { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        Gaussian { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Complex,
    Real,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Func {
    Sqrt,
    Log,
    Exp,
    Arccosh,
    Arctan,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Log => "log",
            Func::Exp => "exp",
            Func::Arccosh => "arccosh",
            Func::Arctan => "arctan",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sqrt" => Func::Sqrt,
            "log" => Func::Log,
            "exp" => Func::Exp,
            "arccosh" => Func::Arccosh,
            "arctan" => Func::Arctan,
            _ => return None,
        })
    }

    /// Functions with a branch cut.
    pub fn is_non_analytic(self) -> bool {
        self != Func::Exp
    }
}

/// Expression node. Build through the constructor functions, which keep
/// two canonical forms: `Neg` never wraps a constant, and `Pow` never
/// carries a negative exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(Gaussian),
    Var(String),
    Neg(Arc<Expr>),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Pow(Arc<Expr>, u32),
    Apply(Func, Arc<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Const(Gaussian::real(Rational::from_integer(n.into())))
    }

    pub fn rational(r: Rational) -> Expr {
        Expr::Const(Gaussian::real(r))
    }

    pub fn i() -> Expr {
        Expr::Const(Gaussian::i())
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Const(c) => Expr::Const(Gaussian { re: -c.re, im: -c.im }),
            a => Expr::Neg(Arc::new(a)),
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Arc::new(a), Arc::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Arc::new(a), Arc::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Arc::new(a), Arc::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Arc::new(a), Arc::new(b))
    }

    pub fn pow(a: Expr, n: i64) -> Expr {
        if n < 0 {
            Expr::div(Expr::int(1), Expr::Pow(Arc::new(a), n.unsigned_abs() as u32))
        } else {
            Expr::Pow(Arc::new(a), n as u32)
        }
    }

    pub fn apply(f: Func, a: Expr) -> Expr {
        Expr::Apply(f, Arc::new(a))
    }

    pub fn sqrt(a: Expr) -> Expr {
        Self::apply(Func::Sqrt, a)
    }

    pub fn log(a: Expr) -> Expr {
        Self::apply(Func::Log, a)
    }

    pub fn exp(a: Expr) -> Expr {
        Self::apply(Func::Exp, a)
    }

    pub fn arccosh(a: Expr) -> Expr {
        Self::apply(Func::Arccosh, a)
    }

    pub fn arctan(a: Expr) -> Expr {
        Self::apply(Func::Arctan, a)
    }

    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Const(_) | Expr::Var(_) => vec![],
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Apply(_, a) => vec![a],
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => vec![a, b],
        }
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Var(v) = e {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        });
        out.sort();
        out
    }

    /// True when built from constants, the variable and field operations.
    pub fn is_rational(&self) -> bool {
        let mut ok = true;
        self.walk(&mut |e| {
            if matches!(e, Expr::Apply(..)) {
                ok = false;
            }
        });
        ok
    }

    pub fn node_count(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    /// Every branch-cut carrying function occurrence, in pre-order.
    pub fn non_analytic_nodes(&self) -> Vec<(Func, Expr)> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Apply(f, a) = e {
                if f.is_non_analytic() {
                    out.push((*f, (**a).clone()));
                }
            }
        });
        out
    }

    /// Denominators of all `Div` nodes, in pre-order.
    pub fn divisors(&self) -> Vec<Expr> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Div(_, b) = e {
                out.push((**b).clone());
            }
        });
        out
    }

    pub fn substitute(&self, var: &str, by: &Expr) -> Expr {
        let s = |a: &Arc<Expr>| a.substitute(var, by);
        match self {
            Expr::Var(v) if v == var => by.clone(),
            Expr::Const(_) | Expr::Var(_) => self.clone(),
            Expr::Neg(a) => Expr::neg(s(a)),
            Expr::Add(a, b) => Expr::add(s(a), s(b)),
            Expr::Sub(a, b) => Expr::sub(s(a), s(b)),
            Expr::Mul(a, b) => Expr::mul(s(a), s(b)),
            Expr::Div(a, b) => Expr::div(s(a), s(b)),
            Expr::Pow(a, n) => Expr::Pow(Arc::new(s(a)), *n),
            Expr::Apply(f, a) => Expr::apply(*f, s(a)),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Pow(..) => 3,
            Expr::Const(c) if !c.is_real() && !c.re.is_zero() => 1,
            Expr::Const(c) if !c.is_real() && c.im != Rational::one() => 2,
            _ => 4,
        }
    }
}

fn fmt_const(c: &Gaussian, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let im = || {
        if c.im.is_one() {
            "I".to_string()
        } else {
            format!("{}*I", fmt_rational(&c.im))
        }
    };
    if c.im.is_zero() {
        write!(f, "{}", fmt_rational(&c.re))
    } else if c.re.is_zero() {
        write!(f, "{}", im())
    } else {
        write!(f, "{} + {}", fmt_rational(&c.re), im())
    }
}

/// Writes `e` so that it re-parses as a `base` of the grammar.
fn fmt_base(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        Expr::Const(c) if c.is_real() || c.re.is_zero() && c.im.is_one() => fmt_const(c, f),
        Expr::Var(_) | Expr::Apply(..) | Expr::Neg(_) => write!(f, "{e}"),
        _ => write!(f, "({e})"),
    }
}

fn fmt_at(e: &Expr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => fmt_const(c, f),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                fmt_base(a, f)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                fmt_at(a, 1, f)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                fmt_at(b, 2, f)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                fmt_at(a, 2, f)?;
                write!(f, " {} ", if matches!(self, Expr::Mul(..)) { '*' } else { '/' })?;
                fmt_at(b, 3, f)
            }
            Expr::Pow(a, n) => {
                fmt_base(a, f)?;
                write!(f, "^{n}")
            }
            Expr::Apply(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_are_canonical() {
        assert_eq!(Expr::neg(Expr::int(2)), Expr::int(-2));
        assert_eq!(
            Expr::pow(Expr::var("z"), -2),
            Expr::div(Expr::int(1), Expr::pow(Expr::var("z"), 2))
        );
    }

    #[test]
    fn printing() {
        let z = Expr::var("z");
        let e = Expr::mul(Expr::int(2), Expr::arccosh(Expr::add(Expr::int(1), Expr::div(Expr::mul(Expr::int(2), z.clone()), Expr::int(3)))));
        assert_eq!(e.to_string(), "2 * arccosh(1 + 2 * z / 3)");
        let n = Expr::neg(Expr::add(z.clone(), Expr::int(1)));
        assert_eq!(n.to_string(), "-(z + 1)");
        let p = Expr::neg(Expr::pow(z.clone(), 2));
        assert_eq!(p.to_string(), "-(z^2)");
        let s = Expr::sub(z.clone(), Expr::sub(z.clone(), Expr::int(1)));
        assert_eq!(s.to_string(), "z - (z - 1)");
    }

    #[test]
    fn non_analytic_pre_order() {
        let z = Expr::var("z");
        let inner = Expr::sqrt(z.clone());
        let e = Expr::add(Expr::log(Expr::add(inner.clone(), Expr::int(1))), Expr::exp(Expr::arctan(z.clone())));
        let kinds: Vec<Func> = e.non_analytic_nodes().into_iter().map(|(f, _)| f).collect();
        assert_eq!(kinds, vec![Func::Log, Func::Sqrt, Func::Arctan]);
        assert!(Expr::add(Expr::pow(z, 2), Expr::int(3)).non_analytic_nodes().is_empty());
    }
}
