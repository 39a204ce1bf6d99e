//! Expressions in `z` and a single square root `s = sqrt(R)` with `R`
//! rational, kept in the normal form `A + B s` with `A`, `B` rational.

use crate::expr::{complex_split, ComplexRatFun, Expr, Func, Gaussian, SplitError};
use crate::realalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RadicalError {
    /// More than one distinct radicand.
    TooMany(usize),
    /// A function other than a square root of a rational radicand.
    Nested(Func),
    Split(SplitError),
}

impl From<SplitError> for RadicalError {
    fn from(e: SplitError) -> Self {
        RadicalError::Split(e)
    }
}

/// `a + b * sqrt(radicand)`.
#[derive(Clone, Debug)]
pub struct RadicalForm {
    pub a: ComplexRatFun,
    pub b: ComplexRatFun,
    pub radicand: Option<ComplexRatFun>,
    pub radicand_expr: Option<Expr>,
}

/// Distinct square-root radicands appearing in `e`.
pub fn radicands(e: &Expr) -> Vec<Expr> {
    let mut out: Vec<Expr> = Vec::new();
    e.walk(&mut |n| {
        if let Expr::Apply(Func::Sqrt, r) = n {
            if !out.contains(r) {
                out.push((**r).clone());
            }
        }
    });
    out
}

struct Builder {
    r: Option<(Expr, ComplexRatFun)>,
}

type Pair = (ComplexRatFun, ComplexRatFun);

impl Builder {
    fn r(&self) -> &ComplexRatFun {
        &self.r.as_ref().expect("radicand registered before use").1
    }

    fn mul(&self, x: &Pair, y: &Pair) -> Pair {
        let a = x.0.mul(&y.0);
        let a = if x.1.is_zero() || y.1.is_zero() { a } else { a.add(&x.1.mul(&y.1).mul(self.r()), false) };
        let b = x.0.mul(&y.1).add(&y.0.mul(&x.1), false);
        (a, b)
    }

    fn build(&mut self, e: &Expr) -> Result<Pair, RadicalError> {
        let zero = ComplexRatFun::zero;
        Ok(match e {
            Expr::Const(_) | Expr::Var(_) => (complex_split(e)?, zero()),
            Expr::Neg(a) => {
                let (p, q) = self.build(a)?;
                (p.neg(), q.neg())
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let sub = matches!(e, Expr::Sub(..));
                let (p, q) = self.build(a)?;
                let (u, v) = self.build(b)?;
                (p.add(&u, sub), q.add(&v, sub))
            }
            Expr::Mul(a, b) => {
                let x = self.build(a)?;
                let y = self.build(b)?;
                self.mul(&x, &y)
            }
            Expr::Div(a, b) => {
                let x = self.build(a)?;
                let (c, d) = self.build(b)?;
                if d.is_zero() {
                    (x.0.div(&c)?, x.1.div(&c)?)
                } else {
                    // x / (c + d s) = x (c - d s) / (c^2 - d^2 R)
                    let norm = c.mul(&c).add(&d.mul(&d).mul(self.r()), true);
                    let (p, q) = self.mul(&x, &(c, d.neg()));
                    (p.div(&norm)?, q.div(&norm)?)
                }
            }
            Expr::Pow(a, n) => {
                let base = self.build(a)?;
                let one = ComplexRatFun::constant(&Gaussian::real(Rational::from_integer(1.into())));
                let mut acc = (one, zero());
                for _ in 0..*n {
                    acc = self.mul(&acc, &base);
                }
                acc
            }
            Expr::Apply(Func::Sqrt, r) => {
                if !r.is_rational() {
                    return Err(RadicalError::Nested(Func::Sqrt));
                }
                match &self.r {
                    Some((known, _)) if known != &**r => return Err(RadicalError::TooMany(2)),
                    Some(_) => {}
                    None => self.r = Some(((**r).clone(), complex_split(r)?)),
                }
                let one = ComplexRatFun::constant(&Gaussian::real(Rational::from_integer(1.into())));
                (zero(), one)
            }
            Expr::Apply(f, _) => return Err(RadicalError::Nested(*f)),
        })
    }
}

impl RadicalForm {
    pub fn of(e: &Expr) -> Result<RadicalForm, RadicalError> {
        let n = radicands(e).len();
        if n > 1 {
            return Err(RadicalError::TooMany(n));
        }
        let mut b = Builder { r: None };
        let (a, bb) = b.build(e)?;
        let (radicand_expr, radicand) = match b.r {
            Some((e, r)) => (Some(e), Some(r)),
            None => (None, None),
        };
        Ok(RadicalForm { a, b: bb, radicand, radicand_expr })
    }

    /// `b^2 R`, the square of the radical part.
    pub fn radical_square(&self) -> Option<ComplexRatFun> {
        let r = self.radicand.as_ref()?;
        Some(self.b.mul(&self.b).mul(r))
    }

    /// `a^2 - b^2 R`, which vanishes wherever `a + b s` does.
    pub fn norm(&self) -> ComplexRatFun {
        match self.radical_square() {
            Some(m) => self.a.mul(&self.a).add(&m, true),
            None => self.a.mul(&self.a),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, reim_split, Mode};
    use crate::realalg::{rat, BivarPoly};

    #[test]
    fn normal_form_of_kahan_argument() {
        let e = parse("2*(z+3)*sqrt((z+3)/(27*(z+4)))", Mode::Complex).unwrap();
        let f = RadicalForm::of(&e).unwrap();
        assert!(f.a.is_zero());
        // b = 2(z + 3)
        let b = f.b.pair();
        assert_eq!(b.re.num, BivarPoly::from_terms(&[(1, 0, 2), (0, 0, 6)]));
        assert_eq!(b.im.num, BivarPoly::from_terms(&[(0, 1, 2)]));
        // b^2 R at z = 1 is 4*16*4/(27*5)
        let m = f.radical_square().unwrap();
        assert_eq!(m.eval(&rat(1), &rat(0)).unwrap(), (Rational::new(256.into(), 135.into()), rat(0)));
    }

    #[test]
    fn division_by_radical_is_rationalised() {
        let e = parse("1/(1+sqrt(z))", Mode::Complex).unwrap();
        let f = RadicalForm::of(&e).unwrap();
        // (1 - s)/(1 - z) at z = 4: value 1/3 = (1 - 2)/(1 - 4)
        let (ar, _) = f.a.eval(&rat(4), &rat(0)).unwrap();
        let (br, _) = f.b.eval(&rat(4), &rat(0)).unwrap();
        assert_eq!(&ar + &br * rat(2), Rational::new(1.into(), 3.into()));
        let _ = reim_split;
    }

    #[test]
    fn rejects_unsupported_shapes() {
        let two = parse("sqrt(z) + sqrt(z+1)", Mode::Complex).unwrap();
        assert_eq!(RadicalForm::of(&two).unwrap_err(), RadicalError::TooMany(2));
        let nested = parse("sqrt(log(z))", Mode::Complex).unwrap();
        assert!(matches!(RadicalForm::of(&nested), Err(RadicalError::Nested(_))));
        let same = parse("sqrt(z) * sqrt(z)", Mode::Complex).unwrap();
        let f = RadicalForm::of(&same).unwrap();
        assert!(f.b.is_zero());
        assert_eq!(f.a.pair().re.num, BivarPoly::x());
    }
}
