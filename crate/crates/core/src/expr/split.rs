//! Exact real/imaginary splitting of rational expressions under
//! `z = x + i*y`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Expr, Func, Gaussian};
use crate::realalg::{BivarPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("{} is not a rational operation", .0.name())]
    NonRational(Func),
    #[error("division by an identically zero expression")]
    ZeroDivisor,
}

/// `(re_num + i*im_num) / den` with `den >= 0` on the whole plane. `den`
/// is a product of squared moduli, so `den != 0` is exactly the
/// complement of the pole set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexRatFun {
    pub re_num: BivarPoly,
    pub im_num: BivarPoly,
    pub den: BivarPoly,
}

/// Numerator over denominator, coprime, denominator normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    pub num: BivarPoly,
    pub den: BivarPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunPair {
    pub re: RatFun,
    pub im: RatFun,
}

impl RatFun {
    pub fn new(num: BivarPoly, den: BivarPoly) -> Self {
        assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun { num, den: BivarPoly::one() };
        }
        let g = BivarPoly::gcd(&num, &den);
        let (n, d) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let dn = d.normalized();
        // d = s * dn for a rational s; fold s into the numerator
        let ((i, j), c) = d.leading_term().unwrap();
        let s = c / dn.leading_term().unwrap().1;
        debug_assert_eq!(dn.leading_term().unwrap().0, (i, j));
        RatFun { num: n.scale(&s.recip()), den: dn }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x, y) / d)
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den == BivarPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl ComplexRatFun {
    pub fn zero() -> Self {
        ComplexRatFun { re_num: BivarPoly::zero(), im_num: BivarPoly::zero(), den: BivarPoly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re_num.is_zero() && self.im_num.is_zero()
    }

    pub fn constant(c: &Gaussian) -> Self {
        ComplexRatFun {
            re_num: BivarPoly::constant(c.re.clone()),
            im_num: BivarPoly::constant(c.im.clone()),
            den: BivarPoly::one(),
        }
    }

    pub fn add(&self, o: &Self, sub: bool) -> Self {
        let (a, b) = (o.re_num.clone(), o.im_num.clone());
        let (a, b) = if sub { (-a, -b) } else { (a, b) };
        if self.den == o.den {
            return Self { re_num: &self.re_num + &a, im_num: &self.im_num + &b, den: self.den.clone() }.shrink();
        }
        Self {
            re_num: &(&self.re_num * &o.den) + &(&a * &self.den),
            im_num: &(&self.im_num * &o.den) + &(&b * &self.den),
            den: &self.den * &o.den,
        }
        .shrink()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re_num: &(&self.re_num * &o.re_num) - &(&self.im_num * &o.im_num),
            im_num: &(&self.re_num * &o.im_num) + &(&self.im_num * &o.re_num),
            den: &self.den * &o.den,
        }
        .shrink()
    }

    pub fn div(&self, o: &Self) -> Result<Self, SplitError> {
        let norm = &(&o.re_num * &o.re_num) + &(&o.im_num * &o.im_num);
        if norm.is_zero() {
            return Err(SplitError::ZeroDivisor);
        }
        // (a + ib)/d1 / ((c + ie)/d2) = (a + ib)(c - ie) d2 / (d1 (c^2 + e^2))
        let c = o.re_num.clone();
        let e = -o.im_num.clone();
        let re = &(&self.re_num * &c) - &(&self.im_num * &e);
        let im = &(&self.re_num * &e) + &(&self.im_num * &c);
        Ok(Self { re_num: &re * &o.den, im_num: &im * &o.den, den: &self.den * &norm }.shrink())
    }

    pub fn neg(&self) -> Self {
        Self { re_num: -self.re_num.clone(), im_num: -self.im_num.clone(), den: self.den.clone() }
    }

    /// Removes the common positive rational content.
    fn shrink(self) -> Self {
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for p in [&self.re_num, &self.im_num, &self.den] {
            for (_, _, c) in p.terms() {
                l = l.lcm(c.denom());
            }
        }
        for p in [&self.re_num, &self.im_num, &self.den] {
            for (_, _, c) in p.terms() {
                g = g.gcd(&(c * Rational::from_integer(l.clone())).to_integer());
            }
        }
        if g.is_zero() {
            return self;
        }
        let s = Rational::new(l, g);
        if s.is_one() {
            return self;
        }
        Self { re_num: self.re_num.scale(&s), im_num: self.im_num.scale(&s), den: self.den.scale(&s) }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Option<(Rational, Rational)> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            return None;
        }
        Some((self.re_num.eval(x, y) / &d, self.im_num.eval(x, y) / d))
    }

    pub fn pair(&self) -> RatFunPair {
        RatFunPair {
            re: RatFun::new(self.re_num.clone(), self.den.clone()),
            im: RatFun::new(self.im_num.clone(), self.den.clone()),
        }
    }
}

/// Splits a rational expression into `(re + i*im)/den`. In complex mode
/// the variable is `x + i*y`; the real variables `x`, `y` are themselves.
pub fn complex_split(e: &Expr) -> Result<ComplexRatFun, SplitError> {
    Ok(match e {
        Expr::Const(c) => ComplexRatFun::constant(c),
        Expr::Var(v) => {
            let (re, im) = match v.as_str() {
                "x" => (BivarPoly::x(), BivarPoly::zero()),
                "y" => (BivarPoly::y(), BivarPoly::zero()),
                _ => (BivarPoly::x(), BivarPoly::y()),
            };
            ComplexRatFun { re_num: re, im_num: im, den: BivarPoly::one() }
        }
        Expr::Neg(a) => complex_split(a)?.neg(),
        Expr::Add(a, b) => complex_split(a)?.add(&complex_split(b)?, false),
        Expr::Sub(a, b) => complex_split(a)?.add(&complex_split(b)?, true),
        Expr::Mul(a, b) => complex_split(a)?.mul(&complex_split(b)?),
        Expr::Div(a, b) => complex_split(a)?.div(&complex_split(b)?)?,
        Expr::Pow(a, n) => {
            let base = complex_split(a)?;
            let mut acc = ComplexRatFun::constant(&Gaussian::real(Rational::one()));
            let mut sq = base;
            let mut k = *n;
            while k > 0 {
                if k & 1 == 1 {
                    acc = acc.mul(&sq);
                }
                k >>= 1;
                if k > 0 {
                    sq = sq.mul(&sq);
                }
            }
            acc
        }
        Expr::Apply(f, _) => return Err(SplitError::NonRational(*f)),
    })
}

/// Real and imaginary parts as reduced bivariate rational functions.
pub fn reim_split(e: &Expr) -> Result<RatFunPair, SplitError> {
    Ok(complex_split(e)?.pair())
}

/// Exact value of a rational expression at a Gaussian rational point, or
/// `None` at a pole.
pub fn eval_exact(e: &Expr, z: &Gaussian) -> Option<Gaussian> {
    let mul = |a: &Gaussian, b: &Gaussian| Gaussian {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    };
    Some(match e {
        Expr::Const(c) => c.clone(),
        Expr::Var(v) => match v.as_str() {
            "x" => Gaussian::real(z.re.clone()),
            "y" => Gaussian::real(z.im.clone()),
            _ => z.clone(),
        },
        Expr::Neg(a) => {
            let v = eval_exact(a, z)?;
            Gaussian { re: -v.re, im: -v.im }
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (u, v) = (eval_exact(a, z)?, eval_exact(b, z)?);
            if matches!(e, Expr::Add(..)) {
                Gaussian { re: u.re + v.re, im: u.im + v.im }
            } else {
                Gaussian { re: u.re - v.re, im: u.im - v.im }
            }
        }
        Expr::Mul(a, b) => mul(&eval_exact(a, z)?, &eval_exact(b, z)?),
        Expr::Div(a, b) => {
            let (u, v) = (eval_exact(a, z)?, eval_exact(b, z)?);
            let n = &v.re * &v.re + &v.im * &v.im;
            if n.is_zero() {
                return None;
            }
            let w = mul(&u, &Gaussian { re: v.re.clone(), im: -v.im.clone() });
            Gaussian { re: w.re / &n, im: w.im / n }
        }
        Expr::Pow(a, n) => {
            let b = eval_exact(a, z)?;
            let mut acc = Gaussian::real(Rational::one());
            for _ in 0..*n {
                acc = mul(&acc, &b);
            }
            acc
        }
        Expr::Apply(..) => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, Mode};
    use crate::realalg::{rat, ratio};

    fn split(s: &str) -> RatFunPair {
        reim_split(&parse(s, Mode::Complex).unwrap()).unwrap()
    }

    #[test]
    fn identity_and_square() {
        let p = split("z");
        assert_eq!(p.re.num, BivarPoly::x());
        assert_eq!(p.im.num, BivarPoly::y());
        let p = split("z^2");
        assert_eq!(p.re.num, BivarPoly::from_terms(&[(2, 0, 1), (0, 2, -1)]));
        assert_eq!(p.im.num, BivarPoly::from_terms(&[(1, 1, 2)]));
        assert_eq!(p.im.den, BivarPoly::one());
    }

    #[test]
    fn joukowski_real_form() {
        let p = split("(1/2)*(z + 1/z)");
        // re = x/2 + x/(2(x^2+y^2)) = x(x^2+y^2+1) / (2(x^2+y^2))
        let r2 = BivarPoly::from_terms(&[(2, 0, 1), (0, 2, 1)]);
        let half = ratio(1, 2);
        assert_eq!(p.re.den, r2);
        assert_eq!(p.re.num, BivarPoly::from_terms(&[(3, 0, 1), (1, 2, 1), (1, 0, 1)]).scale(&half));
        assert_eq!(p.im.num, BivarPoly::from_terms(&[(2, 1, 1), (0, 3, 1), (0, 1, -1)]).scale(&half));
        let (x, y) = (ratio(3, 2), ratio(-1, 3));
        let re = &x / rat(2) + &x / (rat(2) * (&x * &x + &y * &y));
        assert_eq!(p.re.eval(&x, &y).unwrap(), re);
    }

    #[test]
    fn zero_divisor_and_non_rational() {
        assert_eq!(reim_split(&parse("1/(z-z)", Mode::Complex).unwrap()), Err(SplitError::ZeroDivisor));
        assert_eq!(
            reim_split(&parse("sqrt(z)", Mode::Complex).unwrap()),
            Err(SplitError::NonRational(Func::Sqrt))
        );
    }

    #[test]
    fn agrees_with_exact_evaluation() {
        let e = parse("(5*z + 12)/(3*(z + 4)) - I*z^3/(z - 2*I)", Mode::Complex).unwrap();
        let c = complex_split(&e).unwrap();
        for (x, y) in [(ratio(1, 3), ratio(2, 7)), (rat(-4), rat(1)), (ratio(-7, 2), rat(0))] {
            let z = Gaussian { re: x.clone(), im: y.clone() };
            let v = eval_exact(&e, &z).unwrap();
            assert_eq!(c.eval(&x, &y).unwrap(), (v.re, v.im));
        }
        assert!(eval_exact(&e, &Gaussian { re: rat(-4), im: rat(0) }).is_none());
        assert!(c.eval(&rat(-4), &rat(0)).is_none());
    }
}
