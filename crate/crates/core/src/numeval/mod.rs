//! Verified evaluation of expressions at exact points.

pub mod complex;
pub mod elementary;
pub mod interval;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

pub use complex::{BoxError, ComplexBox};
pub use interval::{Dyadic, Interval, Round};

use crate::expr::{complex_split, ComplexRatFun, Expr, Func};
use crate::realalg::{sign_at, BivarPoly, RealCoord, Rational};

/// Exact point of the plane; in complex mode it stands for `x + i*y`.
#[derive(Clone, Debug)]
pub struct Point {
    pub x: RealCoord,
    pub y: RealCoord,
}

impl Point {
    pub fn new(x: RealCoord, y: RealCoord) -> Self {
        Point { x, y }
    }

    pub fn rational(x: Rational, y: Rational) -> Self {
        Point { x: RealCoord::Rational(x), y: RealCoord::Rational(y) }
    }

    pub fn is_rational(&self) -> bool {
        self.x.rational().is_some() && self.y.rational().is_some()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x.display(), self.y.display())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("pole of `{0}`")]
    Pole(String),
    #[error("{0} evaluated at its branch point")]
    BranchPoint(String),
    #[error("precision budget exhausted: {0}")]
    Budget(String),
}

enum Fail {
    Retry(String),
    Domain(EvalError),
}

/// Evaluates one expression at one point, reusing exact splits and sign
/// decisions across precision levels.
pub struct Evaluator<'a> {
    expr: &'a Expr,
    point: &'a Point,
    splits: Mutex<HashMap<usize, Option<ComplexRatFun>>>,
    signs: Mutex<HashMap<(usize, u8), i8>>,
}

const RE: u8 = 0;
const IM: u8 = 1;
const RE_MINUS_ONE: u8 = 2;
const RE_PLUS_ONE: u8 = 3;
const IM_MINUS_ONE: u8 = 4;
const IM_PLUS_ONE: u8 = 5;

impl<'a> Evaluator<'a> {
    pub fn new(expr: &'a Expr, point: &'a Point) -> Self {
        Evaluator { expr, point, splits: Mutex::new(HashMap::new()), signs: Mutex::new(HashMap::new()) }
    }

    pub fn eval(&self, prec: u32) -> Result<ComplexBox, EvalError> {
        self.go(self.expr, prec).map_err(|f| match f {
            Fail::Retry(m) => EvalError::Budget(m),
            Fail::Domain(d) => d,
        })
    }

    fn split(&self, e: &Expr) -> Option<ComplexRatFun> {
        let key = e as *const Expr as usize;
        let mut m = self.splits.lock().unwrap();
        m.entry(key)
            .or_insert_with(|| if e.is_rational() { complex_split(e).ok() } else { None })
            .clone()
    }

    /// Exact sign of a part of a rational subexpression at the point.
    fn exact_sign(&self, e: &Expr, which: u8) -> Option<i8> {
        let key = (e as *const Expr as usize, which);
        if let Some(s) = self.signs.lock().unwrap().get(&key) {
            return Some(*s);
        }
        let c = self.split(e)?;
        let p: BivarPoly = match which {
            RE => c.re_num.clone(),
            IM => c.im_num.clone(),
            RE_MINUS_ONE => &c.re_num - &c.den,
            RE_PLUS_ONE => &c.re_num + &c.den,
            IM_MINUS_ONE => &c.im_num - &c.den,
            _ => &c.im_num + &c.den,
        };
        let s = if p.is_zero() { 0 } else { sign_at(&p, &self.point.x, &self.point.y) };
        self.signs.lock().unwrap().insert(key, s);
        Some(s)
    }

    fn var_box(&self, name: &str, prec: u32) -> ComplexBox {
        let enc = |c: &RealCoord| {
            let (lo, hi) = c.enclosure(prec + 8);
            Interval::from_rationals(&lo, &hi, prec + 8)
        };
        match name {
            "x" => ComplexBox::real(enc(&self.point.x), prec),
            "y" => ComplexBox::real(enc(&self.point.y), prec),
            _ => ComplexBox::new(enc(&self.point.x), enc(&self.point.y), prec),
        }
    }

    fn retry(e: BoxError, at: &Expr) -> Fail {
        Fail::Retry(format!("{e} at `{at}`"))
    }

    /// A singularity hit by an exact (point) argument is a real domain
    /// error; on a wider box it only asks for more precision.
    fn fail_at(err: BoxError, at: &Expr, w: &ComplexBox) -> Fail {
        if err == BoxError::Singular && w.re.is_point() && w.im.is_point() {
            Fail::Domain(EvalError::BranchPoint(at.to_string()))
        } else {
            Self::retry(err, at)
        }
    }

    fn go(&self, e: &Expr, p: u32) -> Result<ComplexBox, Fail> {
        Ok(match e {
            Expr::Const(c) => ComplexBox::from_rationals(&c.re, &c.im, p),
            Expr::Var(v) => self.var_box(v, p),
            Expr::Neg(a) => self.go(a, p)?.neg(),
            Expr::Add(a, b) => self.go(a, p)?.add(&self.go(b, p)?),
            Expr::Sub(a, b) => self.go(a, p)?.sub(&self.go(b, p)?),
            Expr::Mul(a, b) => self.go(a, p)?.mul(&self.go(b, p)?),
            Expr::Div(a, b) => {
                let num = self.go(a, p)?;
                let mut den = self.go(b, p)?;
                if den.contains_zero() {
                    match (self.exact_sign(b, RE), self.exact_sign(b, IM)) {
                        (Some(0), Some(0)) => return Err(Fail::Domain(EvalError::Pole(e.to_string()))),
                        (Some(sr), Some(si)) => {
                            if si == 0 {
                                den.im = Interval::zero();
                            }
                            if sr == 0 {
                                den.re = Interval::zero();
                            }
                        }
                        _ => {}
                    }
                }
                num.div(&den).map_err(|err| Self::retry(err, e))?
            }
            Expr::Pow(a, n) => {
                let b = self.go(a, p)?;
                let mut acc = ComplexBox::from_i64(1, p);
                for _ in 0..*n {
                    acc = acc.mul(&b);
                }
                acc
            }
            Expr::Apply(f, a) => {
                let mut w = self.go(a, p)?;
                self.snap(*f, a, &mut w)?;
                match f {
                    Func::Exp => w.exp(),
                    Func::Sqrt => w.sqrt().map_err(|err| Self::fail_at(err, e, &w))?,
                    Func::Log => w.log().map_err(|err| Self::fail_at(err, e, &w))?,
                    Func::Arccosh => {
                        if w.im.is_zero() && w.re.is_point() {
                            let v = &w.re.lo;
                            if *v == Dyadic::from_i64(1) {
                                return Ok(ComplexBox::from_i64(0, p));
                            }
                            if *v == Dyadic::from_i64(-1) {
                                return Ok(ComplexBox::new(Interval::zero(), elementary::pi(p), p));
                            }
                        }
                        w.arccosh().map_err(|err| Self::fail_at(err, e, &w))?
                    }
                    Func::Arctan => w.arctan().map_err(|err| Self::fail_at(err, e, &w))?,
                }
            }
        })
    }

    /// Replaces parts of a function argument's enclosure by exact zeros
    /// (or exactly +-1) when the exact value is known to be there, so that
    /// on-cut and branch-point arguments get their closure values.
    fn snap(&self, f: Func, a: &Expr, w: &mut ComplexBox) -> Result<(), Fail> {
        if !a.is_rational() || (w.re.is_point() && w.im.is_point()) {
            return Ok(());
        }
        match f {
            Func::Exp => {}
            Func::Sqrt | Func::Log | Func::Arccosh => {
                if w.im.contains_zero() && !w.im.is_zero() && self.exact_sign(a, IM) == Some(0) {
                    w.im = Interval::zero();
                }
                if w.im.is_zero() && w.re.contains_zero() && self.exact_sign(a, RE) == Some(0) {
                    if f == Func::Log {
                        return Err(Fail::Domain(EvalError::BranchPoint(format!("log({a})"))));
                    }
                    w.re = Interval::zero();
                }
                if f == Func::Arccosh && w.im.is_zero() {
                    for (which, v) in [(RE_MINUS_ONE, 1), (RE_PLUS_ONE, -1)] {
                        if w.re.contains(&Dyadic::from_i64(v)) && self.exact_sign(a, which) == Some(0) {
                            w.re = Interval::from_i64(v);
                        }
                    }
                }
            }
            Func::Arctan => {
                if w.re.contains_zero() && !w.re.is_zero() && self.exact_sign(a, RE) == Some(0) {
                    w.re = Interval::zero();
                }
                if w.im.contains_zero() && !w.im.is_zero() && self.exact_sign(a, IM) == Some(0) {
                    w.im = Interval::zero();
                }
                if w.re.is_zero() {
                    for (which, v) in [(IM_MINUS_ONE, 1), (IM_PLUS_ONE, -1)] {
                        if w.im.contains(&Dyadic::from_i64(v)) && self.exact_sign(a, which) == Some(0) {
                            return Err(Fail::Domain(EvalError::BranchPoint(format!("arctan({a})"))));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Single evaluation at a fixed precision.
pub fn eval(e: &Expr, point: &Point, prec: u32) -> Result<ComplexBox, EvalError> {
    Evaluator::new(e, point).eval(prec)
}

#[derive(Clone, Debug)]
pub struct DecideOptions {
    pub start_prec: u32,
    pub max_prec: u32,
    /// Assumed minimal separation of possible nonzero defect values.
    pub delta: f64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { start_prec: 64, max_prec: 128 * 16, delta: std::f64::consts::PI }
    }
}

impl DecideOptions {
    pub fn with_precision(prec: u32) -> Self {
        DecideOptions { max_prec: prec.max(64) * 16, ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub enum Decision {
    /// Enclosure contains zero and is narrower than the discreteness gap.
    ZeroEvidence { enclosure: ComplexBox },
    Nonzero { enclosure: ComplexBox },
    Inconclusive { reason: String, enclosure: Option<ComplexBox> },
}

impl Decision {
    pub fn enclosure(&self) -> Option<&ComplexBox> {
        match self {
            Decision::ZeroEvidence { enclosure } | Decision::Nonzero { enclosure } => Some(enclosure),
            Decision::Inconclusive { enclosure, .. } => enclosure.as_ref(),
        }
    }
}

fn radius(b: &ComplexBox) -> f64 {
    b.width().mul_pow2(-1).to_f64()
}

/// Decides whether `e` vanishes at `point`, raising the precision
/// geometrically.
pub fn decide_sign(e: &Expr, point: &Point, opts: &DecideOptions) -> Result<Decision, EvalError> {
    let ev = Evaluator::new(e, point);
    let mut p = opts.start_prec;
    let mut last = None;
    let mut reason = String::from("no evaluation succeeded");
    while p <= opts.max_prec {
        match ev.eval(p) {
            Ok(b) => {
                if !b.contains_zero() {
                    return Ok(Decision::Nonzero { enclosure: b });
                }
                if radius(&b) < opts.delta / 2.0 {
                    return Ok(Decision::ZeroEvidence { enclosure: b });
                }
                reason = "enclosure too wide".into();
                last = Some(b);
            }
            Err(EvalError::Budget(m)) => reason = m,
            Err(d) => return Err(d),
        }
        p *= 2;
    }
    Ok(Decision::Inconclusive { reason, enclosure: last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, Mode};
    use crate::realalg::{rat, ratio};

    fn ev(s: &str, x: Rational, y: Rational) -> Result<ComplexBox, EvalError> {
        eval(&parse(s, Mode::Complex).unwrap(), &Point::rational(x, y), 128)
    }

    #[test]
    fn principal_values_at_rational_points() {
        assert!(ev("log(1)", rat(0), rat(0)).unwrap().is_zero());
        assert_eq!(ev("sqrt(4)", rat(0), rat(0)).unwrap(), ComplexBox::from_i64(2, 128));
        let f = "(1/2)*(z + 1/z)";
        let f2 = format!("({f}) + sqrt(({f}) - 1)*sqrt(({f}) + 1)");
        assert_eq!(ev(&f2, rat(2), rat(0)).unwrap(), ComplexBox::from_i64(2, 128));
        assert!(matches!(ev("1/z", rat(0), rat(0)), Err(EvalError::Pole(_))));
        assert!(matches!(ev("log(z)", rat(0), rat(0)), Err(EvalError::BranchPoint(_))));
    }

    #[test]
    fn snapping_resolves_on_cut_arguments() {
        // I*z^2 = -2/9 at z = (1 + i)/3, but its imaginary part is only
        // enclosed, not computed as an exact zero
        let b = ev("log(I*z^2)", ratio(1, 3), ratio(1, 3)).unwrap();
        let (lo, hi) = b.im.to_f64_pair();
        assert!(lo <= std::f64::consts::PI && std::f64::consts::PI <= hi && hi - lo < 1e-30);
        assert!(b.re.contains_rational(&Rational::from_float((2.0f64 / 9.0).ln()).unwrap()) || (b.re.mid_f64() - (2.0f64 / 9.0).ln()).abs() < 1e-15);
        let b = ev("arccosh(z/3)", rat(-3), rat(0)).unwrap();
        assert!(b.re.is_zero());
        let sqrt2 = {
            let p = crate::realalg::UPoly::from_ints(&[-2, 0, 1]);
            let iv = crate::realalg::isolate_real_roots(&p).unwrap()[1].clone();
            RealCoord::Algebraic(crate::realalg::AlgebraicNumber::new(&p, iv))
        };
        // z^2 - 2 vanishes at sqrt 2, so log(z^2 - 2) is a branch point
        let e = parse("log(z^2 - 2)", Mode::Complex).unwrap();
        let pt = Point::new(sqrt2.clone(), RealCoord::Rational(rat(0)));
        assert!(matches!(eval(&e, &pt, 128), Err(EvalError::BranchPoint(_))));
        // sqrt(z^2 - 3) at sqrt 2 is on the cut: i exactly
        let e = parse("sqrt(z^2 - 3)", Mode::Complex).unwrap();
        let b = eval(&e, &pt, 128).unwrap();
        assert!(b.re.is_zero() && b.im.contains_rational(&rat(1)));
    }

    #[test]
    fn decide_examples() {
        let opts = DecideOptions::default();
        let e = parse("arctan(x) + arctan(y) - arctan((x + y)/(1 - x*y))", Mode::Real).unwrap();
        match decide_sign(&e, &Point::rational(rat(2), rat(2)), &opts).unwrap() {
            Decision::Nonzero { enclosure } => {
                let (a, b) = enclosure.re.to_f64_pair();
                assert!(a <= std::f64::consts::PI + 1e-10 && b >= std::f64::consts::PI - 1e-10);
            }
            d => panic!("{d:?}"),
        }
        let z = parse("z - z", Mode::Complex).unwrap();
        assert!(matches!(
            decide_sign(&z, &Point::rational(ratio(1, 3), rat(1)), &opts).unwrap(),
            Decision::ZeroEvidence { .. }
        ));
    }
}
