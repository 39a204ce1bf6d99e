//! Rectangular complex enclosures and principal-branch elementary
//! functions on them.
//!
//! Values on a cut follow counter-clockwise continuity. A box is treated
//! as lying on the cut only when its imaginary part is exactly `[0, 0]`;
//! a box that merely straddles a cut is rejected instead of being widened
//! across both branches.

use super::elementary::{atan, exp, log, pi, sin_cos};
use super::interval::{Dyadic, Interval};
use crate::realalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
    pub prec: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BoxError {
    #[error("enclosure straddles a branch cut")]
    StraddlesCut,
    #[error("logarithmic singularity")]
    Singular,
    #[error("divisor enclosure contains zero")]
    DivisorContainsZero,
    #[error("precision too low for this enclosure")]
    Precision,
}

/// Which side of a cut a box lying exactly on it takes its value from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Above,
    Below,
}

impl ComplexBox {
    pub fn new(re: Interval, im: Interval, prec: u32) -> Self {
        ComplexBox { re, im, prec }
    }

    pub fn real(re: Interval, prec: u32) -> Self {
        Self::new(re, Interval::zero(), prec)
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: u32) -> Self {
        Self::new(Interval::from_rational(re, prec), Interval::from_rational(im, prec), prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::real(Interval::from_i64(v), prec)
    }

    pub fn i(prec: u32) -> Self {
        Self::new(Interval::zero(), Interval::from_i64(1), prec)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Larger of the two component widths.
    pub fn width(&self) -> Dyadic {
        self.re.width().max(self.im.width())
    }

    pub fn contains(&self, o: &ComplexBox) -> bool {
        self.re.contains_interval(&o.re) && self.im.contains_interval(&o.im)
    }

    pub fn overlaps(&self, o: &ComplexBox) -> bool {
        self.re.intersect(&o.re).is_some() && self.im.intersect(&o.im).is_some()
    }

    pub fn inflate_ulps(&self, k: i64) -> Self {
        Self::new(self.re.inflate_ulps(self.prec, k), self.im.inflate_ulps(self.prec, k), self.prec)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg(), self.prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec;
        Self::new(self.re.add(&o.re, p), self.im.add(&o.im, p), p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec;
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(self.re.mul(&o.re, p), p);
        }
        let re = self.re.mul(&o.re, p).sub(&self.im.mul(&o.im, p), p);
        let im = self.re.mul(&o.im, p).add(&self.im.mul(&o.re, p), p);
        Self::new(re, im, p)
    }

    pub fn scale_pow2(&self, k: i64) -> Self {
        Self::new(self.re.mul_pow2(k), self.im.mul_pow2(k), self.prec)
    }

    pub fn mul_i(&self) -> Self {
        Self::new(self.im.neg(), self.re.clone(), self.prec)
    }

    pub fn sqr_norm(&self) -> Interval {
        self.re.sqr(self.prec).add(&self.im.sqr(self.prec), self.prec)
    }

    pub fn div(&self, o: &Self) -> Result<Self, BoxError> {
        let p = self.prec;
        if o.im.is_zero() {
            if o.re.contains_zero() {
                return Err(BoxError::DivisorContainsZero);
            }
            let d = &o.re;
            return Ok(Self::new(
                self.re.div(d, p).unwrap(),
                self.im.div(d, p).unwrap(),
                p,
            ));
        }
        let n = o.sqr_norm();
        if n.contains_zero() {
            return Err(BoxError::DivisorContainsZero);
        }
        let conj = Self::new(o.re.clone(), o.im.neg(), p);
        let num = self.mul(&conj);
        Ok(Self::new(num.re.div(&n, p).unwrap(), num.im.div(&n, p).unwrap(), p))
    }

    pub fn exp(&self) -> Self {
        let p = self.prec;
        let m = exp(&self.re, p);
        if self.im.is_zero() {
            return Self::real(m, p);
        }
        let (s, c) = sin_cos(&self.im, p);
        Self::new(m.mul(&c, p), m.mul(&s, p), p)
    }

    /// Principal argument at an exact corner.
    fn atan2_point(b: &Dyadic, a: &Dyadic, side: Side, p: u32) -> Interval {
        let pi = pi(p);
        match (a.signum(), b.signum()) {
            (0, s) => {
                let h = pi.mul_pow2(-1);
                if s > 0 {
                    h
                } else {
                    h.neg()
                }
            }
            (_, 0) if a.signum() > 0 => Interval::zero(),
            (_, 0) => match side {
                Side::Above => pi,
                Side::Below => pi.neg(),
            },
            (sa, sb) => {
                let q = Interval::point(b.clone()).div(&Interval::point(a.clone()), p + 8).unwrap();
                let t = atan(&q, p + 8);
                let r = if sa > 0 {
                    t
                } else if sb > 0 {
                    t.add(&pi, p + 8)
                } else {
                    t.sub(&pi, p + 8)
                };
                r.round(p)
            }
        }
    }

    /// Argument range over the box, or an error when the box meets the
    /// negative real axis other than from the permitted side.
    fn arg(&self, side: Side) -> Result<Interval, BoxError> {
        let p = self.prec;
        if self.im.is_zero() {
            return Ok(Self::atan2_point(&Dyadic::zero(), &self.re.lo, side, p));
        }
        if self.re.is_neg() {
            let (lo0, hi0) = (self.im.lo.signum(), self.im.hi.signum());
            let ok = lo0 > 0
                || hi0 < 0
                || (lo0 == 0 && side == Side::Above)
                || (hi0 == 0 && side == Side::Below);
            if !ok {
                return Err(BoxError::StraddlesCut);
            }
        }
        let mut out: Option<Interval> = None;
        for a in [&self.re.lo, &self.re.hi] {
            for b in [&self.im.lo, &self.im.hi] {
                let v = Self::atan2_point(b, a, side, p);
                out = Some(match out {
                    None => v,
                    Some(o) => o.hull(&v),
                });
            }
        }
        Ok(out.unwrap())
    }

    fn log_side(&self, side: Side) -> Result<Self, BoxError> {
        if self.contains_zero() {
            return Err(BoxError::Singular);
        }
        let p = self.prec;
        let n = self.sqr_norm();
        let re = log(&n, p).ok_or(BoxError::Precision)?.mul_pow2(-1);
        Ok(Self::new(re, self.arg(side)?, p))
    }

    pub fn log(&self) -> Result<Self, BoxError> {
        self.log_side(Side::Above)
    }

    pub fn sqrt(&self) -> Result<Self, BoxError> {
        self.sqrt_side(Side::Above)
    }

    fn sqrt_side(&self, side: Side) -> Result<Self, BoxError> {
        let p = self.prec;
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.contains_zero() {
            // |sqrt z| <= |z|^(1/2) on the whole box
            let n = self.sqr_norm();
            let r = n.sqrt(p).sqrt(p).hi;
            return Ok(Self::new(Interval::new(Dyadic::zero(), r.clone()), Interval::symmetric(r), p));
        }
        if self.im.is_zero() {
            return Ok(if self.re.is_pos() {
                Self::real(self.re.sqrt(p), p)
            } else {
                let s = self.re.neg().sqrt(p);
                Self::new(Interval::zero(), if side == Side::Above { s } else { s.neg() }, p)
            });
        }
        let modulus = self.sqr_norm().sqrt(p);
        if self.re.is_pos() {
            let t = modulus.add(&self.re, p).mul_pow2(-1).sqrt(p);
            let s = self.im.div(&t.mul_pow2(1), p).ok_or(BoxError::Precision)?;
            return Ok(Self::new(t, s, p));
        }
        let (lo0, hi0) = (self.im.lo.signum(), self.im.hi.signum());
        let sign = if lo0 > 0 || (lo0 == 0 && side == Side::Above) {
            1
        } else if hi0 < 0 || (hi0 == 0 && side == Side::Below) {
            -1
        } else {
            return Err(BoxError::StraddlesCut);
        };
        let s = modulus.sub(&self.re, p).mul_pow2(-1).sqrt(p);
        let im_abs = if sign > 0 { self.im.clone() } else { self.im.neg() };
        let t = im_abs.div(&s.mul_pow2(1), p).ok_or(BoxError::Precision)?;
        let t = t.intersect(&Interval::new(Dyadic::zero(), t.hi.clone())).unwrap_or(t);
        Ok(Self::new(t, if sign > 0 { s } else { s.neg() }, p))
    }

    /// `log(w + sqrt(w - 1) sqrt(w + 1))`.
    pub fn arccosh(&self) -> Result<Self, BoxError> {
        let one = Self::from_i64(1, self.prec);
        let a = self.sub(&one).sqrt()?;
        let b = self.add(&one).sqrt()?;
        self.add(&a.mul(&b)).log()
    }

    /// `(i/2) (log(1 - i w) - log(1 + i w))`, with values on both cuts
    /// taken from the `Re w > 0` side.
    pub fn arctan(&self) -> Result<Self, BoxError> {
        let p = self.prec;
        if self.im.is_zero() {
            return Ok(Self::real(atan(&self.re, p), p));
        }
        let one = Self::from_i64(1, p);
        let iw = self.mul_i();
        let la = one.add(&iw).log_side(Side::Above)?;
        let lb = one.sub(&iw).log_side(Side::Below)?;
        Ok(lb.sub(&la).mul_i().scale_pow2(-1))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }
}
