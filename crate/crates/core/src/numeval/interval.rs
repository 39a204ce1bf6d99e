//! Dyadic numbers `m * 2^e` and outward-rounded intervals over them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::realalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// `m * 2^e`, normalized so that `m` is odd (or zero with `e = 0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn floor_shr(m: &BigInt, s: u64) -> BigInt {
    m.div_floor(&pow2(s))
}

fn ceil_shr(m: &BigInt, s: u64) -> BigInt {
    -((-m).div_floor(&pow2(s)))
}

impl Dyadic {
    pub fn new(m: BigInt, e: i64) -> Self {
        if m.is_zero() {
            return Dyadic { m, e: 0 };
        }
        let tz = m.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { m, e }
        } else {
            Dyadic { m: m >> tz, e: e + tz as i64 }
        }
    }

    pub fn zero() -> Self {
        Dyadic { m: BigInt::zero(), e: 0 }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn signum(&self) -> i8 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    /// `floor(log2 |self|)`; undefined for zero.
    pub fn magnitude(&self) -> i64 {
        self.m.bits() as i64 - 1 + self.e
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { m: self.m.clone(), e: self.e + k }
    }

    pub fn neg(&self) -> Self {
        Dyadic { m: -&self.m, e: self.e }
    }

    pub fn abs(&self) -> Self {
        Dyadic { m: self.m.abs(), e: self.e }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as u64;
        let b = &o.m << (o.e - e) as u64;
        Self::new(a + b, e)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.m * &o.m, self.e + o.e)
    }

    /// Rounds to at most `p` significant bits.
    pub fn round(&self, p: u32, dir: Round) -> Self {
        let b = self.m.bits();
        if b <= p as u64 {
            return self.clone();
        }
        let s = b - p as u64;
        let m = match dir {
            Round::Down => floor_shr(&self.m, s),
            Round::Up => ceil_shr(&self.m, s),
        };
        Self::new(m, self.e + s as i64)
    }

    pub fn from_rational(r: &Rational, p: u32, dir: Round) -> Self {
        if r.is_integer() {
            return Self::new(r.numer().clone(), 0).round(p, dir);
        }
        let (n, d) = (r.numer(), r.denom());
        let k = p as i64 + d.bits() as i64 - n.bits() as i64 + 2;
        let (num, den) = if k >= 0 { (n << k as u64, d.clone()) } else { (n.clone(), d << (-k) as u64) };
        let (q, rem) = num.div_mod_floor(&den);
        let q = if dir == Round::Up && !rem.is_zero() { q + 1 } else { q };
        Self::new(q, -k).round(p, dir)
    }

    /// `self / o` rounded to `p` bits in the given direction; `o != 0`.
    pub fn div(&self, o: &Self, p: u32, dir: Round) -> Self {
        debug_assert!(!o.is_zero());
        if self.is_zero() {
            return Self::zero();
        }
        let k = (p as i64 + 2 + o.m.bits() as i64 - self.m.bits() as i64).max(0) as u64;
        let (num, den) = if o.m.is_negative() { (-(&self.m << k), -&o.m) } else { (&self.m << k, o.m.clone()) };
        let (q, rem) = num.div_mod_floor(&den);
        let q = if dir == Round::Up && !rem.is_zero() { q + 1 } else { q };
        Self::new(q, self.e - o.e - k as i64).round(p, dir)
    }

    pub fn to_rational(&self) -> Rational {
        if self.e >= 0 {
            Rational::from_integer(&self.m << self.e as u64)
        } else {
            Rational::new(self.m.clone(), pow2((-self.e) as u64))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.m.bits() as i64;
        let shift = (b - 60).max(0);
        let top = (&self.m >> shift as u64).to_f64().unwrap_or(0.0);
        let ex = self.e + shift;
        if ex > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if ex < -2000 {
            return 0.0;
        }
        top * 2f64.powi(ex as i32)
    }

    /// `floor(self)` as an integer.
    pub fn floor_int(&self) -> BigInt {
        if self.e >= 0 {
            &self.m << self.e as u64
        } else {
            floor_shr(&self.m, (-self.e) as u64)
        }
    }

    /// Square root rounded in the given direction; `self >= 0`.
    pub fn sqrt(&self, p: u32, dir: Round) -> Self {
        debug_assert!(self.signum() >= 0);
        if self.is_zero() {
            return self.clone();
        }
        // choose k with e + 2k even and enough bits: sqrt(m 2^(e+2k)) 2^-k
        let mut k = p as i64 + 2 - (self.m.bits() as i64 + self.e) / 2;
        if (self.e + 2 * k) % 2 != 0 {
            k += 1;
        }
        let sh = self.e + 2 * k;
        let n = if sh >= 0 { &self.m << sh as u64 } else { floor_shr(&self.m, (-sh) as u64) };
        let exact_shift = sh >= 0 || (&n << (-sh) as u64) == self.m;
        let s = n.sqrt();
        let s = if dir == Round::Up && !(exact_shift && &s * &s == n) { s + 1 } else { s };
        Self::new(s, -k).round(p, dir)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.signum().cmp(&o.signum()) {
            Ordering::Equal => {}
            c => return c,
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as u64;
        let b = &o.m << (o.e - e) as u64;
        a.cmp(&b)
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "inverted interval {lo:?} {hi:?}");
        Interval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        Interval { lo: d.clone(), hi: d }
    }

    pub fn zero() -> Self {
        Self::point(Dyadic::zero())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::point(Dyadic::from_i64(v))
    }

    pub fn from_rational(r: &Rational, p: u32) -> Self {
        Interval { lo: Dyadic::from_rational(r, p, Round::Down), hi: Dyadic::from_rational(r, p, Round::Up) }
    }

    pub fn from_rationals(lo: &Rational, hi: &Rational, p: u32) -> Self {
        Interval { lo: Dyadic::from_rational(lo, p, Round::Down), hi: Dyadic::from_rational(hi, p, Round::Up) }
    }

    /// `[-r, r]`.
    pub fn symmetric(r: Dyadic) -> Self {
        let r = r.abs();
        Interval { lo: r.neg(), hi: r }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_interval(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    /// Strictly positive / negative.
    pub fn is_pos(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_neg(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    /// Upper bound on `|x|` over the interval.
    pub fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn round(&self, p: u32) -> Self {
        Interval { lo: self.lo.round(p, Round::Down), hi: self.hi.round(p, Round::Up) }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, o: &Self, p: u32) -> Self {
        Interval { lo: self.lo.add(&o.lo).round(p, Round::Down), hi: self.hi.add(&o.hi).round(p, Round::Up) }
    }

    pub fn sub(&self, o: &Self, p: u32) -> Self {
        self.add(&o.neg(), p)
    }

    pub fn mul(&self, o: &Self, p: u32) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let c = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let lo = c.iter().min().unwrap().round(p, Round::Down);
        let hi = c.iter().max().unwrap().round(p, Round::Up);
        Interval { lo, hi }
    }

    pub fn sqr(&self, p: u32) -> Self {
        let a = self.lo.mul(&self.lo);
        let b = self.hi.mul(&self.hi);
        let hi = a.clone().max(b.clone()).round(p, Round::Up);
        let lo = if self.contains_zero() { Dyadic::zero() } else { a.min(b).round(p, Round::Down) };
        Interval { lo, hi }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Interval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    pub fn mul_i64(&self, k: i64, p: u32) -> Self {
        self.mul(&Self::from_i64(k), p)
    }

    /// `1 / self`, or `None` when the interval contains zero.
    pub fn recip(&self, p: u32) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let one = Dyadic::from_i64(1);
        let lo = one.div(&self.hi, p, Round::Down);
        let hi = one.div(&self.lo, p, Round::Up);
        Some(Interval { lo, hi })
    }

    pub fn div(&self, o: &Self, p: u32) -> Option<Self> {
        if self.is_zero() && !o.contains_zero() {
            return Some(Self::zero());
        }
        if o.is_point() && !o.lo.is_zero() {
            // exact quotient bounds for point divisors
            let d = &o.lo;
            let (lo, hi) = if d.signum() > 0 { (&self.lo, &self.hi) } else { (&self.hi, &self.lo) };
            return Some(Interval { lo: lo.div(d, p, Round::Down), hi: hi.div(d, p, Round::Up) });
        }
        Some(self.mul(&o.recip(p + 4)?, p))
    }

    /// Square root; negative parts of the interval are clamped to zero.
    pub fn sqrt(&self, p: u32) -> Self {
        let z = Dyadic::zero();
        let lo = if self.lo.signum() <= 0 { z.clone() } else { self.lo.sqrt(p, Round::Down) };
        let hi = if self.hi.signum() <= 0 { z } else { self.hi.sqrt(p, Round::Up) };
        Interval { lo, hi }
    }

    pub fn hull(&self, o: &Self) -> Self {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        let lo = self.lo.clone().max(o.lo.clone());
        let hi = self.hi.clone().min(o.hi.clone());
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Widens by `k` units in the last place at precision `p`.
    pub fn inflate_ulps(&self, p: u32, k: i64) -> Self {
        let ulp = |d: &Dyadic| {
            if d.is_zero() {
                Dyadic::zero()
            } else {
                Dyadic::new(BigInt::from(k), d.magnitude() - p as i64 + 1)
            }
        };
        Interval { lo: self.lo.sub(&ulp(&self.lo)), hi: self.hi.add(&ulp(&self.hi)) }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::{rat, ratio};

    #[test]
    fn division_is_directed() {
        let (a, b) = (Dyadic::from_i64(-7), Dyadic::from_i64(3));
        let q = ratio(-7, 3);
        for p in [4, 17, 64] {
            let lo = a.div(&b, p, Round::Down).to_rational();
            let hi = a.div(&b, p, Round::Up).to_rational();
            assert!(lo < q && q < hi);
            assert!(&hi - &lo <= ratio(8, 1) / Rational::from_integer(pow2(p as u64)));
            assert_eq!(a.neg().div(&b.neg(), p, Round::Down).to_rational(), lo);
        }
        let i = Interval::from_i64(5).div(&Interval::from_i64(-2), 10).unwrap();
        assert_eq!((i.lo.to_rational(), i.hi.to_rational()), (ratio(-5, 2), ratio(-5, 2)));
    }

    #[test]
    fn rounding_is_directed() {
        let third = ratio(1, 3);
        let lo = Dyadic::from_rational(&third, 53, Round::Down);
        let hi = Dyadic::from_rational(&third, 53, Round::Up);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!(hi.sub(&lo).magnitude() <= -53);
        let neg = Dyadic::from_rational(&-third.clone(), 10, Round::Down);
        assert!(neg.to_rational() < -third);
        assert_eq!(Dyadic::from_rational(&ratio(3, 4), 10, Round::Up).to_rational(), ratio(3, 4));
    }

    #[test]
    fn sqrt_bounds() {
        let two = Dyadic::from_i64(2);
        let lo = two.sqrt(64, Round::Down).to_rational();
        let hi = two.sqrt(64, Round::Up).to_rational();
        assert!(&lo * &lo < rat(2) && &hi * &hi > rat(2));
        assert_eq!(Dyadic::from_i64(9).sqrt(20, Round::Up), Dyadic::from_i64(3));
        assert_eq!(Dyadic::new(BigInt::from(1), -4).sqrt(20, Round::Down), Dyadic::new(BigInt::from(1), -2));
    }

    #[test]
    fn interval_ops_contain_exact_results() {
        let p = 40;
        let a = Interval::from_rational(&ratio(1, 3), p);
        let b = Interval::from_rational(&ratio(-2, 7), p);
        assert!(a.mul(&b, p).contains_rational(&ratio(-2, 21)));
        assert!(a.div(&b, p).unwrap().contains_rational(&ratio(-7, 6)));
        assert!(a.sub(&b, p).contains_rational(&ratio(13, 21)));
        assert!(b.sqr(p).contains_rational(&ratio(4, 49)));
        assert!(Interval::symmetric(Dyadic::from_i64(1)).recip(p).is_none());
        assert!(Interval::zero().mul(&a, p).is_zero());
    }
}
