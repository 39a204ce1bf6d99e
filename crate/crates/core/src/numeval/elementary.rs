//! Verified real elementary functions on intervals. Each returns an
//! enclosure of the exact image, computed at a few guard bits above the
//! requested precision and then rounded outward.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::interval::{Dyadic, Interval};
use crate::realalg::Rational;

const GUARD: u32 = 24;

/// Adds `[-2|t|, 2|t|]` for a geometric tail with ratio at most 1/2.
fn with_tail(sum: Interval, next: &Interval, w: u32) -> Interval {
    let r = next.mag().mul_pow2(1);
    sum.add(&Interval::symmetric(r), w)
}

fn tiny(t: &Interval, w: u32) -> bool {
    let m = t.mag();
    m.is_zero() || m.magnitude() < -(w as i64) - 4
}

/// `sum_{n>=0} x^(2n+1) / (2n+1)` with alternating signs when `alt`.
/// Requires `|x| <= 1/2`.
fn odd_series(x: &Interval, alt: bool, w: u32) -> Interval {
    if x.is_zero() {
        return Interval::zero();
    }
    let x2 = x.sqr(w);
    let mut pw = x.clone();
    let mut sum = Interval::zero();
    let mut n = 0i64;
    loop {
        let term = pw.div(&Interval::from_i64(2 * n + 1), w).unwrap();
        if tiny(&term, w) {
            return with_tail(sum, &term, w);
        }
        sum = if alt && n % 2 == 1 { sum.sub(&term, w) } else { sum.add(&term, w) };
        pw = pw.mul(&x2, w);
        n += 1;
    }
}

struct ConstCache(Mutex<Option<(u32, Interval)>>);

impl ConstCache {
    const fn new() -> Self {
        ConstCache(Mutex::new(None))
    }

    fn get(&self, p: u32, f: impl FnOnce(u32) -> Interval) -> Interval {
        let mut g = self.0.lock().unwrap();
        if let Some((q, v)) = g.as_ref() {
            if *q >= p {
                return v.round(p);
            }
        }
        let q = p.max(256);
        let v = f(q);
        *g = Some((q, v.clone()));
        v.round(p)
    }
}

static PI: ConstCache = ConstCache::new();
static LN2: ConstCache = ConstCache::new();

pub fn pi(p: u32) -> Interval {
    PI.get(p, |q| {
        let w = q + GUARD;
        let a = odd_series(&Interval::from_rational(&Rational::new(1.into(), 5.into()), w), true, w);
        let b = odd_series(&Interval::from_rational(&Rational::new(1.into(), 239.into()), w), true, w);
        a.mul_i64(16, w).sub(&b.mul_i64(4, w), w).round(q)
    })
}

pub fn ln2(p: u32) -> Interval {
    LN2.get(p, |q| {
        let w = q + GUARD;
        odd_series(&Interval::from_rational(&Rational::new(1.into(), 3.into()), w), false, w)
            .mul_pow2(1)
            .round(q)
    })
}

fn exp_point(x: &Dyadic, p: u32) -> Interval {
    if x.is_zero() {
        return Interval::from_i64(1);
    }
    let s = (x.magnitude() + 9).max(0) as u32;
    let w = p + s + GUARD;
    let r = Interval::point(x.mul_pow2(-(s as i64)));
    let mut sum = Interval::zero();
    let mut term = Interval::from_i64(1);
    let mut k = 1i64;
    loop {
        if tiny(&term, w) {
            sum = with_tail(sum, &term, w);
            break;
        }
        sum = sum.add(&term, w);
        term = term.mul(&r, w).div(&Interval::from_i64(k), w).unwrap();
        k += 1;
    }
    for _ in 0..s {
        sum = sum.sqr(w);
    }
    sum.round(p)
}

pub fn exp(x: &Interval, p: u32) -> Interval {
    if x.is_point() {
        return exp_point(&x.lo, p);
    }
    Interval::new(exp_point(&x.lo, p).lo, exp_point(&x.hi, p).hi)
}

fn log_point(x: &Dyadic, p: u32) -> Interval {
    debug_assert!(x.signum() > 0);
    let b = x.mantissa().bits() as i64;
    // x = y * 2^k with y in [1/2, 1)
    let mut k = b + x.exponent();
    let mut y = Dyadic::new(x.mantissa().clone(), -b);
    // move y into [1/sqrt2, sqrt2)
    if y.mul(&y) < Dyadic::new(1.into(), -1) {
        y = y.mul_pow2(1);
        k -= 1;
    }
    let w = p + GUARD + (64 - (k.unsigned_abs()).leading_zeros());
    let one = Interval::from_i64(1);
    let yi = Interval::point(y);
    let t = yi.sub(&one, w).div(&yi.add(&one, w), w).unwrap();
    let at = odd_series(&t, false, w).mul_pow2(1);
    let kl = if k == 0 { Interval::zero() } else { ln2(w).mul_i64(k, w) };
    at.add(&kl, w).round(p)
}

/// Natural logarithm; `None` unless the interval is strictly positive.
pub fn log(x: &Interval, p: u32) -> Option<Interval> {
    if !x.is_pos() {
        return None;
    }
    if x.is_point() {
        return Some(log_point(&x.lo, p));
    }
    Some(Interval::new(log_point(&x.lo, p).lo, log_point(&x.hi, p).hi))
}

fn atan_small(x: &Interval, w: u32) -> Interval {
    // three halvings: atan x = 2 atan(x / (1 + sqrt(1 + x^2)))
    let one = Interval::from_i64(1);
    let mut t = x.clone();
    for _ in 0..3 {
        let d = one.add(&one.add(&t.sqr(w), w).sqrt(w), w);
        t = t.div(&d, w).unwrap();
    }
    odd_series(&t, true, w).mul_pow2(3)
}

fn atan_point(x: &Dyadic, p: u32) -> Interval {
    if x.is_zero() {
        return Interval::zero();
    }
    let w = p + GUARD;
    let one = Dyadic::from_i64(1);
    let xi = Interval::point(x.clone());
    let r = if x.abs() <= one {
        atan_small(&xi, w)
    } else {
        let half_pi = pi(w).mul_pow2(-1);
        let inv = xi.recip(w).unwrap();
        let v = half_pi.sub(&atan_small(&inv.mul_i64(x.signum() as i64, w), w), w);
        if x.signum() > 0 {
            v
        } else {
            v.neg()
        }
    };
    r.round(p)
}

pub fn atan(x: &Interval, p: u32) -> Interval {
    if x.is_point() {
        return atan_point(&x.lo, p);
    }
    Interval::new(atan_point(&x.lo, p).lo, atan_point(&x.hi, p).hi)
}

/// `(sin x, cos x)` at a point.
fn sin_cos_point(x: &Dyadic, p: u32) -> (Interval, Interval) {
    if x.is_zero() {
        return (Interval::zero(), Interval::from_i64(1));
    }
    let mag = x.magnitude().max(0) as u32;
    let w = p + GUARD + mag;
    let half_pi = pi(w + mag).mul_pow2(-1);
    let xi = Interval::point(x.clone());
    let q = xi.div(&half_pi, w).unwrap().mid();
    let k: BigInt = q.add(&Dyadic::new(1.into(), -1)).floor_int();
    let r = xi.sub(&half_pi.mul(&Interval::point(Dyadic::new(k.clone(), 0)), w), w);
    let r2 = r.sqr(w);
    let series = |start: Interval, first: i64| {
        // sum (-1)^n r^(2n+first) / (2n+first)!
        let mut sum = Interval::zero();
        let mut term = start;
        let mut n = first;
        let mut neg = false;
        loop {
            if tiny(&term, w) {
                return with_tail(sum, &term, w);
            }
            sum = if neg { sum.sub(&term, w) } else { sum.add(&term, w) };
            term = term.mul(&r2, w).div(&Interval::from_i64((n + 1) * (n + 2)), w).unwrap();
            n += 2;
            neg = !neg;
        }
    };
    let s = series(r.clone(), 1);
    let c = series(Interval::from_i64(1), 0);
    let km = k.mod_floor_4();
    let (s, c) = match km {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    };
    let unit = Interval::new(Dyadic::from_i64(-1), Dyadic::from_i64(1));
    (
        s.intersect(&unit).unwrap_or(unit.clone()).round(p),
        c.intersect(&unit).unwrap_or(unit.clone()).round(p),
    )
}

trait Mod4 {
    fn mod_floor_4(&self) -> u8;
}

impl Mod4 for BigInt {
    fn mod_floor_4(&self) -> u8 {
        let r = self % BigInt::from(4);
        let r = if r.is_negative() { r + 4 } else { r };
        r.to_u8().unwrap_or(0)
    }
}

/// `(sin x, cos x)` over an interval, by the mean value form around the
/// midpoint (both derivatives are bounded by 1).
pub fn sin_cos(x: &Interval, p: u32) -> (Interval, Interval) {
    if x.is_point() {
        return sin_cos_point(&x.lo, p);
    }
    let m = x.mid();
    let rad = Interval::symmetric(x.hi.sub(&m));
    let (s, c) = sin_cos_point(&m, p + 4);
    let unit = Interval::new(Dyadic::from_i64(-1), Dyadic::from_i64(1));
    let s = s.add(&rad, p).intersect(&unit).unwrap_or(unit.clone());
    let c = c.add(&rad, p).intersect(&unit).unwrap_or(unit);
    (s, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::{rat, ratio};

    fn contains_f64(i: &Interval, v: f64, tol: f64) -> bool {
        let (a, b) = i.to_f64_pair();
        a - tol <= v && v <= b + tol
    }

    #[test]
    fn constants() {
        let p = pi(200);
        assert!(p.width().magnitude() < -190);
        assert!(contains_f64(&p, std::f64::consts::PI, 1e-15));
        // 3.14159265358979323846264338327950288419716939937510
        let r = Rational::new(
            "314159265358979323846264338327950288419716939937510".parse().unwrap(),
            BigInt::from(10).pow(50),
        );
        assert!((p.mid().to_rational() - r).abs() < ratio(1, 1_000_000_000_000) * ratio(1, 1_000_000_000_000));
        assert!(contains_f64(&ln2(100), std::f64::consts::LN_2, 1e-15));
    }

    #[test]
    fn exact_special_values() {
        assert_eq!(log(&Interval::from_i64(1), 64).unwrap(), Interval::zero());
        assert_eq!(exp(&Interval::zero(), 64), Interval::from_i64(1));
        assert_eq!(atan(&Interval::zero(), 64), Interval::zero());
        let (s, c) = sin_cos(&Interval::zero(), 64);
        assert!(s.is_zero() && c == Interval::from_i64(1));
        assert!(log(&Interval::zero(), 64).is_none());
    }

    #[test]
    fn functions_match_f64() {
        for v in [-20.5f64, -3.0, -0.7, 0.001, 0.5, 1.0, 2.75, 40.0] {
            let x = Interval::from_rational(&Rational::from_float(v).unwrap(), 80);
            assert!(contains_f64(&exp(&x, 80), v.exp(), v.exp().abs() * 1e-14));
            assert!(contains_f64(&atan(&x, 80), v.atan(), 1e-15));
            let (s, c) = sin_cos(&x, 80);
            assert!(contains_f64(&s, v.sin(), 1e-14), "sin {v}");
            assert!(contains_f64(&c, v.cos(), 1e-14), "cos {v}");
            if v > 0.0 {
                assert!(contains_f64(&log(&x, 80).unwrap(), v.ln(), 1e-14));
            }
        }
        let e = exp(&Interval::from_i64(1), 128);
        assert!(e.width().magnitude() < -120);
        let l = log(&e, 128).unwrap();
        assert!(l.contains_rational(&rat(1)));
    }
}
