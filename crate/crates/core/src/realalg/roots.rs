//! Real root isolation by Descartes' rule of signs with bisection
//! (Vincent–Collins–Akritas), plus a Sturm-sequence root counter that serves
//! as an independent check.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::upoly::{rat, zsign_at, Rational, UPoly};
use super::AlgError;

/// An isolating interval. `lo == hi` marks an exact rational root; otherwise
/// the open interval `(lo, hi)` holds exactly one root and neither endpoint is
/// a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn exact(r: Rational) -> Self {
        RootInterval { lo: r.clone(), hi: r }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

fn sign_variations(c: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for v in c {
        let s = if v.is_zero() {
            continue;
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn taylor_shift_one(c: &mut [BigInt]) {
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = c[j + 1].clone();
            c[j] += t;
        }
    }
}

/// Upper bound on the number of roots in (0, 1).
fn descartes_unit(q: &[BigInt]) -> usize {
    let mut r: Vec<BigInt> = q.iter().rev().cloned().collect();
    taylor_shift_one(&mut r);
    sign_variations(&r)
}

fn cauchy_bound_pow2(c: &[BigInt]) -> u64 {
    let lc = c.last().unwrap().abs();
    let mut m = BigInt::zero();
    for v in &c[..c.len() - 1] {
        let a = v.abs();
        if a > m {
            m = a;
        }
    }
    // 1 + max|a_i| / |a_n| <= 2^k
    let b = Rational::new(m, lc) + Rational::one();
    let mut k = 0u64;
    let mut p = Rational::one();
    while p <= b {
        p *= rat(2);
        k += 1;
    }
    k
}

/// Isolates the roots in `(0, inf)` of a squarefree integer polynomial with
/// nonzero constant term.
fn positive_roots(c: &[BigInt]) -> Vec<RootInterval> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let k = cauchy_bound_pow2(c);
    // q(t) = p(2^k t), roots of p in (0, 2^k) <-> roots of q in (0, 1)
    let q: Vec<BigInt> = c
        .iter()
        .enumerate()
        .map(|(i, v)| v << (k as usize * i))
        .collect();
    let width = Rational::from_integer(BigInt::one() << k as usize);
    let mut out = Vec::new();
    let mut stack = vec![(q, Rational::zero(), width)];
    while let Some((q, a, w)) = stack.pop() {
        let v = descartes_unit(&q);
        if v == 0 {
            continue;
        }
        if v == 1 {
            out.push(RootInterval { lo: a.clone(), hi: &a + &w });
            continue;
        }
        let d = q.len() - 1;
        let ql: Vec<BigInt> = q
            .iter()
            .enumerate()
            .map(|(i, v)| v << (d - i))
            .collect();
        let mut qr = ql.clone();
        taylor_shift_one(&mut qr);
        let half = &w / rat(2);
        let mid = &a + &half;
        if qr[0].is_zero() {
            out.push(RootInterval::exact(mid.clone()));
            qr.remove(0);
        }
        stack.push((ql, a, half.clone()));
        stack.push((qr, mid, half));
    }
    out
}

/// Exact sign just to the right of `x` (or at `x` when nonzero).
fn sign_right(p: &[BigInt], dp: &[BigInt], x: &Rational) -> i8 {
    match zsign_at(p, x) {
        0 => zsign_at(dp, x),
        s => s,
    }
}

fn sign_left(p: &[BigInt], dp: &[BigInt], x: &Rational) -> i8 {
    match zsign_at(p, x) {
        0 => -zsign_at(dp, x),
        s => s,
    }
}

fn zderiv(c: &[BigInt]) -> Vec<BigInt> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, v)| v * BigInt::from(i))
        .collect()
}

/// One bisection step on an open isolating interval of a squarefree
/// polynomial. Returns an exact interval when the midpoint is the root.
pub(crate) fn bisect(p: &[BigInt], iv: &RootInterval) -> RootInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let mid = (&iv.lo + &iv.hi) / rat(2);
    let sm = zsign_at(p, &mid);
    if sm == 0 {
        return RootInterval::exact(mid);
    }
    let dp = zderiv(p);
    let sl = sign_right(p, &dp, &iv.lo);
    if sl != sm {
        RootInterval { lo: iv.lo.clone(), hi: mid }
    } else {
        RootInterval { lo: mid, hi: iv.hi.clone() }
    }
}

/// Shrinks an open interval until neither endpoint is a root.
fn tighten(p: &[BigInt], mut iv: RootInterval) -> RootInterval {
    let dp = zderiv(p);
    while !iv.is_exact() && (zsign_at(p, &iv.lo) == 0 || zsign_at(p, &iv.hi) == 0) {
        let mid = (&iv.lo + &iv.hi) / rat(2);
        let sm = zsign_at(p, &mid);
        if sm == 0 {
            return RootInterval::exact(mid);
        }
        if sign_right(p, &dp, &iv.lo) != sm {
            iv.hi = mid;
        } else {
            debug_assert!(sign_left(p, &dp, &iv.hi) != sm);
            iv.lo = mid;
        }
    }
    iv
}

/// Isolates all distinct real roots of `p`, sorted increasingly.
pub fn isolate_real_roots(p: &UPoly) -> Result<Vec<RootInterval>, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroPolynomial);
    }
    let sf = p.squarefree_part();
    let mut c = sf.int_coeffs();
    let mut out = Vec::new();
    if c.len() <= 1 {
        return Ok(out);
    }
    if c[0].is_zero() {
        out.push(RootInterval::exact(Rational::zero()));
        c.remove(0);
    }
    let neg: Vec<BigInt> = c
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 1 { -v } else { v.clone() })
        .collect();
    for iv in positive_roots(&neg) {
        out.push(RootInterval { lo: -iv.hi, hi: -iv.lo });
    }
    out.extend(positive_roots(&c));
    let full = sf.int_coeffs();
    let mut out: Vec<RootInterval> = out
        .into_iter()
        .map(|iv| if iv.is_exact() { iv } else { tighten(&full, iv) })
        .collect();
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Sturm sequence of `p` and `p'`.
pub fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sturm_variations(seq: &[UPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in seq {
        let v = s.sign_at(x);
        if v == 0 {
            continue;
        }
        if last != 0 && v != last {
            n += 1;
        }
        last = v;
    }
    n
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn sturm_count(p: &UPoly, a: &Rational, b: &Rational) -> usize {
    let seq = sturm_sequence(p);
    sturm_variations(&seq, a).saturating_sub(sturm_variations(&seq, b))
}

/// A bound `B` with every real root in `(-B, B)`.
pub fn root_bound(p: &UPoly) -> Rational {
    let c = p.int_coeffs();
    if c.len() <= 1 {
        return Rational::one();
    }
    Rational::from_integer(BigInt::one() << cauchy_bound_pow2(&c) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::upoly::ratio;

    #[test]
    fn sqrt_two() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].lo < ratio(-141, 100) && r[0].hi > ratio(-142, 100));
        assert!(r[1].lo < ratio(141, 100) && r[1].hi > ratio(142, 100));
        assert!(r[0].hi <= r[1].lo);
        for iv in &r {
            assert!(p.sign_at(&iv.lo) * p.sign_at(&iv.hi) < 0);
        }
    }

    #[test]
    fn no_real_roots_and_triple_zero() {
        assert!(isolate_real_roots(&UPoly::from_ints(&[1, 0, 1])).unwrap().is_empty());
        let r = isolate_real_roots(&UPoly::from_ints(&[0, 0, 0, 1])).unwrap();
        assert_eq!(r, vec![RootInterval::exact(rat(0))]);
        assert!(isolate_real_roots(&UPoly::zero()).is_err());
    }

    #[test]
    fn adjacent_rational_roots() {
        // (x)(x-1)(x-1/2)(2x+3)
        let p = &(&(&UPoly::from_ints(&[0, 1]) * &UPoly::from_ints(&[-1, 1]))
            * &UPoly::from_ints(&[-1, 2]))
            * &UPoly::from_ints(&[3, 2]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r.len(), 4);
        for w in r.windows(2) {
            assert!(w[0].hi <= w[1].lo);
        }
        for iv in &r {
            if !iv.is_exact() {
                assert!(p.sign_at(&iv.lo) != 0 && p.sign_at(&iv.hi) != 0);
            } else {
                assert_eq!(p.sign_at(&iv.lo), 0);
            }
        }
        assert_eq!(sturm_count(&p, &rat(-2), &ratio(1, 2)), 3);
    }
}
