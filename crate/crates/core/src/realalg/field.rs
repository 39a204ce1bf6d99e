//! Arithmetic in `Q(alpha)` for a real algebraic `alpha`, with lazy
//! splitting of a reducible defining polynomial whenever a zero divisor
//! shows up. This is what lets the lifting phase work over algebraic
//! abscissae exactly.

use num_traits::{Signed, Zero};

use super::algebraic::{eval_range, AlgebraicNumber, RealCoord};
use super::bivar::{resultant_x, BivarPoly};
use super::roots::{bisect, isolate_real_roots, RootInterval};
use super::upoly::{rsign, zsign_at, Rational, UPoly};

/// `Q[x] / (m)` where `m` is squarefree and `alpha` is the unique root of
/// `m` in `iv`. `m` only ever shrinks to a factor that still vanishes at
/// `alpha`.
pub struct AlgebraicField {
    modulus: UPoly,
    ints: Vec<num_bigint::BigInt>,
    iv: RootInterval,
}

/// Polynomial in `y` with coefficients in the field, low degree first.
pub type FieldPoly = Vec<UPoly>;

impl AlgebraicField {
    pub fn new(a: &AlgebraicNumber) -> Self {
        let (lo, hi) = a.interval();
        let m = a.poly().primitive();
        AlgebraicField { ints: m.int_coeffs(), modulus: m, iv: RootInterval { lo, hi } }
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    fn set_modulus(&mut self, m: UPoly) {
        self.modulus = m.primitive();
        self.ints = self.modulus.int_coeffs();
    }

    pub fn reduce(&self, p: &UPoly) -> UPoly {
        if p.deg() < self.modulus.deg() {
            p.clone()
        } else {
            p.rem(&self.modulus)
        }
    }

    fn alpha_is_root_of(&self, g: &UPoly) -> bool {
        if self.iv.is_exact() {
            return g.sign_at(&self.iv.lo) == 0;
        }
        let gi = g.int_coeffs();
        zsign_at(&gi, &self.iv.lo) * zsign_at(&gi, &self.iv.hi) < 0
    }

    /// Exact test `p(alpha) == 0`.
    pub fn is_zero(&mut self, p: &UPoly) -> bool {
        let r = self.reduce(p);
        if r.is_zero() {
            return true;
        }
        if self.iv.is_exact() {
            return r.sign_at(&self.iv.lo) == 0;
        }
        let g = UPoly::gcd(&r, &self.modulus);
        if g.deg() < 1 {
            return false;
        }
        if g.deg() == self.modulus.deg() {
            return true;
        }
        if self.alpha_is_root_of(&g) {
            self.set_modulus(g);
            true
        } else {
            let rest = self.modulus.exact_div(&g);
            self.set_modulus(rest);
            false
        }
    }

    pub fn sign(&mut self, p: &UPoly) -> i8 {
        if self.is_zero(p) {
            return 0;
        }
        loop {
            if self.iv.is_exact() {
                return p.sign_at(&self.iv.lo);
            }
            let (a, b) = eval_range(p, &self.iv.lo, &self.iv.hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            self.iv = bisect(&self.ints, &self.iv);
        }
    }

    /// Inverse of a nonzero element.
    pub fn inverse(&mut self, p: &UPoly) -> UPoly {
        debug_assert!(!self.is_zero(p));
        // extended Euclid on (p, m)
        let (mut r0, mut r1) = (self.modulus.clone(), self.reduce(p));
        let (mut s0, mut s1) = (UPoly::zero(), UPoly::one());
        while r1.deg() > 0 {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r1 is a nonzero constant once the modulus is split correctly
        debug_assert!(!r1.is_zero());
        let inv = r1.lc().recip();
        self.reduce(&s1.scale(&inv))
    }

    pub fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        self.reduce(&(a * b))
    }

    pub fn lift(&self, p: &BivarPoly) -> FieldPoly {
        p.y_coeffs().iter().map(|c| self.reduce(c)).collect()
    }

    fn trim(&mut self, f: &mut FieldPoly) {
        while let Some(last) = f.last() {
            let last = last.clone();
            if self.is_zero(&last) {
                f.pop();
            } else {
                break;
            }
        }
    }

    /// Gcd in `Q(alpha)[y]`, up to a nonzero factor from the field.
    /// Pseudo-remainders avoid field inverses, whose heights explode.
    pub fn gcd(&mut self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        self.trim(&mut a);
        self.trim(&mut b);
        while !b.is_empty() {
            let lb = b.last().unwrap().clone();
            let db = b.len() - 1;
            while a.len() > db {
                let shift = a.len() - 1 - db;
                let la = a.pop().unwrap();
                for (i, c) in a.iter_mut().enumerate() {
                    let mut v = self.mul(c, &lb);
                    if i >= shift {
                        v = &v - &self.mul(&la, &b[i - shift]);
                    }
                    *c = self.reduce(&v);
                }
                self.trim(&mut a);
            }
            clear_content(&mut a);
            std::mem::swap(&mut a, &mut b);
        }
        a
    }

    pub fn eval_at(&self, f: &FieldPoly, y: &Rational) -> UPoly {
        let mut acc = UPoly::zero();
        for c in f.iter().rev() {
            acc = &acc.scale(y) + c;
        }
        self.reduce(&acc)
    }

    /// Whether the squarefree field polynomial `h`, which divides a
    /// polynomial isolated by `iv`, has its root in `iv`.
    fn has_root_in(&mut self, h: &FieldPoly, iv: &RootInterval) -> bool {
        if h.len() <= 1 {
            return false;
        }
        if iv.is_exact() {
            let v = self.eval_at(h, &iv.lo);
            return self.is_zero(&v);
        }
        let a = self.eval_at(h, &iv.lo);
        let b = self.eval_at(h, &iv.hi);
        self.sign(&a) * self.sign(&b) < 0
    }

    /// Distinct real roots in `y` of `p(alpha, y)`, sorted.
    pub fn roots_in_y(&mut self, p: &BivarPoly) -> Vec<RealCoord> {
        let mut g = self.lift(p);
        self.trim(&mut g);
        if g.len() <= 1 {
            return Vec::new();
        }
        let r = resultant_x(&BivarPoly::from_x(&self.modulus), p);
        debug_assert!(!r.is_zero(), "resultant vanished: non-primitive input");
        if r.is_zero() {
            return Vec::new();
        }
        let rs = r.squarefree_part();
        let cands = isolate_real_roots(&rs).unwrap_or_default();
        let rs_lift: FieldPoly = rs.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect();
        let h = self.gcd(&g, &rs_lift);
        let want = h.len().saturating_sub(1);
        let mut out = Vec::new();
        for iv in cands {
            if out.len() == want {
                break;
            }
            if self.has_root_in(&h, &iv) {
                out.push(RealCoord::from_root(&rs, iv));
            }
        }
        out
    }

    /// Exact sign of `p(alpha, beta)`. A few rounds of box refinement
    /// come first since most queries are nonzero; the exact zero test
    /// runs only when those fail to separate.
    pub fn sign_at_alg(&mut self, p: &BivarPoly, alpha: &AlgebraicNumber, beta: &AlgebraicNumber) -> i8 {
        if p.is_zero() {
            return 0;
        }
        if let Some(s) = refine_sign(p, alpha, beta, 6) {
            return s;
        }
        let (lo, hi) = beta.interval();
        // p(alpha, beta) = 0 forces beta to be a root of res_x(m, p); the
        // common factor with beta's polynomial is usually far smaller
        let r = resultant_x(&BivarPoly::from_x(&self.modulus), p);
        let mut bp = beta.poly().clone();
        if !r.is_zero() {
            bp = UPoly::gcd(&r, &bp);
            if bp.deg() < 1 || (lo != hi && bp.sign_at(&lo) * bp.sign_at(&hi) > 0) {
                bp = UPoly::one();
            }
        }
        if bp.deg() >= 1 {
            let g = self.lift(p);
            let b_lift: FieldPoly = bp.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect();
            let h = self.gcd(&g, &b_lift);
            if self.has_root_in(&h, &RootInterval { lo, hi }) {
                return 0;
            }
        }
        loop {
            if let Some(s) = refine_sign(p, alpha, beta, 16) {
                return s;
            }
        }
    }
}

/// Divides by the positive rational content of all coefficients.
fn clear_content(f: &mut FieldPoly) {
    use num_integer::Integer;
    let mut den = num_bigint::BigInt::from(1);
    let mut num = num_bigint::BigInt::from(0);
    for c in f.iter().flat_map(|p| p.coeffs()) {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return;
    }
    let s = Rational::new(den, num);
    for p in f.iter_mut() {
        *p = p.scale(&s);
    }
}

fn refine_sign(p: &BivarPoly, alpha: &AlgebraicNumber, beta: &AlgebraicNumber, rounds: usize) -> Option<i8> {
    let two = Rational::from_integer(2.into());
    for _ in 0..rounds {
        let (x0, x1) = alpha.interval();
        let (y0, y1) = beta.interval();
        let (a, b) = box_range(p, (&x0, &x1), (&y0, &y1));
        if a.is_positive() {
            return Some(1);
        }
        if b.is_negative() {
            return Some(-1);
        }
        alpha.refine_to_width(&((&x1 - &x0) / &two));
        beta.refine_to_width(&((&y1 - &y0) / &two));
    }
    None
}

/// Range enclosure of `p` over a rational box.
pub fn box_range(p: &BivarPoly, x: (&Rational, &Rational), y: (&Rational, &Rational)) -> (Rational, Rational) {
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for c in p.y_coeffs().iter().rev() {
        let (c0, c1) = eval_range(c, x.0, x.1);
        let cands = [&a * y.0, &a * y.1, &b * y.0, &b * y.1];
        a = cands.iter().min().unwrap().clone() + c0;
        b = cands.iter().max().unwrap().clone() + c1;
    }
    (a, b)
}

/// Exact sign of a bivariate polynomial at a point with rational or
/// algebraic coordinates.
pub fn sign_at(p: &BivarPoly, x: &RealCoord, y: &RealCoord) -> i8 {
    match (x, y) {
        (RealCoord::Rational(a), RealCoord::Rational(b)) => rsign(&p.eval(a, b)),
        (RealCoord::Rational(a), RealCoord::Algebraic(beta)) => beta.sign_of(&p.eval_x(a)),
        (RealCoord::Algebraic(alpha), RealCoord::Rational(b)) => alpha.sign_of(&p.eval_y(b)),
        (RealCoord::Algebraic(alpha), RealCoord::Algebraic(beta)) => {
            let mut f = AlgebraicField::new(alpha);
            f.sign_at_alg(p, alpha, beta)
        }
    }
}

/// Distinct real roots of `p(x0, y)` for an exact abscissa.
pub fn roots_over(p: &BivarPoly, x0: &RealCoord) -> Vec<RealCoord> {
    match x0 {
        RealCoord::Rational(a) => {
            let u = p.eval_x(a);
            if u.is_constant() {
                return Vec::new();
            }
            let sf = u.squarefree_part();
            isolate_real_roots(&sf)
                .unwrap_or_default()
                .into_iter()
                .map(|iv| RealCoord::from_root(&sf, iv))
                .collect()
        }
        RealCoord::Algebraic(alpha) => AlgebraicField::new(alpha).roots_in_y(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::upoly::{rat, ratio};

    fn sqrt2() -> AlgebraicNumber {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let iv = isolate_real_roots(&p).unwrap()[1].clone();
        AlgebraicNumber::new(&p, iv)
    }

    #[test]
    fn field_zero_test_splits_modulus() {
        // alpha = sqrt 2 presented through the reducible (x^2 - 2)(x - 5)
        let m = &UPoly::from_ints(&[-2, 0, 1]) * &UPoly::from_ints(&[-5, 1]);
        let iv = isolate_real_roots(&m).unwrap()[1].clone();
        let a = AlgebraicNumber::new(&m, iv);
        let mut f = AlgebraicField::new(&a);
        assert!(!f.is_zero(&UPoly::from_ints(&[-5, 1])));
        assert_eq!(f.modulus().deg(), 2);
        assert!(f.is_zero(&UPoly::from_ints(&[-2, 0, 1])));
        assert_eq!(f.sign(&UPoly::from_ints(&[-3, 2])), -1);
    }

    #[test]
    fn roots_over_algebraic_abscissa() {
        // y^2 - x at x = sqrt 2 has roots ±2^(1/4)
        let p = BivarPoly::from_terms(&[(0, 2, 1), (1, 0, -1)]);
        let rs = roots_over(&p, &RealCoord::Algebraic(sqrt2()));
        assert_eq!(rs.len(), 2);
        let v: Vec<f64> = rs.iter().map(|r| r.to_f64()).collect();
        assert!((v[1] - 2f64.powf(0.25)).abs() < 1e-12);
        // y - x at sqrt 2: a single root equal to sqrt 2
        let l = BivarPoly::from_terms(&[(0, 1, 1), (1, 0, -1)]);
        let rl = roots_over(&l, &RealCoord::Algebraic(sqrt2()));
        assert_eq!(rl.len(), 1);
        assert_eq!(sign_at(&l, &RealCoord::Algebraic(sqrt2()), &rl[0]), 0);
    }

    #[test]
    fn sign_at_examples() {
        let circle = BivarPoly::from_terms(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
        assert_eq!(sign_at(&circle, &RealCoord::Rational(rat(0)), &RealCoord::Rational(rat(0))), -1);
        let p = BivarPoly::from_terms(&[(2, 0, 1), (0, 0, -2)]);
        assert_eq!(sign_at(&p, &RealCoord::Algebraic(sqrt2()), &RealCoord::Rational(rat(0))), 0);
        // x^2 + y^2 - 4 at (sqrt2, sqrt2) is zero, and x*y - 2 as well
        let c4 = BivarPoly::from_terms(&[(2, 0, 1), (0, 2, 1), (0, 0, -4)]);
        let s = RealCoord::Algebraic(sqrt2());
        assert_eq!(sign_at(&c4, &s, &s.clone()), 0);
        assert_eq!(sign_at(&BivarPoly::zero(), &s, &s.clone()), 0);
        let other = RealCoord::Algebraic(sqrt2());
        assert_eq!(sign_at(&c4, &s, &other), 0);
        let xy = BivarPoly::from_terms(&[(1, 1, 1), (0, 0, -3)]);
        assert_eq!(sign_at(&xy, &s, &other), -1);
        let _ = ratio(1, 2);
    }
}
