//! Real algebraic numbers represented by a squarefree defining polynomial and
//! an isolating interval, and the `RealCoord` type used for sample points.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::roots::{bisect, RootInterval};
use super::upoly::{fmt_rational, rat, zsign_at, Rational, UPoly};

/// A real root of a squarefree integer polynomial, pinned by an isolating
/// interval. Refinements are cached behind a shared lock so clones observe
/// each other's progress.
#[derive(Clone)]
pub struct AlgebraicNumber {
    poly: Arc<UPoly>,
    ints: Arc<Vec<BigInt>>,
    iv: Arc<Mutex<RootInterval>>,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.interval();
        write!(
            f,
            "Alg({}, [{}, {}])",
            self.poly.fmt_var("x"),
            fmt_rational(&lo),
            fmt_rational(&hi)
        )
    }
}

impl AlgebraicNumber {
    /// `poly` must be squarefree and `iv` an open isolating interval for it.
    pub fn new(poly: &UPoly, iv: RootInterval) -> Self {
        let p = poly.primitive();
        let ints = p.int_coeffs();
        AlgebraicNumber {
            poly: Arc::new(p),
            ints: Arc::new(ints),
            iv: Arc::new(Mutex::new(iv)),
        }
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn interval(&self) -> (Rational, Rational) {
        let iv = self.iv.lock().unwrap();
        (iv.lo.clone(), iv.hi.clone())
    }

    fn bisect_once(&self) -> RootInterval {
        let mut iv = self.iv.lock().unwrap();
        let next = bisect(&self.ints, &iv);
        *iv = next.clone();
        next
    }

    /// Refines until the interval is narrower than `w`.
    pub fn refine_to_width(&self, w: &Rational) {
        loop {
            let (lo, hi) = self.interval();
            if &(&hi - &lo) < w {
                return;
            }
            if self.bisect_once().is_exact() {
                return;
            }
        }
    }

    pub fn refine_bits(&self, bits: u32) {
        let w = Rational::new(BigInt::one(), BigInt::one() << bits as usize);
        self.refine_to_width(&w);
    }

    /// Exact value when refinement happened to land on the root.
    pub fn exact_value(&self) -> Option<Rational> {
        let iv = self.iv.lock().unwrap();
        iv.is_exact().then(|| iv.lo.clone())
    }

    /// Exact sign of `u` at this number.
    pub fn sign_of(&self, u: &UPoly) -> i8 {
        if u.is_zero() {
            return 0;
        }
        if let Some(r) = self.exact_value() {
            return u.sign_at(&r);
        }
        let g = UPoly::gcd(u, &self.poly);
        if g.deg() >= 1 && self.has_root_of(&g) {
            return 0;
        }
        loop {
            let (lo, hi) = self.interval();
            if lo == hi {
                return u.sign_at(&lo);
            }
            let (a, b) = eval_range(u, &lo, &hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            self.bisect_once();
        }
    }

    /// Whether a divisor `g` of the defining polynomial vanishes here.
    fn has_root_of(&self, g: &UPoly) -> bool {
        let (lo, hi) = self.interval();
        if lo == hi {
            return g.sign_at(&lo) == 0;
        }
        let gi = g.int_coeffs();
        zsign_at(&gi, &lo) * zsign_at(&gi, &hi) < 0
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        loop {
            let (lo, hi) = self.interval();
            if lo == hi {
                return lo.cmp(r);
            }
            if &hi <= r {
                return Ordering::Less;
            }
            if &lo >= r {
                return Ordering::Greater;
            }
            if self.poly.sign_at(r) == 0 {
                return Ordering::Equal;
            }
            self.bisect_once();
        }
    }

    pub fn cmp_alg(&self, o: &AlgebraicNumber) -> Ordering {
        if Arc::ptr_eq(&self.iv, &o.iv) {
            return Ordering::Equal;
        }
        let mut checked_gcd = false;
        loop {
            let (a0, a1) = self.interval();
            let (b0, b1) = o.interval();
            if a0 == a1 {
                return o.cmp_rational(&a0).reverse();
            }
            if b0 == b1 {
                return self.cmp_rational(&b0);
            }
            if a1 <= b0 {
                return Ordering::Less;
            }
            if b1 <= a0 {
                return Ordering::Greater;
            }
            if !checked_gcd {
                checked_gcd = true;
                let g = UPoly::gcd(&self.poly, &o.poly);
                if g.deg() >= 1 {
                    // Both intervals contain at most one root of g, and the
                    // intersection endpoints are not roots of g.
                    let lo = a0.clone().max(b0.clone());
                    let hi = a1.clone().min(b1.clone());
                    let gi = g.int_coeffs();
                    if zsign_at(&gi, &lo) * zsign_at(&gi, &hi) < 0 {
                        return Ordering::Equal;
                    }
                }
            }
            if &a1 - &a0 > &b1 - &b0 {
                self.bisect_once();
            } else {
                o.bisect_once();
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.refine_bits(60);
        let (lo, hi) = self.interval();
        rational_to_f64(&((lo + hi) / rat(2)))
    }
}

/// Range of a polynomial over `[lo, hi]` by interval Horner evaluation.
pub fn eval_range(u: &UPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for c in u.coeffs().iter().rev() {
        let cands = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = cands.iter().min().unwrap().clone();
        let mx = cands.iter().max().unwrap().clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = n - d - 60;
        let scaled = if shift > 0 {
            Rational::new(r.numer().clone(), r.denom() << shift as usize)
        } else {
            Rational::new(r.numer() << (-shift) as usize, r.denom().clone())
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

/// The rational with smallest denominator in the open interval `(a, b)`,
/// found by walking the Stern–Brocot tree via continued fractions.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    assert!(a < b);
    if a.is_negative() && b.is_positive() {
        return Rational::zero();
    }
    if !a.is_negative() {
        simplest_positive(a, b)
    } else {
        -simplest_positive(&-b, &-a)
    }
}

fn simplest_positive(a: &Rational, b: &Rational) -> Rational {
    // smallest-denominator rational strictly inside (a, b), 0 <= a < b
    let fl = a.floor();
    if &(&fl + Rational::one()) < b {
        return fl + Rational::one();
    }
    // a and b share the integer part (or b is exactly fl + 1)
    let fa = a - &fl;
    let fb = b - &fl;
    if fa.is_zero() {
        // (0, fb): take 1/n with n the least integer with 1/n < fb
        let n = (fb.recip()).floor() + Rational::one();
        return fl + n.recip();
    }
    // x in (fa, fb) inside (0, 1]: x = 1/y with y in (1/fb, 1/fa)
    let y = simplest_positive(&fb.recip(), &fa.recip());
    fl + y.recip()
}

/// A real coordinate of a sample point.
#[derive(Clone, Debug)]
pub enum RealCoord {
    Rational(Rational),
    Algebraic(AlgebraicNumber),
}

impl RealCoord {
    pub fn from_root(poly: &UPoly, iv: RootInterval) -> RealCoord {
        if iv.is_exact() {
            return RealCoord::Rational(iv.lo);
        }
        let p = poly.primitive();
        if p.deg() == 1 {
            return RealCoord::Rational(-p.coeff(0) / p.coeff(1));
        }
        let a = AlgebraicNumber::new(&p, iv);
        match detect_rational(&a) {
            Some(r) => RealCoord::Rational(r),
            None => RealCoord::Algebraic(a),
        }
    }

    pub fn rational(&self) -> Option<&Rational> {
        match self {
            RealCoord::Rational(r) => Some(r),
            RealCoord::Algebraic(_) => None,
        }
    }

    /// Rational bounds of width at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        match self {
            RealCoord::Rational(r) => (r.clone(), r.clone()),
            RealCoord::Algebraic(a) => {
                a.refine_bits(bits);
                a.interval()
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealCoord::Rational(r) => rational_to_f64(r),
            RealCoord::Algebraic(a) => a.to_f64(),
        }
    }

    pub fn sign_of(&self, u: &UPoly) -> i8 {
        match self {
            RealCoord::Rational(r) => u.sign_at(r),
            RealCoord::Algebraic(a) => a.sign_of(u),
        }
    }

    pub fn cmp_coord(&self, o: &RealCoord) -> Ordering {
        match (self, o) {
            (RealCoord::Rational(a), RealCoord::Rational(b)) => a.cmp(b),
            (RealCoord::Algebraic(a), RealCoord::Rational(b)) => a.cmp_rational(b),
            (RealCoord::Rational(a), RealCoord::Algebraic(b)) => b.cmp_rational(a).reverse(),
            (RealCoord::Algebraic(a), RealCoord::Algebraic(b)) => a.cmp_alg(b),
        }
    }

    /// Rational strictly below / above the coordinate.
    pub fn rational_below(&self) -> Rational {
        match self {
            RealCoord::Rational(r) => r - Rational::one(),
            RealCoord::Algebraic(a) => a.interval().0,
        }
    }

    pub fn rational_above(&self) -> Rational {
        match self {
            RealCoord::Rational(r) => r + Rational::one(),
            RealCoord::Algebraic(a) => a.interval().1,
        }
    }

    pub fn display(&self) -> String {
        match self {
            RealCoord::Rational(r) => fmt_rational(r),
            RealCoord::Algebraic(a) => format!("{:.12}", a.to_f64()),
        }
    }
}

/// Decides whether an algebraic number is rational. A rational root `p/q`
/// of a primitive integer polynomial has `q | lc`, so it is a multiple of
/// `1/lc`; an interval narrower than `1/lc` holds at most one candidate.
fn detect_rational(a: &AlgebraicNumber) -> Option<Rational> {
    let c = a.poly().int_coeffs();
    if c.len() == 3 {
        // roots (-b +- sqrt(d)) / 2a are rational iff d is a square
        let d = &c[1] * &c[1] - BigInt::from(4) * &c[2] * &c[0];
        let s = d.sqrt();
        if &s * &s != d {
            return None;
        }
    }
    let lc = c.last().unwrap().abs();
    a.refine_to_width(&Rational::new(BigInt::one(), &lc * BigInt::from(2)));
    if let Some(r) = a.exact_value() {
        return Some(r);
    }
    let (lo, hi) = a.interval();
    let scale = Rational::from_integer(lc.clone());
    let (k0, k1) = ((&lo * &scale).ceil().to_integer(), (&hi * &scale).floor().to_integer());
    let mut k = k0;
    while k <= k1 {
        let cand = Rational::new(k.clone(), lc.clone());
        if a.poly().sign_at(&cand) == 0 {
            return Some(cand);
        }
        k += 1;
    }
    None
}
