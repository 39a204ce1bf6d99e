//! Bivariate polynomials over the rationals, stored as polynomials in `y`
//! whose coefficients are polynomials in `x` (variable order `y > x`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::upoly::{push_term, rat, Rational, UPoly};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    /// `c[j]` is the coefficient of `y^j`.
    c: Vec<UPoly>,
}

/// Graded lexicographic comparison of `x^i y^j` monomials with `y > x`.
pub fn grlex_cmp(a: (usize, usize), b: (usize, usize)) -> Ordering {
    (a.0 + a.1).cmp(&(b.0 + b.1)).then(a.1.cmp(&b.1))
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { c: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_y_coeffs(vec![UPoly::constant(c)])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_y_coeffs(vec![UPoly::x()])
    }

    pub fn y() -> Self {
        Self::from_y_coeffs(vec![UPoly::zero(), UPoly::one()])
    }

    pub fn from_y_coeffs(mut c: Vec<UPoly>) -> Self {
        while c.last().is_some_and(|p| p.is_zero()) {
            c.pop();
        }
        BivarPoly { c }
    }

    pub fn from_x(u: &UPoly) -> Self {
        Self::from_y_coeffs(vec![u.clone()])
    }

    /// Polynomial in `y` only.
    pub fn from_y(u: &UPoly) -> Self {
        Self::from_y_coeffs(u.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect())
    }

    /// Builds from `(x_degree, y_degree, coefficient)` triples.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let mut p = BivarPoly::zero();
        for &(i, j, c) in terms {
            p = &p + &Self::monomial(rat(c), i, j);
        }
        p
    }

    pub fn monomial(c: Rational, i: usize, j: usize) -> Self {
        let mut v = vec![UPoly::zero(); j + 1];
        v[j] = UPoly::monomial(c, i);
        Self::from_y_coeffs(v)
    }

    pub fn y_coeffs(&self) -> &[UPoly] {
        &self.c
    }

    pub fn coeff_y(&self, j: usize) -> UPoly {
        self.c.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1 && self.c.first().is_none_or(|p| p.is_constant())
    }

    pub fn deg_y(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn deg_x(&self) -> isize {
        self.c.iter().map(|p| p.deg()).max().unwrap_or(-1)
    }

    pub fn total_degree(&self) -> isize {
        self.terms().map(|(i, j, _)| (i + j) as isize).max().unwrap_or(-1)
    }

    /// Leading coefficient in `y` (a polynomial in `x`).
    pub fn lc_y(&self) -> UPoly {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.c.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (i, j, c))
        })
    }

    /// Leading monomial and coefficient under grlex with `y > x`.
    pub fn leading_term(&self) -> Option<((usize, usize), Rational)> {
        self.terms()
            .max_by(|a, b| grlex_cmp((a.0, a.1), (b.0, b.1)))
            .map(|(i, j, c)| ((i, j), c.clone()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::from_y_coeffs(self.c.iter().map(|p| p.scale(s)).collect())
    }

    pub fn mul_x_poly(&self, u: &UPoly) -> Self {
        Self::from_y_coeffs(self.c.iter().map(|p| p * u).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = BivarPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x = a`, leaving a polynomial in `y`.
    pub fn eval_x(&self, a: &Rational) -> UPoly {
        UPoly::from_coeffs(self.c.iter().map(|p| p.eval(a)).collect())
    }

    /// Substitutes `y = b`, leaving a polynomial in `x`.
    pub fn eval_y(&self, b: &Rational) -> UPoly {
        let mut acc = UPoly::zero();
        for p in self.c.iter().rev() {
            acc = &acc.scale(b) + p;
        }
        acc
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        self.eval_x(a).eval(b)
    }

    pub fn sign_at_rational(&self, a: &Rational, b: &Rational) -> i8 {
        super::upoly::rsign(&self.eval(a, b))
    }

    pub fn derivative_y(&self) -> Self {
        Self::from_y_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(&rat(j as i64)))
                .collect(),
        )
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_y_coeffs(self.c.iter().map(|p| p.derivative()).collect())
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap(&self) -> Self {
        let mut out = BivarPoly::zero();
        for (i, j, c) in self.terms() {
            out = &out + &Self::monomial(c.clone(), j, i);
        }
        out
    }

    /// Substitutes `y = s(x)`.
    pub fn substitute_y(&self, s: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for p in self.c.iter().rev() {
            acc = &(&acc * s) + p;
        }
        acc
    }

    /// Gcd of the `y`-coefficients (monic, in `x`).
    pub fn content_x(&self) -> UPoly {
        let mut g = UPoly::zero();
        for p in &self.c {
            g = UPoly::gcd(&g, p);
            if g.is_constant() && !g.is_zero() {
                return UPoly::one();
            }
        }
        g
    }

    pub fn primitive_y(&self) -> Self {
        let g = self.content_x();
        if g.is_zero() || g.is_constant() {
            return self.clone();
        }
        Self::from_y_coeffs(self.c.iter().map(|p| p.exact_div(&g)).collect())
    }

    /// Integer coefficients with unit content and positive grlex-leading
    /// coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut l = BigInt::one();
        for (_, _, c) in self.terms() {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for (_, _, c) in self.terms() {
            g = g.gcd(&(c * Rational::from_integer(l.clone())).to_integer());
        }
        let mut s = Rational::new(l, g);
        if self.leading_term().unwrap().1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Sign of the factor relating `self` to `self.normalized()`.
    pub fn normalization_sign(&self) -> i8 {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }

    /// Pseudo-remainder in `y` over `Q[x]`.
    pub fn prem_y(&self, b: &BivarPoly) -> BivarPoly {
        let db = b.deg_y();
        assert!(db >= 0);
        let lb = b.lc_y();
        let mut r = self.clone();
        while r.deg_y() >= db {
            let lr = r.lc_y();
            let shift = (r.deg_y() - db) as usize;
            let mut t = vec![UPoly::zero(); shift + 1];
            t[shift] = lr;
            let sub = &BivarPoly::from_y_coeffs(t) * b;
            r = &r.mul_x_poly(&lb) - &sub;
        }
        r
    }

    /// Exact quotient if `d` divides `self` over `Q[x][y]`.
    pub fn div_exact(&self, d: &BivarPoly) -> Option<BivarPoly> {
        assert!(!d.is_zero());
        let dd = d.deg_y();
        let ld = d.lc_y();
        let mut r = self.clone();
        let mut q = vec![UPoly::zero(); (self.deg_y() - dd + 1).max(0) as usize];
        while !r.is_zero() {
            if r.deg_y() < dd {
                return None;
            }
            let (t, rem) = r.lc_y().div_rem(&ld);
            if !rem.is_zero() {
                return None;
            }
            let shift = (r.deg_y() - dd) as usize;
            let mut tv = vec![UPoly::zero(); shift + 1];
            tv[shift] = t.clone();
            r = &r - &(&BivarPoly::from_y_coeffs(tv) * d);
            q[shift] = &q[shift] + &t;
        }
        Some(BivarPoly::from_y_coeffs(q))
    }

    /// Normalized gcd over `Q[x, y]`.
    pub fn gcd(a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        if a.is_zero() {
            return b.normalized();
        }
        if b.is_zero() {
            return a.normalized();
        }
        let cont = UPoly::gcd(&a.content_x(), &b.content_x());
        let mut p = a.primitive_y();
        let mut q = b.primitive_y();
        if p.deg_y() < q.deg_y() {
            std::mem::swap(&mut p, &mut q);
        }
        let g = loop {
            if q.is_zero() {
                break p;
            }
            if q.deg_y() == 0 {
                break BivarPoly::one();
            }
            let r = p.prem_y(&q);
            p = q;
            q = if r.is_zero() { r } else { r.primitive_y() };
        };
        g.primitive_y().mul_x_poly(&cont).normalized()
    }

    /// Removes repeated factors that involve `y`; the `x`-content is kept
    /// as is.
    pub fn squarefree_y(&self) -> BivarPoly {
        if self.deg_y() <= 0 {
            return self.clone();
        }
        let cont = self.content_x();
        let p = self.primitive_y();
        let g = BivarPoly::gcd(&p, &p.derivative_y());
        let sf = if g.deg_y() <= 0 { p } else { p.div_exact(&g).expect("gcd divides") };
        sf.mul_x_poly(&cont)
    }

    fn scaled_to_integers(&self) -> (BivarPoly, Rational) {
        let mut l = BigInt::one();
        for (_, _, c) in self.terms() {
            l = l.lcm(c.denom());
        }
        let s = Rational::from_integer(l);
        (self.scale(&s), s)
    }

    pub fn fmt_vars(&self, xv: &str, yv: &str) -> String {
        let mut ts: Vec<(usize, usize, &Rational)> = self.terms().collect();
        if ts.is_empty() {
            return "0".into();
        }
        ts.sort_by(|a, b| grlex_cmp((b.0, b.1), (a.0, a.1)));
        let mut out = String::new();
        for (i, j, c) in ts {
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push(xv.to_string()),
                _ => mono.push(format!("{xv}^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push(yv.to_string()),
                _ => mono.push(format!("{yv}^{j}")),
            }
            push_term(&mut out, c, &mono.join("*"));
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_vars("x", "y"))
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, o: &BivarPoly) -> BivarPoly {
        let n = self.c.len().max(o.c.len());
        BivarPoly::from_y_coeffs(
            (0..n)
                .map(|j| match (self.c.get(j), o.c.get(j)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    _ => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, o: &BivarPoly) -> BivarPoly {
        self + &(-o)
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly { c: self.c.iter().map(|p| -p).collect() }
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, o: &BivarPoly) -> BivarPoly {
        if self.is_zero() || o.is_zero() {
            return BivarPoly::zero();
        }
        let mut v = vec![UPoly::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        BivarPoly::from_y_coeffs(v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BivarPoly {
            type Output = BivarPoly;
            fn $m(self, o: BivarPoly) -> BivarPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

// ---- resultants -------------------------------------------------------------

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn sylvester_det(p: &[BigInt], q: &[BigInt]) -> BigInt {
    // p, q given low-to-high with their formal lengths
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in p.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in q.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Newton interpolation through `(x_k, v_k)`.
fn interpolate(xs: &[Rational], vs: &[Rational]) -> UPoly {
    let n = xs.len();
    let mut dd: Vec<Rational> = vs.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / (&xs[k] - &xs[k - level]);
        }
    }
    let mut acc = UPoly::constant(dd[n - 1].clone());
    for k in (0..n - 1).rev() {
        let lin = UPoly::from_coeffs(vec![-xs[k].clone(), Rational::one()]);
        acc = &(&acc * &lin) + &UPoly::constant(dd[k].clone());
    }
    acc
}

/// `res_y(p, q)` with the Sylvester-determinant sign convention, computed by
/// evaluating the Sylvester matrix at integer abscissae and interpolating.
pub fn resultant_y(p: &BivarPoly, q: &BivarPoly) -> UPoly {
    assert!(!p.is_zero() && !q.is_zero(), "resultant of zero polynomial");
    let m = p.deg_y() as usize;
    let n = q.deg_y() as usize;
    if m == 0 {
        return p.coeff_y(0).pow(n as u32);
    }
    if n == 0 {
        return q.coeff_y(0).pow(m as u32);
    }
    let (pi, sp) = p.scaled_to_integers();
    let (qi, sq) = q.scaled_to_integers();
    let bound = m * q.deg_x().max(0) as usize + n * p.deg_x().max(0) as usize;
    let mut xs = Vec::with_capacity(bound + 1);
    let mut vs = Vec::with_capacity(bound + 1);
    for k in 0..=bound {
        // 0, 1, -1, 2, -2, ...
        let xk = if k % 2 == 1 { k.div_ceil(2) as i64 } else { -((k / 2) as i64) };
        let xr = rat(xk);
        let pv: Vec<BigInt> = (0..=m).map(|j| pi.coeff_y(j).eval(&xr).to_integer()).collect();
        let qv: Vec<BigInt> = (0..=n).map(|j| qi.coeff_y(j).eval(&xr).to_integer()).collect();
        xs.push(xr);
        vs.push(Rational::from_integer(sylvester_det(&pv, &qv)));
    }
    let r = interpolate(&xs, &vs);
    // res(sp*p, sq*q) = sp^n sq^m res(p, q)
    let corr = num_traits::pow(sp, n) * num_traits::pow(sq, m);
    r.scale(&corr.recip())
}

/// `res_x(p, q)` as a polynomial in `y`.
pub fn resultant_x(p: &BivarPoly, q: &BivarPoly) -> UPoly {
    resultant_y(&p.swap(), &q.swap())
}

/// Discriminant in `y`: `(-1)^(n(n-1)/2) res_y(p, p_y) / lc_y(p)`.
pub fn discriminant_y(p: &BivarPoly) -> Result<UPoly, super::AlgError> {
    let n = p.deg_y();
    if n < 1 {
        return Err(super::AlgError::DegreeTooLow);
    }
    let r = resultant_y(p, &p.derivative_y());
    let d = r.exact_div(&p.lc_y());
    let n = n as usize;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}
