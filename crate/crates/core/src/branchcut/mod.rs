//! Potential branch cuts of an expression as semi-algebraic sets in
//! `(x, y)`: each non-analytic function's own cut is pulled back through
//! its argument after splitting into real and imaginary parts.

mod radical;

use std::fmt;

pub use radical::{radicands, RadicalError, RadicalForm};

use crate::cad::{Atom, Rel, SemiAlgebraicSet};
use crate::expr::{complex_split, reim_split, ComplexRatFun, Expr, Func, SplitError};
use crate::numeval::{eval, Dyadic, Interval, Point};
use crate::realalg::{rat, roots_over, BivarPoly, Rational, RealCoord};

/// Radicals beyond this count are not eliminated.
pub const MAX_RADICALS: usize = 2;
/// Total degree cap on eliminated polynomials.
pub const MAX_ELIMINATION_DEGREE: isize = 40;
/// Samples per curve component when checking attached inequalities.
pub const SAMPLES_PER_COMPONENT: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exactness {
    Exact,
    NumericEvidence,
}

impl Exactness {
    pub fn name(self) -> &'static str {
        match self {
            Exactness::Exact => "exact",
            Exactness::NumericEvidence => "numeric-evidence",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutSource {
    /// The cut of a function occurrence.
    Function(Func),
    /// Zeros of a divisor.
    Pole,
    /// Points where a logarithm's argument vanishes.
    BranchPoint,
    /// Boundary of the real domain of a function (real mode).
    Domain(Func),
}

/// The occurrence a cut set came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub source: CutSource,
    pub arg: Expr,
    /// Position among the distinct occurrences of this kind.
    pub occurrence: usize,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.source {
            CutSource::Function(g) => write!(f, "{}({})", g.name(), self.arg),
            CutSource::Pole => write!(f, "pole of 1/({})", self.arg),
            CutSource::BranchPoint => write!(f, "branch point of log({})", self.arg),
            CutSource::Domain(g) => write!(f, "domain of {}({})", g.name(), self.arg),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSet {
    pub set: SemiAlgebraicSet,
    pub provenance: Provenance,
    pub exactness: Exactness,
    pub note: Option<String>,
}

impl CutSet {
    pub fn polys(&self) -> Vec<BivarPoly> {
        self.set.polys()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CutError {
    #[error("argument is not rational: {0}")]
    Split(#[from] SplitError),
    #[error("{0} is not supported in real mode")]
    UnsupportedReal(&'static str),
}

fn atom(p: &BivarPoly, rel: Rel) -> Atom {
    Atom::new(p, rel)
}

fn nonzero(den: &BivarPoly) -> Vec<Atom> {
    if den.is_constant() {
        Vec::new()
    } else {
        vec![atom(den, Rel::Ne)]
    }
}

fn clause(mut atoms: Vec<Atom>, den: &BivarPoly) -> Vec<Atom> {
    for a in nonzero(den) {
        if !atoms.contains(&a) {
            atoms.push(a);
        }
    }
    atoms
}

fn from_clauses(clauses: Vec<Vec<Atom>>) -> SemiAlgebraicSet {
    clauses.into_iter().fold(SemiAlgebraicSet::empty(), |s, c| s.union(&SemiAlgebraicSet::conjunction(c)))
}

/// Threshold `c` with the cut on the real axis left of `c`.
fn threshold(f: Func) -> Option<i64> {
    match f {
        Func::Sqrt | Func::Log => Some(0),
        Func::Arccosh => Some(1),
        _ => None,
    }
}

/// The function's own cut in the `w = u + iv` plane, written with `x`
/// for `u` and `y` for `v`.
pub fn defining_cut(f: Func) -> SemiAlgebraicSet {
    let w = ComplexRatFun { re_num: BivarPoly::x(), im_num: BivarPoly::y(), den: BivarPoly::one() };
    split_cut(f, &w)
}

fn split_cut(f: Func, w: &ComplexRatFun) -> SemiAlgebraicSet {
    let (p, q, d) = (&w.re_num, &w.im_num, &w.den);
    match f {
        Func::Arctan => from_clauses(vec![
            clause(vec![atom(p, Rel::Eq), atom(&(q - d), Rel::Ge)], d),
            clause(vec![atom(p, Rel::Eq), atom(&(q + d), Rel::Le)], d),
        ]),
        Func::Exp => SemiAlgebraicSet::empty(),
        _ => {
            let c = threshold(f).unwrap();
            let shifted = p - &d.scale(&rat(c));
            from_clauses(vec![clause(vec![atom(q, Rel::Eq), atom(&shifted, Rel::Lt)], d)])
        }
    }
}

/// Cut of `f(arg)` for a rational argument. Denominators are cleared
/// using `den >= 0`, so strict inequalities survive, and the pole set of
/// the argument is excluded.
pub fn cuts_rational_arg(f: Func, arg: &Expr) -> Result<SemiAlgebraicSet, CutError> {
    let w = complex_split(arg)?;
    Ok(split_cut(f, &w))
}

/// Cut of `f(arg)` where `arg` carries square roots of rational
/// radicands.
///
/// For `arg = B sqrt(R)`, `w^2 = M = B^2 R` is rational, and `w` is real
/// exactly when `M` is real and nonnegative. Whether such a `w` lies left
/// of the threshold `c` then depends on `|w| < c`, or for `|w| >= c` on
/// the sign of `w`, which is the sign of `Re B` under the principal
/// square root. Each piece is a polynomial sign condition. For
/// `arg = A + B sqrt(R)` with `A != 0` the curve `Im w = 0` is replaced by
/// the zero set of a resultant, a superset. More radicals are not
/// eliminated.
pub fn cuts_radical_arg(f: Func, arg: &Expr) -> Result<(SemiAlgebraicSet, Exactness, Option<String>), CutError> {
    let form = match RadicalForm::of(arg) {
        Ok(form) => form,
        Err(RadicalError::TooMany(n)) => {
            let why = if n > MAX_RADICALS {
                format!("{n} radicals, over the elimination cap of {MAX_RADICALS}")
            } else {
                format!("{n} radicals; only a single radical is eliminated exactly")
            };
            return Ok((SemiAlgebraicSet::empty(), Exactness::NumericEvidence, Some(why)));
        }
        Err(RadicalError::Nested(g)) => {
            return Ok((
                SemiAlgebraicSet::empty(),
                Exactness::NumericEvidence,
                Some(format!("argument nests {} beyond a rational square root", g.name())),
            ))
        }
        Err(RadicalError::Split(e)) => return Err(e.into()),
    };
    let Some(m) = form.radical_square() else {
        return Ok((split_cut(f, &form.a), Exactness::Exact, None));
    };
    if form.b.is_zero() {
        return Ok((split_cut(f, &form.a), Exactness::Exact, None));
    }
    if !form.a.is_zero() {
        return Ok(shifted_radical_cut(&form));
    }
    let set = radical_cut(f, &m, &form.b);
    if set.polys().iter().any(|p| p.total_degree() > MAX_ELIMINATION_DEGREE) {
        return Ok((
            SemiAlgebraicSet::empty(),
            Exactness::NumericEvidence,
            Some(format!("eliminated degree over {MAX_ELIMINATION_DEGREE}")),
        ));
    }
    let bad = sample_disagreements(f, arg, &m.im_num, &set);
    if bad > 0 {
        let note = format!("{bad} sampled points on Im w = 0 disagree with the attached inequalities");
        return Ok((set, Exactness::NumericEvidence, Some(note)));
    }
    Ok((set, Exactness::Exact, None))
}

fn radical_cut(f: Func, m: &ComplexRatFun, b: &ComplexRatFun) -> SemiAlgebraicSet {
    let (pm, qm, dm) = (&m.re_num, &m.im_num, &m.den);
    let pb = &b.re_num;
    let qb = &b.im_num;
    if f == Func::Arctan {
        // w = i t with t real and |t| >= 1: M real and M <= -1
        return from_clauses(vec![clause(vec![atom(qm, Rel::Eq), atom(&(pm + dm), Rel::Le)], dm)]);
    }
    let Some(c) = threshold(f) else {
        return SemiAlgebraicSet::empty();
    };
    let eq = atom(qm, Rel::Eq);
    let mut clauses = Vec::new();
    // |w| >= c with w < 0
    let big = if c == 0 { atom(pm, Rel::Gt) } else { atom(&(pm - &dm.scale(&rat(c * c))), Rel::Ge) };
    clauses.push(clause(vec![eq.clone(), big.clone(), atom(pb, Rel::Lt)], dm));
    if !pb.is_zero() {
        // Re B = 0: w < 0 needs Im B > 0
        clauses.push(clause(vec![eq.clone(), big, atom(pb, Rel::Eq), atom(qb, Rel::Gt)], dm));
    }
    if c > 0 {
        // 0 < w^2 < c^2, either sign
        let below = atom(&(pm - &dm.scale(&rat(c * c))), Rel::Lt);
        clauses.push(clause(vec![eq.clone(), atom(pm, Rel::Gt), below], dm));
        // w = 0
        clauses.push(clause(vec![eq, atom(pm, Rel::Eq)], dm));
    }
    from_clauses(clauses)
}

/// `w = A + B s` real means `(t - A)^2 = B^2 R` for real `t`: a quadratic
/// and a linear equation in `t` whose resultant must vanish.
fn shifted_radical_cut(form: &RadicalForm) -> (SemiAlgebraicSet, Exactness, Option<String>) {
    let a = &form.a;
    let n = form.norm();
    // (i) Da Dn t^2 - 2 Pa Dn t + Pn Da = 0, (ii) 2 Qa Dn t - Qn Da = 0
    let qa2 = &a.im_num.scale(&rat(2)) * &n.den;
    let k = &n.im_num * &a.den;
    let quad_a = &a.den * &n.den;
    let quad_b = -(&a.re_num.scale(&rat(2)) * &n.den);
    let quad_c = &n.re_num * &a.den;
    // res_t(a t^2 + b t + c, L t - K) = a K^2 + b K L + c L^2
    let e = &(&(&quad_a * &(&k * &k)) + &(&quad_b * &(&k * &qa2))) + &(&quad_c * &(&qa2 * &qa2));
    if e.is_zero() || e.total_degree() > MAX_ELIMINATION_DEGREE {
        return (
            SemiAlgebraicSet::empty(),
            Exactness::NumericEvidence,
            Some("radical with rational offset: elimination degenerate or over budget".into()),
        );
    }
    let set = SemiAlgebraicSet::conjunction(clause(vec![atom(&e, Rel::Eq)], &(&a.den * &n.den)));
    (set, Exactness::Exact, Some("equalities only (superset of the cut)".into()))
}

/// Compares the clauses with the true cut condition, evaluated in interval
/// arithmetic, at points of the curve `eq = 0` over a spread of rational
/// abscissae. Points where the evaluation cannot decide are skipped.
fn sample_disagreements(f: Func, arg: &Expr, eq: &BivarPoly, set: &SemiAlgebraicSet) -> usize {
    if eq.is_zero() || eq.deg_y() < 1 {
        return 0;
    }
    let c = threshold(f).unwrap_or(0);
    let mut bad = 0;
    for k in 0..SAMPLES_PER_COMPONENT {
        let x = Rational::new((-320 + 20 * k as i64 + 10).into(), 32.into());
        let xr = RealCoord::Rational(x);
        for y in roots_over(eq, &xr) {
            let pt = Point::new(xr.clone(), y);
            let Ok(w) = eval(arg, &pt, 96) else { continue };
            let truth = if f == Func::Arctan {
                if !w.re.contains_zero() {
                    Some(false)
                } else {
                    let one = Dyadic::from_i64(1);
                    let (lo, hi) = (&w.im.lo, &w.im.hi);
                    if *lo >= one || *hi <= one.neg() {
                        Some(true)
                    } else if *lo > one.neg() && *hi < one {
                        Some(false)
                    } else {
                        None
                    }
                }
            } else if !w.im.contains_zero() {
                Some(false)
            } else {
                let d = w.re.sub(&Interval::from_i64(c), 96);
                if d.is_neg() {
                    Some(true)
                } else if d.is_pos() || d.is_zero() {
                    Some(false)
                } else {
                    None
                }
            };
            if let Some(t) = truth {
                if t != set.contains(&pt.x, &pt.y) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

fn distinct<T: PartialEq + Clone>(items: Vec<T>) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for i in items {
        if !out.contains(&i) {
            out.push(i);
        }
    }
    out
}

fn pole_cut(d: &Expr, occurrence: usize) -> Option<CutSet> {
    let provenance = Provenance { source: CutSource::Pole, arg: d.clone(), occurrence };
    let (set, exactness, note) = match RadicalForm::of(d) {
        Ok(form) => {
            let n = if form.b.is_zero() { form.a.clone() } else { form.norm() };
            let set = SemiAlgebraicSet::conjunction(vec![atom(&n.re_num, Rel::Eq), atom(&n.im_num, Rel::Eq)]);
            let note = (!form.b.is_zero()).then(|| "zeros of the norm (superset)".to_string());
            (set, Exactness::Exact, note)
        }
        Err(RadicalError::Split(SplitError::ZeroDivisor)) => (SemiAlgebraicSet::whole_plane(), Exactness::Exact, None),
        Err(_) => (
            SemiAlgebraicSet::empty(),
            Exactness::NumericEvidence,
            Some("zeros of a non-algebraic divisor are not computed".into()),
        ),
    };
    if set.is_empty() && exactness == Exactness::Exact {
        return None;
    }
    Some(CutSet { set, provenance, exactness, note })
}

/// All potential cuts of a complex-mode expression: one set per distinct
/// non-analytic occurrence, the branch points of logarithms, and the
/// zeros of every divisor.
pub fn expression_cuts(e: &Expr) -> Result<Vec<CutSet>, CutError> {
    let mut out = Vec::new();
    let nodes = distinct(e.non_analytic_nodes());
    for (i, (f, arg)) in nodes.iter().enumerate() {
        let provenance = Provenance { source: CutSource::Function(*f), arg: arg.clone(), occurrence: i };
        let (set, exactness, note) = if arg.is_rational() {
            (cuts_rational_arg(*f, arg)?, Exactness::Exact, None)
        } else {
            cuts_radical_arg(*f, arg)?
        };
        if !set.is_empty() || exactness == Exactness::NumericEvidence {
            out.push(CutSet { set, provenance, exactness, note });
        }
        if *f == Func::Log {
            if let Ok(form) = RadicalForm::of(arg) {
                let n = if form.b.is_zero() { form.a.clone() } else { form.norm() };
                let set = SemiAlgebraicSet::conjunction(vec![atom(&n.re_num, Rel::Eq), atom(&n.im_num, Rel::Eq)]);
                if !set.is_empty() {
                    let provenance = Provenance { source: CutSource::BranchPoint, arg: arg.clone(), occurrence: i };
                    out.push(CutSet { set, provenance, exactness: Exactness::Exact, note: None });
                }
            }
        }
    }
    for (i, d) in distinct(e.divisors()).iter().enumerate() {
        if let Some(c) = pole_cut(d, i) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Discontinuity sources of a real-mode expression in `(x, y)`: poles of
/// arctangent arguments, boundaries of the real domains of square roots,
/// logarithms and arccosh, and zeros of divisors.
pub fn real_discontinuity_locus(e: &Expr) -> Result<Vec<CutSet>, CutError> {
    let mut out = Vec::new();
    for (i, (f, arg)) in distinct(e.non_analytic_nodes()).into_iter().enumerate() {
        if !arg.is_rational() {
            return Err(CutError::UnsupportedReal("a non-rational function argument"));
        }
        let r = reim_split(&arg)?.re;
        let set = match f {
            Func::Arctan => {
                if r.den.is_constant() {
                    continue;
                }
                SemiAlgebraicSet::conjunction(vec![atom(&r.den, Rel::Eq)])
            }
            Func::Sqrt | Func::Log | Func::Arccosh => {
                let c = threshold(f).unwrap();
                let shifted = &r.num - &r.den.scale(&rat(c));
                // boundary, and the excluded side (num - c den) den < 0
                let mut s = SemiAlgebraicSet::conjunction(vec![atom(&shifted, Rel::Eq)]);
                s = s.union(&SemiAlgebraicSet::conjunction(vec![atom(&(&shifted * &r.den), Rel::Lt)]));
                if !r.den.is_constant() {
                    s = s.union(&SemiAlgebraicSet::conjunction(vec![atom(&r.den, Rel::Eq)]));
                }
                s
            }
            Func::Exp => continue,
        };
        if set.is_empty() {
            continue;
        }
        let source = if f == Func::Arctan { CutSource::Function(f) } else { CutSource::Domain(f) };
        out.push(CutSet {
            set,
            provenance: Provenance { source, arg, occurrence: i },
            exactness: Exactness::Exact,
            note: None,
        });
    }
    for (i, d) in distinct(e.divisors()).into_iter().enumerate() {
        if !d.is_rational() {
            return Err(CutError::UnsupportedReal("a non-rational divisor"));
        }
        let r = reim_split(&d)?.re;
        let set = SemiAlgebraicSet::conjunction(vec![atom(&r.num, Rel::Eq)]);
        if set.is_empty() {
            continue;
        }
        out.push(CutSet {
            set,
            provenance: Provenance { source: CutSource::Pole, arg: d, occurrence: i },
            exactness: Exactness::Exact,
            note: None,
        });
    }
    Ok(out)
}

/// Every polynomial appearing in a list of cut sets, without repeats.
pub fn cut_polys(cuts: &[CutSet]) -> Vec<BivarPoly> {
    let mut out: Vec<BivarPoly> = Vec::new();
    for c in cuts {
        for p in c.polys() {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// `a1 ∧ a2 ∧ ...`, or `true` for the empty conjunction.
pub fn format_clause(c: &[Atom]) -> String {
    if c.is_empty() {
        return "true".into();
    }
    c.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ∧ ")
}
