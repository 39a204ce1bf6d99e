//! Semi-algebraic subsets of the plane: finite unions of conjunctions of
//! polynomial sign conditions in `(x, y)`.

use std::fmt;

use crate::expr::{self, reim_split, Mode};
use crate::realalg::{sign_at, BivarPoly, RealCoord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Rel {
    pub fn holds(self, sign: i8) -> bool {
        match self {
            Rel::Lt => sign < 0,
            Rel::Le => sign <= 0,
            Rel::Eq => sign == 0,
            Rel::Ne => sign != 0,
            Rel::Ge => sign >= 0,
            Rel::Gt => sign > 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }

    /// The relation satisfied by `-p` exactly when this one holds for `p`.
    pub fn flip(self) -> Rel {
        match self {
            Rel::Lt => Rel::Gt,
            Rel::Le => Rel::Ge,
            Rel::Ge => Rel::Le,
            Rel::Gt => Rel::Lt,
            r => r,
        }
    }
}

/// `poly rel 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub poly: BivarPoly,
    pub rel: Rel,
}

impl Atom {
    /// Normalizes the polynomial, flipping the relation if that changed
    /// its sign.
    pub fn new(poly: &BivarPoly, rel: Rel) -> Atom {
        let rel = if poly.normalization_sign() < 0 { rel.flip() } else { rel };
        Atom { poly: poly.normalized(), rel }
    }

    /// Truth value when the polynomial is constant, `None` otherwise.
    pub fn constant_value(&self) -> Option<bool> {
        if self.poly.is_constant() {
            let s = if self.poly.is_zero() { 0 } else { 1 };
            Some(self.rel.holds(s))
        } else {
            None
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.poly, self.rel.symbol())
    }
}

/// Union of conjunctions. No clauses is the empty set; a single empty
/// clause is the whole plane.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SemiAlgebraicSet {
    pub clauses: Vec<Vec<Atom>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("region condition `{0}`: {1}")]
    Parse(String, String),
    #[error("region condition `{0}` is not polynomial")]
    NotPolynomial(String),
}

impl SemiAlgebraicSet {
    pub fn empty() -> Self {
        SemiAlgebraicSet { clauses: Vec::new() }
    }

    pub fn whole_plane() -> Self {
        SemiAlgebraicSet { clauses: vec![Vec::new()] }
    }

    pub fn conjunction(atoms: Vec<Atom>) -> Self {
        SemiAlgebraicSet { clauses: vec![atoms] }.simplified()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn is_whole_plane(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    pub fn union(&self, o: &SemiAlgebraicSet) -> Self {
        let mut clauses = self.clauses.clone();
        for c in &o.clauses {
            if !clauses.contains(c) {
                clauses.push(c.clone());
            }
        }
        SemiAlgebraicSet { clauses }.simplified()
    }

    pub fn intersect(&self, o: &SemiAlgebraicSet) -> Self {
        let mut clauses = Vec::new();
        for a in &self.clauses {
            for b in &o.clauses {
                let mut c = a.clone();
                for t in b {
                    if !c.contains(t) {
                        c.push(t.clone());
                    }
                }
                if !clauses.contains(&c) {
                    clauses.push(c);
                }
            }
        }
        SemiAlgebraicSet { clauses }.simplified()
    }

    /// Drops constant atoms, and clauses with a false constant atom.
    fn simplified(self) -> Self {
        let mut out = Vec::new();
        'clause: for c in self.clauses {
            let mut kept = Vec::new();
            for a in c {
                match a.constant_value() {
                    Some(true) => {}
                    Some(false) => continue 'clause,
                    None => kept.push(a),
                }
            }
            if !out.contains(&kept) {
                out.push(kept);
            }
        }
        SemiAlgebraicSet { clauses: out }
    }

    /// Distinct polynomials in order of first appearance.
    pub fn polys(&self) -> Vec<BivarPoly> {
        let mut out: Vec<BivarPoly> = Vec::new();
        for a in self.clauses.iter().flatten() {
            if !out.contains(&a.poly) {
                out.push(a.poly.clone());
            }
        }
        out
    }

    /// Truth value given the sign of each polynomial.
    pub fn holds_with(&self, mut sign: impl FnMut(&BivarPoly) -> i8) -> bool {
        self.clauses.iter().any(|c| c.iter().all(|a| a.rel.holds(sign(&a.poly))))
    }

    pub fn contains(&self, x: &RealCoord, y: &RealCoord) -> bool {
        self.holds_with(|p| sign_at(p, x, y))
    }

    /// Parses conditions such as `y > 0`, `x^2 + y^2 > 1 && y >= 0`, with
    /// `||` (or `or`) separating alternatives and `&&`, `and` or `,`
    /// joining conditions. `all` or an empty string is the whole plane.
    pub fn parse(text: &str) -> Result<Self, RegionError> {
        let t = text.trim();
        if t.is_empty() || t.eq_ignore_ascii_case("all") {
            return Ok(Self::whole_plane());
        }
        let mut set = Self::empty();
        for alt in split_words(t, &["||", " or "]) {
            let mut conj = Self::whole_plane();
            for cond in split_words(&alt, &["&&", " and ", ","]) {
                conj = conj.intersect(&parse_condition(cond.trim())?);
            }
            set = set.union(&conj);
        }
        Ok(set)
    }
}

fn split_words(s: &str, seps: &[&str]) -> Vec<String> {
    let mut parts = vec![s.to_string()];
    for sep in seps {
        parts = parts.iter().flat_map(|p| p.split(sep).map(str::to_string).collect::<Vec<_>>()).collect();
    }
    parts
}

/// A polynomial in `x` and `y` written as an expression.
pub fn parse_polynomial(text: &str) -> Result<BivarPoly, RegionError> {
    let e = expr::parse(text, Mode::Real).map_err(|e| RegionError::Parse(text.to_string(), e.to_string()))?;
    let rf = reim_split(&e).map_err(|_| RegionError::NotPolynomial(text.to_string()))?.re;
    if !rf.den.is_constant() {
        return Err(RegionError::NotPolynomial(text.to_string()));
    }
    let c = rf.den.terms().next().map(|(_, _, c)| c.clone()).ok_or_else(|| RegionError::NotPolynomial(text.to_string()))?;
    Ok(rf.num.scale(&c.recip()))
}

fn parse_condition(c: &str) -> Result<SemiAlgebraicSet, RegionError> {
    const RELS: [(&str, Rel); 7] = [
        ("<=", Rel::Le),
        (">=", Rel::Ge),
        ("!=", Rel::Ne),
        ("==", Rel::Eq),
        ("<", Rel::Lt),
        (">", Rel::Gt),
        ("=", Rel::Eq),
    ];
    let (pos, sym, rel) = RELS
        .iter()
        .filter_map(|(s, r)| c.find(s).map(|p| (p, *s, *r)))
        .min_by_key(|(p, s, _)| (*p, usize::MAX - s.len()))
        .ok_or_else(|| RegionError::Parse(c.to_string(), "missing relation".into()))?;
    let (l, r) = (&c[..pos], &c[pos + sym.len()..]);
    // errors point into the whole condition, not the side that failed
    let parse = |s: &str, at: usize| {
        expr::parse(s, Mode::Real).map_err(|mut e| {
            e.pos += at;
            e.input = c.to_string();
            RegionError::Parse(c.to_string(), e.to_string())
        })
    };
    let diff = crate::expr::Expr::sub(parse(l, 0)?, parse(r, pos + sym.len())?);
    let rf = reim_split(&diff).map_err(|_| RegionError::NotPolynomial(c.to_string()))?.re;
    // num/den rel 0  <=>  num*den rel 0 with den != 0
    if rf.den.is_constant() {
        return Ok(SemiAlgebraicSet::conjunction(vec![Atom::new(&rf.num, rel)]));
    }
    let prod = &rf.num * &rf.den;
    Ok(SemiAlgebraicSet::conjunction(vec![Atom::new(&prod, rel), Atom::new(&rf.den, Rel::Ne)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::rat;

    fn pt(x: i64, y: i64) -> (RealCoord, RealCoord) {
        (RealCoord::Rational(rat(x)), RealCoord::Rational(rat(y)))
    }

    #[test]
    fn parse_and_membership() {
        let s = SemiAlgebraicSet::parse("x^2 + y^2 > 1").unwrap();
        assert_eq!(s.clauses.len(), 1);
        let (a, b) = pt(0, 0);
        assert!(!s.contains(&a, &b));
        let (a, b) = pt(2, 0);
        assert!(s.contains(&a, &b));
        let u = SemiAlgebraicSet::parse("y > 0 || x < -1").unwrap();
        assert_eq!(u.clauses.len(), 2);
        let (a, b) = pt(-2, -5);
        assert!(u.contains(&a, &b));
        let (a, b) = pt(0, -5);
        assert!(!u.contains(&a, &b));
        assert!(SemiAlgebraicSet::parse("").unwrap().is_whole_plane());
        assert!(SemiAlgebraicSet::parse("y >").is_err());
    }

    #[test]
    fn normalization_flips_relation() {
        // 1 - y > 0 is y - 1 < 0
        let s = SemiAlgebraicSet::parse("1 > y").unwrap();
        let a = &s.clauses[0][0];
        assert_eq!(a.rel, Rel::Lt);
        assert_eq!(a.poly, BivarPoly::from_terms(&[(0, 1, 1), (0, 0, -1)]));
    }

    #[test]
    fn polynomial_text() {
        let p = parse_polynomial("(x^2 + y^2 - 1)/2").unwrap();
        assert_eq!(p, BivarPoly::from_terms(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]).scale(&crate::realalg::ratio(1, 2)));
        assert!(matches!(parse_polynomial("1/x"), Err(RegionError::NotPolynomial(_))));
        assert!(matches!(parse_polynomial("x +"), Err(RegionError::Parse(..))));
    }

    #[test]
    fn constants_simplify() {
        let s = SemiAlgebraicSet::parse("1 > 0").unwrap();
        assert!(s.is_whole_plane());
        let e = SemiAlgebraicSet::parse("1 < 0").unwrap();
        assert!(e.is_empty());
    }

    #[test]
    fn rational_condition_keeps_pole_out() {
        let s = SemiAlgebraicSet::parse("1/x > 0").unwrap();
        let (a, b) = pt(0, 1);
        assert!(!s.contains(&a, &b));
        let (a, b) = pt(3, 1);
        assert!(s.contains(&a, &b));
    }
}
