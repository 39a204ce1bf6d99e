//! Evidence on a rectangular grid of sample nodes.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{CellStatus, IdentityQuery, VerifyError};
use crate::numeval::{decide_sign, ComplexBox, Decision, Point};
use crate::realalg::{Rational, RealCoord};

/// `W x H` nodes spanning `[x0, x1] x [y0, y1]`, written `WxH@[x0,x1]x[y0,y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub x: (Rational, Rational),
    pub y: (Rational, Rational),
}

fn parse_number(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: Rational = parse_number(n)?;
        let d: Rational = parse_number(d)?;
        if d == Rational::default() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(n / d);
    }
    if let Ok(i) = s.parse::<num_bigint::BigInt>() {
        return Ok(Rational::from_integer(i));
    }
    // decimals are read exactly
    let (neg, body) = s.strip_prefix('-').map_or((false, s), |b| (true, b));
    let (int, frac) = body.split_once('.').ok_or_else(|| format!("bad number `{s}`"))?;
    let digits: num_bigint::BigInt = format!("{int}{frac}").parse().map_err(|_| format!("bad number `{s}`"))?;
    let den = num_bigint::BigInt::from(10).pow(frac.len() as u32);
    let r = Rational::new(digits, den);
    Ok(if neg { -r } else { r })
}

fn parse_range(s: &str) -> Result<(Rational, Rational), String> {
    let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(|| format!("bad range `{s}`"))?;
    let (a, b) = inner.split_once(',').ok_or_else(|| format!("bad range `{s}`"))?;
    let (a, b) = (parse_number(a)?, parse_number(b)?);
    if a >= b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (size, rect) = s.split_once('@').ok_or("expected WxH@[a,b]x[c,d]")?;
        let (w, h) = size.split_once('x').ok_or("expected WxH before `@`")?;
        let nx: usize = w.trim().parse().map_err(|_| format!("bad width `{w}`"))?;
        let ny: usize = h.trim().parse().map_err(|_| format!("bad height `{h}`"))?;
        if nx < 2 || ny < 2 {
            return Err("a grid needs at least 2 nodes per side".into());
        }
        let (xr, yr) = rect.split_once("]x[").ok_or("expected [a,b]x[c,d] after `@`")?;
        Ok(GridSpec { nx, ny, x: parse_range(&format!("{xr}]"))?, y: parse_range(&format!("[{yr}"))? })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}@[{},{}]x[{},{}]", self.nx, self.ny, self.x.0, self.x.1, self.y.0, self.y.1)
    }
}

impl GridSpec {
    /// Node `(i, j)`, row-major from the lower left corner.
    pub fn node(&self, i: usize, j: usize) -> (Rational, Rational) {
        let step = |(a, b): &(Rational, Rational), k: usize, n: usize| {
            a + (b - a) * Rational::new(k.into(), (n - 1).into())
        };
        (step(&self.x, i, self.nx), step(&self.y, j, self.ny))
    }
}

#[derive(Clone, Debug)]
pub struct GridNode {
    pub index: (usize, usize),
    pub point: Point,
    pub status: CellStatus,
    pub enclosure: Option<ComplexBox>,
}

/// Counts per status. Nodes on an exact cut locus or outside the region
/// are skipped.
#[derive(Clone, Debug)]
pub struct GridReport {
    pub spec: GridSpec,
    pub nodes: Vec<GridNode>,
    pub equal: usize,
    pub nonzero: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

/// Decides the difference at every grid node off the cut locus. This is
/// evidence only and never certifies equality.
pub fn verify_on_grid(query: &IdentityQuery, spec: &GridSpec) -> Result<GridReport, VerifyError> {
    query.check()?;
    let cuts = query.cuts()?;
    let diff = query.difference();
    let opts = query.decide_options();
    let idx: Vec<(usize, usize)> = (0..spec.ny).flat_map(|j| (0..spec.nx).map(move |i| (i, j))).collect();
    let results: Vec<Option<GridNode>> = idx
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = spec.node(i, j);
            if let Some(r) = &query.region {
                if !r.contains(&RealCoord::Rational(x.clone()), &RealCoord::Rational(y.clone())) {
                    return None;
                }
            }
            let (xr, yr) = (RealCoord::Rational(x.clone()), RealCoord::Rational(y.clone()));
            if cuts.iter().any(|c| c.set.contains(&xr, &yr)) {
                return None;
            }
            let point = Point::rational(x, y);
            let (status, enclosure) = match decide_sign(&diff, &point, &opts) {
                Ok(Decision::ZeroEvidence { enclosure }) => (CellStatus::Equal, Some(enclosure)),
                Ok(Decision::Nonzero { enclosure }) => (CellStatus::Nonzero, Some(enclosure)),
                Ok(Decision::Inconclusive { reason, enclosure }) => (CellStatus::Inconclusive(reason), enclosure),
                Err(e) => (CellStatus::Inconclusive(e.to_string()), None),
            };
            Some(GridNode { index: (i, j), point, status, enclosure })
        })
        .collect();
    let skipped = results.iter().filter(|r| r.is_none()).count();
    let nodes: Vec<GridNode> = results.into_iter().flatten().collect();
    let count = |s: &str| nodes.iter().filter(|n| n.status.name() == s).count();
    Ok(GridReport {
        spec: spec.clone(),
        equal: count("equal"),
        nonzero: count("nonzero"),
        inconclusive: count("inconclusive"),
        skipped,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Mode;
    use crate::realalg::ratio;

    #[test]
    fn grid_spec_round_trip() {
        let g: GridSpec = "61x61@[-6,2]x[-3,3]".parse().unwrap();
        assert_eq!((g.nx, g.ny), (61, 61));
        assert_eq!(g.node(0, 0), (ratio(-6, 1), ratio(-3, 1)));
        assert_eq!(g.node(60, 30), (ratio(2, 1), ratio(0, 1)));
        assert_eq!(g.to_string(), "61x61@[-6,2]x[-3,3]");
        let h: GridSpec = "3x2@[-1/2, 0.25]x[0,1]".parse().unwrap();
        assert_eq!(h.x, (ratio(-1, 2), ratio(1, 4)));
        assert!("3x1@[0,1]x[0,1]".parse::<GridSpec>().is_err());
        assert!("3x3@[1,0]x[0,1]".parse::<GridSpec>().is_err());
    }

    #[test]
    fn grid_counts() {
        let q = IdentityQuery::parse("z", "z", Mode::Complex, None).unwrap();
        let r = verify_on_grid(&q, &"5x5@[-1,1]x[-1,1]".parse().unwrap()).unwrap();
        assert_eq!((r.equal, r.nonzero, r.inconclusive, r.skipped), (25, 0, 0, 0));
        let q = IdentityQuery::parse("sqrt(z^2)", "z", Mode::Complex, None).unwrap();
        let r = verify_on_grid(&q, &"5x5@[-1,1]x[-1,1]".parse().unwrap()).unwrap();
        // the cut x = 0, y != 0 is skipped; left half differs, right half
        // and the origin agree
        assert_eq!((r.equal, r.nonzero, r.skipped), (11, 10, 4));
    }
}
