//! Identity verification: cut loci, a cell decomposition adapted to them,
//! and a verified decision at the sample point of every cell.

mod grid;

use std::time::{Duration, Instant};

use rayon::prelude::*;

pub use grid::{verify_on_grid, GridNode, GridReport, GridSpec};

use crate::branchcut::{cut_polys, expression_cuts, real_discontinuity_locus, CutError, CutSet, Exactness};
use crate::cad::{decompose, CadError, CadOptions, CadStats, Membership, RegionError, SemiAlgebraicSet};
use crate::expr::{parse, Expr, Mode, ParseError};
use crate::numeval::{decide_sign, eval, ComplexBox, DecideOptions, Decision, EvalError, Point};
use crate::realalg::BivarPoly;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Working precision in bits; the per-cell budget is sixteen times this.
    pub precision: u32,
    /// Assumed separation of the values a difference can take on a cell.
    pub delta: f64,
    pub cad: CadOptions,
    /// Extra polynomials for the decomposition, refining it without
    /// changing the question.
    pub extra_polys: Vec<BivarPoly>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            precision: 128,
            delta: std::f64::consts::PI,
            cad: CadOptions::default(),
            extra_polys: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityQuery {
    pub lhs: Expr,
    pub rhs: Expr,
    pub mode: Mode,
    pub region: Option<SemiAlgebraicSet>,
    pub options: VerifyOptions,
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error("variable `{0}` does not belong to {1} mode")]
    Variable(String, &'static str),
}

impl IdentityQuery {
    pub fn new(lhs: Expr, rhs: Expr, mode: Mode) -> Self {
        IdentityQuery { lhs, rhs, mode, region: None, options: VerifyOptions::default() }
    }

    /// Parses both sides and an optional region; an empty region text
    /// means the whole plane.
    pub fn parse(lhs: &str, rhs: &str, mode: Mode, region: Option<&str>) -> Result<Self, VerifyError> {
        let mut q = IdentityQuery::new(parse(lhs, mode)?, parse(rhs, mode)?, mode);
        if let Some(r) = region {
            q.region = Some(SemiAlgebraicSet::parse(r)?);
        }
        q.check()?;
        Ok(q)
    }

    pub fn with_region(mut self, region: SemiAlgebraicSet) -> Self {
        self.region = Some(region);
        self
    }

    pub fn with_options(mut self, options: VerifyOptions) -> Self {
        self.options = options;
        self
    }

    pub fn difference(&self) -> Expr {
        Expr::sub(self.lhs.clone(), self.rhs.clone())
    }

    fn check(&self) -> Result<(), VerifyError> {
        let (allowed, name): (&[&str], _) = match self.mode {
            Mode::Complex => (&["z"], "complex"),
            Mode::Real => (&["x", "y"], "real"),
        };
        for v in self.difference().variables() {
            if !allowed.contains(&v.as_str()) {
                return Err(VerifyError::Variable(v, name));
            }
        }
        Ok(())
    }

    /// Cut sets of the difference: branch cuts and poles in complex mode,
    /// discontinuity loci in real mode.
    pub fn cuts(&self) -> Result<Vec<CutSet>, VerifyError> {
        let d = self.difference();
        Ok(match self.mode {
            Mode::Complex => expression_cuts(&d)?,
            Mode::Real => real_discontinuity_locus(&d)?,
        })
    }

    fn decide_options(&self) -> DecideOptions {
        DecideOptions { delta: self.options.delta, ..DecideOptions::with_precision(self.options.precision) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CellStatus {
    Equal,
    Nonzero,
    Inconclusive(String),
}

impl CellStatus {
    pub fn name(&self) -> &'static str {
        match self {
            CellStatus::Equal => "equal",
            CellStatus::Nonzero => "nonzero",
            CellStatus::Inconclusive(_) => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CellRecord {
    pub index: (usize, usize),
    pub dim: u8,
    pub sample: Point,
    pub status: CellStatus,
    pub enclosure: Option<ComplexBox>,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub cell: (usize, usize),
    pub point: Point,
    /// Difference at the working precision.
    pub enclosure: ComplexBox,
    /// Independent re-evaluation at four times the working precision.
    pub recheck: ComplexBox,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overall {
    EqualOnRegion,
    NotEqual,
    Inconclusive,
}

impl Overall {
    pub fn name(self) -> &'static str {
        match self {
            Overall::EqualOnRegion => "equal-on-region",
            Overall::NotEqual => "not-equal",
            Overall::Inconclusive => "inconclusive",
        }
    }
}

/// What a verdict rests on.
#[derive(Clone, Debug)]
pub struct Assumptions {
    pub delta: f64,
    pub all_cuts_exact: bool,
    /// Every tested cell showed equality, but some cut set is only
    /// numeric evidence.
    pub equal_evidence: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Timings {
    pub cuts: Duration,
    pub decomposition: Duration,
    pub decisions: Duration,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub overall: Overall,
    pub witnesses: Vec<Witness>,
    pub cells: Vec<CellRecord>,
    pub cuts: Vec<CutSet>,
    pub stats: Option<CadStats>,
    pub assumptions: Assumptions,
    /// Why the run stopped short, when it did.
    pub bottleneck: Option<String>,
    pub timings: Timings,
}

impl Verdict {
    pub fn inconclusive_cells(&self) -> Vec<&CellRecord> {
        self.cells.iter().filter(|c| matches!(c.status, CellStatus::Inconclusive(_))).collect()
    }
}

fn delta_note(delta: f64) -> String {
    format!("differences on a cell are assumed to be 0 or at least {delta:.6} away from 0")
}

fn decide_cell(query: &IdentityQuery, diff: &Expr, index: (usize, usize), dim: u8, sample: Point) -> (CellRecord, Option<Witness>) {
    let (status, enclosure, witness) = match decide_sign(diff, &sample, &query.decide_options()) {
        Ok(Decision::ZeroEvidence { enclosure }) => (CellStatus::Equal, Some(enclosure), None),
        Ok(Decision::Nonzero { enclosure }) => match confirm(diff, &sample, query.options.precision, &enclosure) {
            Ok((enclosure, recheck)) => {
                let w = Witness { cell: index, point: sample.clone(), enclosure: enclosure.clone(), recheck };
                (CellStatus::Nonzero, Some(enclosure), Some(w))
            }
            Err(m) => (CellStatus::Inconclusive(m), Some(enclosure), None),
        },
        Ok(Decision::Inconclusive { reason, enclosure }) => (CellStatus::Inconclusive(reason), enclosure, None),
        Err(e) => (CellStatus::Inconclusive(format!("{e} at {sample}")), None, None),
    };
    (CellRecord { index, dim, sample, status, enclosure }, witness)
}

/// Re-derives a nonzero decision: the enclosure reported is the one at the
/// working precision when that already excludes zero, and a fresh
/// evaluation at four times the precision must exclude zero as well.
fn confirm(diff: &Expr, at: &Point, prec: u32, found: &ComplexBox) -> Result<(ComplexBox, ComplexBox), String> {
    let main = match eval(diff, at, prec) {
        Ok(b) if !b.contains_zero() => b,
        _ => found.clone(),
    };
    let recheck = eval(diff, at, 4 * prec.max(found.prec)).map_err(|e: EvalError| e.to_string())?;
    if recheck.contains_zero() {
        return Err("nonzero enclosure not confirmed at 4x precision".into());
    }
    Ok((main, recheck))
}

/// Decides `lhs = rhs` on the query region by testing one sample point in
/// every cell of a decomposition adapted to the cuts, sections included.
pub fn verify(query: &IdentityQuery) -> Result<Verdict, VerifyError> {
    query.check()?;
    let mut timings = Timings::default();
    let t = Instant::now();
    let cuts = query.cuts()?;
    timings.cuts = t.elapsed();

    let all_cuts_exact = cuts.iter().all(|c| c.exactness == Exactness::Exact);
    let mut notes = vec![delta_note(query.options.delta)];
    for c in cuts.iter().filter(|c| c.exactness != Exactness::Exact) {
        notes.push(format!("cut of {} is {}", c.provenance, c.exactness.name()));
    }
    let mut assumptions = Assumptions { delta: query.options.delta, all_cuts_exact, equal_evidence: false, notes };

    let mut polys = cut_polys(&cuts);
    for p in &query.options.extra_polys {
        if !polys.contains(p) {
            polys.push(p.clone());
        }
    }
    let t = Instant::now();
    let decomposition = decompose(&polys, query.region.as_ref(), &query.options.cad);
    timings.decomposition = t.elapsed();
    let d = match decomposition {
        Ok(d) => d,
        Err(e @ (CadError::CellBudget { .. } | CadError::DegreeBudget { .. })) => {
            return Ok(Verdict {
                overall: Overall::Inconclusive,
                witnesses: Vec::new(),
                cells: Vec::new(),
                cuts,
                stats: None,
                assumptions,
                bottleneck: Some(format!("decomposition: {e}")),
                timings,
            });
        }
    };

    let diff = query.difference();
    let t = Instant::now();
    let tested: Vec<(CellRecord, Option<Witness>)> = d
        .cells
        .par_iter()
        .filter(|c| c.membership.is_none_or(|m| m == Membership::In))
        .map(|c| decide_cell(query, &diff, c.index, c.dim, c.sample.clone()))
        .collect();
    timings.decisions = t.elapsed();

    let mut cells = Vec::with_capacity(tested.len());
    let mut witnesses = Vec::new();
    for (rec, w) in tested {
        cells.push(rec);
        witnesses.extend(w);
    }
    let all_equal = cells.iter().all(|c| c.status == CellStatus::Equal);
    let overall = if !witnesses.is_empty() {
        Overall::NotEqual
    } else if all_equal && all_cuts_exact {
        Overall::EqualOnRegion
    } else {
        if all_equal {
            assumptions.equal_evidence = true;
            assumptions.notes.push("equal (evidence): every cell agrees but not every cut is exact".into());
        }
        Overall::Inconclusive
    };
    let bottleneck = (overall == Overall::Inconclusive && !all_equal)
        .then(|| format!("{} cell(s) undecided", cells.iter().filter(|c| c.status != CellStatus::Equal).count()));
    Ok(Verdict { overall, witnesses, cells, cuts, stats: Some(d.stats()), assumptions, bottleneck, timings })
}

/// The first witness in cell order, if the identity fails.
pub fn find_counterexample(query: &IdentityQuery) -> Result<Option<Witness>, VerifyError> {
    Ok(verify(query)?.witnesses.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::{rat, sign_at};

    fn run(lhs: &str, rhs: &str, mode: Mode, region: Option<&str>) -> Verdict {
        verify(&IdentityQuery::parse(lhs, rhs, mode, region).unwrap()).unwrap()
    }

    #[test]
    fn trivial_identity() {
        let v = run("z", "z", Mode::Complex, None);
        assert_eq!(v.overall, Overall::EqualOnRegion);
        assert_eq!(v.cells.len(), 1);
    }

    #[test]
    fn constant_defect() {
        let q = IdentityQuery::parse("x", "x + 1", Mode::Real, None).unwrap();
        let w = find_counterexample(&q).unwrap().unwrap();
        assert!(w.enclosure.re.contains(&crate::numeval::Dyadic::from_i64(-1)));
        assert!(!w.recheck.contains_zero());
    }

    #[test]
    fn square_root_of_square() {
        let v = run("sqrt(z^2)", "z", Mode::Complex, None);
        assert_eq!(v.overall, Overall::NotEqual);
        // every witness has Re z < 0 or lies on the imaginary axis below 0
        for w in &v.witnesses {
            let (x, y) = w.point.to_f64();
            assert!(x < 0.0 || (x == 0.0 && y < 0.0), "({x}, {y})");
        }
        let right = run("sqrt(z^2)", "z", Mode::Complex, Some("x > 0"));
        assert_eq!(right.overall, Overall::EqualOnRegion);
        for c in &right.cells {
            assert_eq!(sign_at(&BivarPoly::x(), &c.sample.x, &c.sample.y), 1);
        }
    }

    #[test]
    fn log_of_product() {
        let v = run("log(z^2)", "2*log(z)", Mode::Complex, None);
        assert_eq!(v.overall, Overall::NotEqual);
        let ok = run("log(z^2)", "2*log(z)", Mode::Complex, Some("x > 0"));
        assert_eq!(ok.overall, Overall::EqualOnRegion);
    }

    #[test]
    fn domain_errors_are_inconclusive_cells() {
        let v = run("log(z) - log(z)", "0", Mode::Complex, None);
        assert_eq!(v.overall, Overall::Inconclusive);
        let bad: Vec<_> = v.inconclusive_cells();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].sample.x.rational(), Some(&rat(0)));
    }

    #[test]
    fn budget_is_named() {
        let mut q = IdentityQuery::parse("log(z^3 - 1)", "log(z^3 - 1)", Mode::Complex, None).unwrap();
        q.options.cad.max_cells = 3;
        let v = verify(&q).unwrap();
        assert_eq!(v.overall, Overall::Inconclusive);
        assert!(v.bottleneck.unwrap().contains("budget"));
    }

    #[test]
    fn variables_must_match_mode() {
        assert!(matches!(IdentityQuery::parse("x", "z", Mode::Complex, None), Err(VerifyError::Parse(_) | VerifyError::Variable(..))));
    }
}
