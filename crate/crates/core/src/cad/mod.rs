//! Cylindrical algebraic decomposition of the plane, and of the line, into
//! cells on which a set of polynomials has constant sign. Every cell gets
//! an exact sample point.
//!
//! Projection keeps, for a squarefree pairwise-coprime basis, the leading
//! coefficients, discriminants and pairwise resultants in `y`, plus all
//! `x`-contents. In two variables with primitive basis elements this is
//! enough for delineability over every sector of the base line; stacks
//! over base sections are built by exact root isolation at the algebraic
//! abscissa, so nothing is assumed there.

mod region;

use std::cmp::Ordering;

use num_traits::Zero;
use rayon::prelude::*;

pub use region::{parse_polynomial, Atom, RegionError, Rel, SemiAlgebraicSet};

use crate::numeval::Point;
use crate::realalg::{
    discriminant_y, isolate_real_roots, resultant_y, roots_over, sign_at, simplest_between, BivarPoly, Rational,
    RealCoord, UPoly,
};

pub const DEFAULT_MAX_CELLS: usize = 100_000;
pub const DEFAULT_MAX_DEGREE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CadOptions {
    pub max_cells: usize,
    /// Cap on the degree in each variable of inputs and projection factors.
    pub max_degree: usize,
}

impl Default for CadOptions {
    fn default() -> Self {
        CadOptions { max_cells: DEFAULT_MAX_CELLS, max_degree: DEFAULT_MAX_DEGREE }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CadError {
    #[error("cell budget exceeded: more than {limit} cells")]
    CellBudget { limit: usize },
    #[error("degree budget exceeded: degree {degree} is over the limit {limit}")]
    DegreeBudget { degree: usize, limit: usize },
}

/// The `root`-th real root in `y` (counted from below) of basis element
/// `poly` over the current abscissa.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SectionRef {
    pub poly: usize,
    pub root: usize,
}

/// Position of a cell inside its stack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YCell {
    /// Open interval between two consecutive root curves; `None` is
    /// unbounded.
    Sector { below: Option<SectionRef>, above: Option<SectionRef> },
    /// On a root curve, shared by every basis element listed.
    Section(Vec<SectionRef>),
}

/// A sector or a point of the base line.
#[derive(Clone, Debug)]
pub struct XCell {
    pub index: usize,
    pub dim: u8,
    pub lo: Option<RealCoord>,
    pub hi: Option<RealCoord>,
    pub sample: RealCoord,
}

impl XCell {
    pub fn contains(&self, x: &Rational) -> bool {
        let xr = RealCoord::Rational(x.clone());
        if self.dim == 0 {
            return self.sample.cmp_coord(&xr) == Ordering::Equal;
        }
        let above_lo = self.lo.as_ref().is_none_or(|l| l.cmp_coord(&xr) == Ordering::Less);
        let below_hi = self.hi.as_ref().is_none_or(|h| xr.cmp_coord(h) == Ordering::Less);
        above_lo && below_hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    In,
    /// Outside the region but on one of its boundary curves.
    Boundary,
    Out,
}

#[derive(Clone, Debug)]
pub struct Cell {
    /// (stack, position in stack), both from zero.
    pub index: (usize, usize),
    pub dim: u8,
    pub sample: Point,
    /// Sign of each input polynomial on the cell.
    pub signs: Vec<i8>,
    pub y_cell: YCell,
    pub membership: Option<Membership>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CadStats {
    pub cells: usize,
    pub x_cells: usize,
    pub basis: usize,
    pub projection: usize,
    pub max_stack: usize,
    pub full_dimensional: usize,
}

#[derive(Clone, Debug)]
pub struct CellDecomposition {
    pub input: Vec<BivarPoly>,
    pub region: Option<SemiAlgebraicSet>,
    /// Squarefree, pairwise coprime, primitive in `y`.
    pub basis: Vec<BivarPoly>,
    pub projection: Vec<UPoly>,
    pub x_cells: Vec<XCell>,
    /// Stack-major, bottom-up within each stack.
    pub cells: Vec<Cell>,
}

impl CellDecomposition {
    pub fn stats(&self) -> CadStats {
        let mut max_stack = 0;
        let mut run = 0;
        let mut last = usize::MAX;
        for c in &self.cells {
            if c.index.0 != last {
                run = 0;
                last = c.index.0;
            }
            run += 1;
            max_stack = max_stack.max(run);
        }
        CadStats {
            cells: self.cells.len(),
            x_cells: self.x_cells.len(),
            basis: self.basis.len(),
            projection: self.projection.len(),
            max_stack,
            full_dimensional: self.cells.iter().filter(|c| c.dim == 2).count(),
        }
    }

    fn root_at(&self, r: &SectionRef, x: &Rational) -> RealCoord {
        roots_over(&self.basis[r.poly], &RealCoord::Rational(x.clone())).swap_remove(r.root)
    }

    /// Lower and upper `y`-bounds of the cell over a rational abscissa of
    /// its base cell. They coincide on a section.
    pub fn y_bounds_at(&self, cell: &Cell, x: &Rational) -> (Option<RealCoord>, Option<RealCoord>) {
        match &cell.y_cell {
            YCell::Sector { below, above } => {
                (below.as_ref().map(|r| self.root_at(r, x)), above.as_ref().map(|r| self.root_at(r, x)))
            }
            YCell::Section(refs) => {
                let r = self.root_at(&refs[0], x);
                (Some(r.clone()), Some(r))
            }
        }
    }

    /// Exact membership of a rational point in a cell.
    pub fn cell_contains(&self, cell: &Cell, x: &Rational, y: &Rational) -> bool {
        if !self.x_cells[cell.index.0].contains(x) {
            return false;
        }
        let yr = RealCoord::Rational(y.clone());
        let (lo, hi) = self.y_bounds_at(cell, x);
        match &cell.y_cell {
            YCell::Section(_) => lo.unwrap().cmp_coord(&yr) == Ordering::Equal,
            YCell::Sector { .. } => {
                lo.is_none_or(|l| l.cmp_coord(&yr) == Ordering::Less)
                    && hi.is_none_or(|h| yr.cmp_coord(&h) == Ordering::Less)
            }
        }
    }
}

/// A cell of the line.
#[derive(Clone, Debug)]
pub struct Cell1D {
    pub index: usize,
    pub dim: u8,
    pub sample: RealCoord,
    pub signs: Vec<i8>,
}

fn check_degree(d: isize, opts: &CadOptions) -> Result<(), CadError> {
    if d > opts.max_degree as isize {
        Err(CadError::DegreeBudget { degree: d as usize, limit: opts.max_degree })
    } else {
        Ok(())
    }
}

/// Refines a squarefree, pairwise coprime basis by one more squarefree
/// polynomial.
fn refine_basis(basis: Vec<BivarPoly>, q: BivarPoly) -> Vec<BivarPoly> {
    let mut out = Vec::with_capacity(basis.len() + 1);
    let mut q = q;
    for b in basis {
        if q.deg_y() < 1 {
            out.push(b);
            continue;
        }
        let g = BivarPoly::gcd(&b, &q);
        if g.deg_y() < 1 && g.deg_x() < 1 {
            out.push(b);
            continue;
        }
        let rest = b.div_exact(&g).expect("gcd divides");
        q = q.div_exact(&g).expect("gcd divides").normalized();
        out.push(g);
        if !rest.is_constant() {
            out.push(rest.normalized());
        }
    }
    if !q.is_constant() {
        out.push(q);
    }
    out
}

fn refine_ubasis(basis: Vec<UPoly>, q: UPoly) -> Vec<UPoly> {
    let mut out = Vec::with_capacity(basis.len() + 1);
    let mut q = q;
    for b in basis {
        if q.deg() < 1 {
            out.push(b);
            continue;
        }
        let g = UPoly::gcd(&b, &q);
        if g.deg() < 1 {
            out.push(b);
            continue;
        }
        let rest = b.exact_div(&g);
        q = q.exact_div(&g);
        out.push(g.primitive());
        if rest.deg() >= 1 {
            out.push(rest.primitive());
        }
    }
    if q.deg() >= 1 {
        out.push(q.primitive());
    }
    out
}

/// Squarefree pairwise coprime basis of univariate polynomials, ignoring
/// zeros and constants.
fn ubasis(polys: impl IntoIterator<Item = UPoly>) -> Vec<UPoly> {
    let mut basis = Vec::new();
    for p in polys {
        if p.deg() >= 1 {
            basis = refine_ubasis(basis, p.squarefree_part().primitive());
        }
    }
    basis
}

/// The `y`-dependent basis and the `x`-contents of a polynomial set.
fn split_basis(polys: &[BivarPoly]) -> (Vec<BivarPoly>, Vec<UPoly>) {
    let mut basis = Vec::new();
    let mut contents = Vec::new();
    for p in polys {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        if p.deg_y() < 1 {
            contents.push(p.coeff_y(0));
            continue;
        }
        let c = p.content_x();
        if c.deg() >= 1 {
            contents.push(c);
        }
        let sf = p.primitive_y().squarefree_y().normalized();
        basis = refine_basis(basis, sf);
    }
    (basis, contents)
}

fn projection_of(basis: &[BivarPoly], contents: Vec<UPoly>) -> Vec<UPoly> {
    let mut parts = contents;
    for (i, p) in basis.iter().enumerate() {
        parts.push(p.lc_y());
        if p.deg_y() >= 2 {
            parts.push(discriminant_y(p).expect("degree at least two"));
        }
        for q in &basis[i + 1..] {
            parts.push(resultant_y(p, q));
        }
    }
    ubasis(parts)
}

/// The projection set of a polynomial family: squarefree, primitive,
/// pairwise coprime polynomials in `x` whose real roots are the base
/// sections.
pub fn project(polys: &[BivarPoly]) -> Vec<UPoly> {
    let (basis, contents) = split_basis(polys);
    projection_of(&basis, contents)
}

fn sorted_roots(polys: &[UPoly]) -> Vec<RealCoord> {
    let mut roots: Vec<RealCoord> = polys
        .iter()
        .flat_map(|p| {
            isolate_real_roots(p)
                .unwrap_or_default()
                .into_iter()
                .map(move |iv| RealCoord::from_root(p, iv))
        })
        .collect();
    roots.sort_by(|a, b| a.cmp_coord(b));
    roots
}

fn lower_bound(c: &RealCoord) -> Rational {
    match c {
        RealCoord::Rational(r) => r.clone(),
        RealCoord::Algebraic(a) => a.interval().0,
    }
}

fn upper_bound(c: &RealCoord) -> Rational {
    match c {
        RealCoord::Rational(r) => r.clone(),
        RealCoord::Algebraic(a) => a.interval().1,
    }
}

fn narrow(c: &RealCoord) {
    if let RealCoord::Algebraic(a) = c {
        let (lo, hi) = a.interval();
        a.refine_to_width(&((hi - lo) / Rational::from_integer(2.into())));
    }
}

/// A rational of small denominator strictly between two coordinates, or
/// beyond one of them when the other is absent.
pub fn sample_between(lo: Option<&RealCoord>, hi: Option<&RealCoord>) -> Rational {
    match (lo, hi) {
        (None, None) => Rational::zero(),
        (None, Some(h)) => {
            let u = lower_bound(h);
            let two = Rational::from_integer(2.into());
            let a = (u.ceil() - &two).min(-two);
            simplest_between(&a, &u)
        }
        (Some(l), None) => {
            let a = upper_bound(l);
            let two = Rational::from_integer(2.into());
            let b = (a.floor() + &two).max(two);
            simplest_between(&a, &b)
        }
        (Some(l), Some(h)) => loop {
            let a = upper_bound(l);
            let b = lower_bound(h);
            if a < b {
                return simplest_between(&a, &b);
            }
            narrow(l);
            narrow(h);
        },
    }
}

fn base_cells(roots: Vec<RealCoord>) -> Vec<XCell> {
    let mut cells = Vec::with_capacity(2 * roots.len() + 1);
    let mut prev: Option<RealCoord> = None;
    for r in roots {
        let s = sample_between(prev.as_ref(), Some(&r));
        cells.push(XCell { index: cells.len(), dim: 1, lo: prev.clone(), hi: Some(r.clone()), sample: RealCoord::Rational(s) });
        cells.push(XCell { index: cells.len(), dim: 0, lo: Some(r.clone()), hi: Some(r.clone()), sample: r.clone() });
        prev = Some(r);
    }
    let s = sample_between(prev.as_ref(), None);
    cells.push(XCell { index: cells.len(), dim: 1, lo: prev, hi: None, sample: RealCoord::Rational(s) });
    cells
}

struct StackContext<'a> {
    polys: &'a [BivarPoly],
    contents: Vec<UPoly>,
    basis: &'a [BivarPoly],
    /// `divides[i][k]`: basis element `k` divides input `i`.
    divides: Vec<Vec<bool>>,
    n_user: usize,
    region: Option<&'a SemiAlgebraicSet>,
}

impl StackContext<'_> {
    fn build(&self, xc: &XCell) -> Vec<Cell> {
        let x = &xc.sample;
        let mut tagged: Vec<(RealCoord, SectionRef)> = Vec::new();
        for (k, b) in self.basis.iter().enumerate() {
            for (j, r) in roots_over(b, x).into_iter().enumerate() {
                tagged.push((r, SectionRef { poly: k, root: j }));
            }
        }
        tagged.sort_by(|a, b| a.0.cmp_coord(&b.0).then(a.1.poly.cmp(&b.1.poly)));
        let mut sections: Vec<(RealCoord, Vec<SectionRef>)> = Vec::new();
        for (r, t) in tagged {
            match sections.last_mut() {
                Some((last, refs)) if last.cmp_coord(&r) == Ordering::Equal => refs.push(t),
                _ => sections.push((r, vec![t])),
            }
        }
        let stack_zero: Vec<bool> = self.contents.iter().map(|c| x.sign_of(c) == 0).collect();
        let mut cells = Vec::with_capacity(2 * sections.len() + 1);
        for j in 0..=2 * sections.len() {
            let (y, y_cell) = if j % 2 == 0 {
                let below = (j > 0).then(|| &sections[j / 2 - 1]);
                let above = sections.get(j / 2);
                let y = sample_between(below.map(|s| &s.0), above.map(|s| &s.0));
                (
                    RealCoord::Rational(y),
                    YCell::Sector { below: below.map(|s| s.1[0]), above: above.map(|s| s.1[0]) },
                )
            } else {
                let s = &sections[j / 2];
                (s.0.clone(), YCell::Section(s.1.clone()))
            };
            let signs: Vec<i8> = (0..self.polys.len())
                .map(|i| {
                    if stack_zero[i] {
                        return 0;
                    }
                    if let YCell::Section(refs) = &y_cell {
                        if refs.iter().any(|r| self.divides[i][r.poly]) {
                            return 0;
                        }
                    }
                    sign_at(&self.polys[i], x, &y)
                })
                .collect();
            let membership = self.region.map(|reg| {
                let sign = |p: &BivarPoly| {
                    let i = self.polys.iter().position(|q| q == p).expect("region polynomial in input");
                    signs[i]
                };
                if reg.holds_with(sign) {
                    Membership::In
                } else if reg.polys().iter().any(|p| sign(p) == 0) {
                    Membership::Boundary
                } else {
                    Membership::Out
                }
            });
            cells.push(Cell {
                index: (xc.index, j),
                dim: xc.dim + (j % 2 == 0) as u8,
                sample: Point::new(x.clone(), y),
                signs: signs[..self.n_user].to_vec(),
                y_cell,
                membership,
            });
        }
        cells
    }
}

/// Decomposes the plane into cells on which every input polynomial, and
/// every polynomial of the region if one is given, has constant sign.
/// Cells are then flagged against the region.
pub fn decompose(
    polys: &[BivarPoly],
    region: Option<&SemiAlgebraicSet>,
    opts: &CadOptions,
) -> Result<CellDecomposition, CadError> {
    let mut all: Vec<BivarPoly> = polys.to_vec();
    if let Some(r) = region {
        for p in r.polys() {
            if !all.contains(&p) {
                all.push(p);
            }
        }
    }
    for p in &all {
        check_degree(p.deg_x(), opts)?;
        check_degree(p.deg_y(), opts)?;
    }
    let (basis, contents) = split_basis(&all);
    let projection = projection_of(&basis, contents);
    for p in &projection {
        check_degree(p.deg(), opts)?;
    }
    let roots = sorted_roots(&projection);
    if 2 * roots.len() + 1 > opts.max_cells {
        return Err(CadError::CellBudget { limit: opts.max_cells });
    }
    let x_cells = base_cells(roots);
    let ctx = StackContext {
        polys: &all,
        contents: all.iter().map(|p| if p.is_zero() { UPoly::zero() } else { p.content_x() }).collect(),
        basis: &basis,
        divides: all.iter().map(|p| basis.iter().map(|b| !p.is_zero() && p.div_exact(b).is_some()).collect()).collect(),
        n_user: polys.len(),
        region,
    };
    let stacks: Vec<Vec<Cell>> = x_cells.par_iter().map(|xc| ctx.build(xc)).collect();
    let total: usize = stacks.iter().map(Vec::len).sum();
    if total > opts.max_cells {
        return Err(CadError::CellBudget { limit: opts.max_cells });
    }
    let cells = stacks.into_iter().flatten().collect();
    Ok(CellDecomposition { input: polys.to_vec(), region: region.cloned(), basis, projection, x_cells, cells })
}

/// One sample point per cell, in cell order.
pub fn sample_points(d: &CellDecomposition) -> Vec<((usize, usize), Point)> {
    d.cells.iter().map(|c| (c.index, c.sample.clone())).collect()
}

/// Decomposes the line for univariate polynomials.
pub fn decompose_1d(polys: &[UPoly], opts: &CadOptions) -> Result<Vec<Cell1D>, CadError> {
    for p in polys {
        check_degree(p.deg(), opts)?;
    }
    let basis = ubasis(polys.iter().cloned());
    let roots = sorted_roots(&basis);
    if 2 * roots.len() + 1 > opts.max_cells {
        return Err(CadError::CellBudget { limit: opts.max_cells });
    }
    Ok(base_cells(roots)
        .into_iter()
        .map(|xc| Cell1D {
            index: xc.index,
            dim: xc.dim,
            signs: polys.iter().map(|p| xc.sample.sign_of(p)).collect(),
            sample: xc.sample,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg::{rat, ratio};

    fn bp(t: &[(usize, usize, i64)]) -> BivarPoly {
        BivarPoly::from_terms(t)
    }

    fn circle() -> BivarPoly {
        bp(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)])
    }

    fn run(ps: &[BivarPoly]) -> CellDecomposition {
        decompose(ps, None, &CadOptions::default()).unwrap()
    }

    #[test]
    fn circle_has_thirteen_cells() {
        let d = run(&[circle()]);
        assert_eq!(d.cells.len(), 13);
        let per_stack: Vec<usize> =
            (0..d.x_cells.len()).map(|i| d.cells.iter().filter(|c| c.index.0 == i).count()).collect();
        assert_eq!(per_stack, vec![1, 3, 5, 3, 1]);
        let inner = d.cells.iter().find(|c| c.index == (2, 2)).unwrap();
        assert_eq!(inner.dim, 2);
        assert_eq!(inner.signs, vec![-1]);
        assert_eq!(inner.sample.x.rational(), Some(&rat(0)));
        assert_eq!(inner.sample.y.rational(), Some(&rat(0)));
    }

    #[test]
    fn small_counts() {
        assert_eq!(run(&[]).cells.len(), 1);
        let d = run(&[bp(&[(0, 1, 1)]), bp(&[(1, 0, 1)])]);
        assert_eq!(d.cells.len(), 9);
        for c in &d.cells {
            let x = c.sample.x.rational().unwrap();
            let y = c.sample.y.rational().unwrap();
            assert_eq!(c.signs, vec![crate::realalg::upoly::rsign(y), crate::realalg::upoly::rsign(x)]);
        }
        let line = run(&[bp(&[(0, 1, 1)])]);
        assert_eq!(line.cells.len(), 3);
        let ys: Vec<i8> = line.cells.iter().map(|c| c.signs[0]).collect();
        assert_eq!(ys, vec![-1, 0, 1]);
    }

    #[test]
    fn projection_examples() {
        let p = project(&[circle()]);
        assert_eq!(p, vec![UPoly::from_ints(&[-1, 0, 1])]);
        assert!(project(&[bp(&[(0, 1, 1)])]).is_empty());
        let q = project(&[bp(&[(0, 1, 1), (1, 0, -1)]), bp(&[(0, 1, 1), (1, 0, 1)])]);
        assert_eq!(q, vec![UPoly::from_ints(&[0, 1])]);
    }

    #[test]
    fn repeated_and_shared_factors() {
        // (y - x)^2 (y + x) and (y - x): basis {y - x, y + x}
        let a = bp(&[(0, 1, 1), (1, 0, -1)]);
        let b = bp(&[(0, 1, 1), (1, 0, 1)]);
        let p = &(&a * &a) * &b;
        let d = run(&[p, a.clone()]);
        assert_eq!(d.basis.len(), 2);
        // three stacks: 5 + 3 + 5
        assert_eq!(d.cells.len(), 13);
    }

    #[test]
    fn contents_give_vertical_lines() {
        // x (x - 1) y has content x(x - 1)
        let p = bp(&[(2, 1, 1), (1, 1, -1)]);
        let d = run(&[p]);
        assert_eq!(d.x_cells.len(), 5);
        for c in d.cells.iter().filter(|c| c.index.0 == 1 || c.index.0 == 3) {
            assert_eq!(c.signs, vec![0]);
        }
    }

    #[test]
    fn sections_over_algebraic_abscissae() {
        // y^2 = 2 - x^2 touches x = ±sqrt 2
        let p = bp(&[(2, 0, 1), (0, 2, 1), (0, 0, -2)]);
        let d = run(&[p, bp(&[(0, 1, 1), (1, 0, -1)])]);
        for c in &d.cells {
            assert_eq!(c.signs[0], sign_at(&d.input[0], &c.sample.x, &c.sample.y));
            assert_eq!(c.signs[1], sign_at(&d.input[1], &c.sample.x, &c.sample.y));
        }
        // y = x meets the circle at (±1, ±1)
        let hits = d.cells.iter().filter(|c| c.dim == 0 && c.signs == vec![0, 0]).count();
        assert_eq!(hits, 2);
    }

    #[test]
    fn region_flags() {
        let reg = SemiAlgebraicSet::parse("y > 0").unwrap();
        let d = decompose(&[circle()], Some(&reg), &CadOptions::default()).unwrap();
        for c in &d.cells {
            let y = c.sample.y.to_f64();
            let want = if y > 0.0 {
                Membership::In
            } else if y == 0.0 {
                Membership::Boundary
            } else {
                Membership::Out
            };
            assert_eq!(c.membership, Some(want));
            assert_eq!(c.signs.len(), 1);
        }
    }

    #[test]
    fn budgets() {
        let opts = CadOptions { max_cells: 10, ..Default::default() };
        assert_eq!(decompose(&[circle()], None, &opts).unwrap_err(), CadError::CellBudget { limit: 10 });
        let tall = BivarPoly::from_terms(&[(0, 70, 1), (1, 0, 1)]);
        assert!(matches!(
            decompose(&[tall], None, &CadOptions::default()),
            Err(CadError::DegreeBudget { degree: 70, .. })
        ));
    }

    #[test]
    fn line_decomposition() {
        let o = CadOptions::default();
        assert_eq!(decompose_1d(&[UPoly::from_ints(&[-2, 0, 1])], &o).unwrap().len(), 5);
        assert_eq!(decompose_1d(&[], &o).unwrap().len(), 1);
        // two distinct roots: two points and three intervals
        let c = decompose_1d(&[UPoly::from_ints(&[0, 1]), UPoly::from_ints(&[-1, 1])], &o).unwrap();
        assert_eq!(c.len(), 5);
        let samples: Vec<Rational> = c.iter().map(|c| c.sample.rational().unwrap().clone()).collect();
        assert_eq!(samples, vec![rat(-1), rat(0), ratio(1, 2), rat(1), rat(2)]);
        let signs: Vec<Vec<i8>> = c.iter().map(|c| c.signs.clone()).collect();
        assert_eq!(signs, vec![vec![-1, -1], vec![0, -1], vec![1, -1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn simplest_samples() {
        let two = RealCoord::Rational(rat(2));
        assert_eq!(sample_between(None, Some(&two)), rat(0));
        assert_eq!(sample_between(Some(&two), None), rat(3));
        assert_eq!(sample_between(Some(&RealCoord::Rational(rat(-5))), None), rat(0));
        assert_eq!(sample_between(Some(&RealCoord::Rational(rat(1))), Some(&two)), ratio(3, 2));
    }
}
