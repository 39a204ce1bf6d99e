//! SVG 1.1 plots of cut sets, decompositions and sample points.
//!
//! A set is drawn from a decomposition of its own polynomials: curve
//! pieces that satisfy it are traced along their sections, isolated points
//! become dots and full-dimensional parts are shaded on a raster.

use std::fmt::Write;

use num_traits::ToPrimitive;

use branchwise::cad::{decompose, CadOptions, CellDecomposition, SemiAlgebraicSet, YCell};
use branchwise::realalg::{sign_at, BivarPoly, Rational, RealCoord};

/// Visible rectangle `[x0, x1] x [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct View {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Default for View {
    fn default() -> Self {
        View { x0: -6.0, x1: 2.0, y0: -3.0, y1: 3.0 }
    }
}

impl std::str::FromStr for View {
    type Err = String;

    /// `[a,b]x[c,d]`.
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("bad view `{s}`, expected [a,b]x[c,d]");
        let (xr, yr) = s.split_once("]x[").ok_or_else(bad)?;
        let nums = |t: &str| -> Result<(f64, f64), String> {
            let t = t.trim_matches(|c| c == '[' || c == ']');
            let (a, b) = t.split_once(',').ok_or_else(bad)?;
            let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a < b {
                Ok((a, b))
            } else {
                Err(bad())
            }
        };
        let ((x0, x1), (y0, y1)) = (nums(xr)?, nums(yr)?);
        Ok(View { x0, x1, y0, y1 })
    }
}

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 40.0;
const COLUMNS: usize = 240;
const RASTER: usize = 96;

pub struct Svg {
    view: View,
    height: f64,
    body: String,
    legend: Vec<(String, String)>,
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn f(v: f64) -> String {
    format!("{v:.2}")
}

fn exact(v: f64) -> Rational {
    Rational::from_float(v).unwrap_or_default()
}

impl Svg {
    pub fn new(view: View) -> Self {
        let h = WIDTH * (view.y1 - view.y0) / (view.x1 - view.x0);
        Svg { view, height: h.clamp(120.0, 2000.0), body: String::new(), legend: Vec::new() }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.view.x0) / (self.view.x1 - self.view.x0) * WIDTH
    }

    fn py(&self, y: f64) -> f64 {
        MARGIN + (self.view.y1 - y) / (self.view.y1 - self.view.y0) * self.height
    }

    /// Inverse of the pixel map, for tests.
    pub fn to_plane(&self, px: f64, py: f64) -> (f64, f64) {
        let v = &self.view;
        (v.x0 + (px - MARGIN) / WIDTH * (v.x1 - v.x0), v.y1 - (py - MARGIN) / self.height * (v.y1 - v.y0))
    }

    pub fn axes(&mut self, xlabel: &str, ylabel: &str) {
        let v = self.view;
        let mut s = String::new();
        let _ = write!(
            s,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#888"/>"##,
            f(MARGIN),
            f(MARGIN),
            f(WIDTH),
            f(self.height)
        );
        if v.y0 <= 0.0 && 0.0 <= v.y1 {
            let _ = write!(s, r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#bbb"/>"##, f(self.px(v.x0)), f(self.px(v.x1)), y = f(self.py(0.0)));
        }
        if v.x0 <= 0.0 && 0.0 <= v.x1 {
            let _ = write!(s, r##"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#bbb"/>"##, f(self.py(v.y0)), f(self.py(v.y1)), x = f(self.px(0.0)));
        }
        for k in (v.x0.ceil() as i64)..=(v.x1.floor() as i64) {
            let _ = write!(s, r#"<text x="{}" y="{}" font-size="10" text-anchor="middle">{k}</text>"#, f(self.px(k as f64)), f(MARGIN + self.height + 14.0));
        }
        for k in (v.y0.ceil() as i64)..=(v.y1.floor() as i64) {
            let _ = write!(s, r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{k}</text>"#, f(MARGIN - 4.0), f(self.py(k as f64) + 3.0));
        }
        let _ = write!(s, r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#, f(MARGIN + WIDTH / 2.0), f(MARGIN + self.height + 30.0), esc(xlabel));
        let _ = write!(
            s,
            r#"<text x="12" y="{}" font-size="12" text-anchor="middle" transform="rotate(-90 12 {})">{}</text>"#,
            f(MARGIN + self.height / 2.0),
            f(MARGIN + self.height / 2.0),
            esc(ylabel)
        );
        self.body.push_str(&s);
    }

    pub fn legend(&mut self, swatch: &str, label: &str) {
        self.legend.push((swatch.into(), label.into()));
    }

    pub fn polyline(&mut self, pts: &[(f64, f64)], color: &str, class: &str) {
        if pts.len() < 2 {
            return;
        }
        let p: Vec<String> = pts.iter().map(|&(x, y)| format!("{},{}", f(self.px(x)), f(self.py(y)))).collect();
        let _ = write!(self.body, r#"<polyline class="{class}" points="{}" fill="none" stroke="{color}" stroke-width="1.6"/>"#, p.join(" "));
    }

    pub fn dot(&mut self, x: f64, y: f64, color: &str, class: &str, title: &str) {
        let _ = write!(
            self.body,
            r#"<circle class="{class}" cx="{}" cy="{}" r="2.8" fill="{color}"><title>{}</title></circle>"#,
            f(self.px(x)),
            f(self.py(y)),
            esc(title)
        );
    }

    pub fn vline(&mut self, x: f64, color: &str) {
        let _ = write!(
            self.body,
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="{color}" stroke-dasharray="3,3"/>"#,
            f(MARGIN),
            f(MARGIN + self.height),
            x = f(self.px(x))
        );
    }

    fn shade(&mut self, cells: &[(usize, usize)], color: &str) {
        let (w, h) = (WIDTH / RASTER as f64, self.height / RASTER as f64);
        for &(i, j) in cells {
            let _ = write!(
                self.body,
                r#"<rect class="region" x="{}" y="{}" width="{}" height="{}" fill="{color}" fill-opacity="0.25" stroke="none"/>"#,
                f(MARGIN + i as f64 * w),
                f(MARGIN + self.height - (j + 1) as f64 * h),
                f(w + 0.3),
                f(h + 0.3)
            );
        }
    }

    pub fn finish(self, title: &str) -> String {
        let (w, h) = (WIDTH + 2.0 * MARGIN + 160.0, self.height + 2.0 * MARGIN + 10.0);
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            f(w),
            f(h),
            f(w),
            f(h)
        );
        let _ = writeln!(s, "<title>{}</title>", esc(title));
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        s.push_str(&self.body);
        for (k, (sw, label)) in self.legend.iter().enumerate() {
            let y = MARGIN + 12.0 + 18.0 * k as f64;
            let x = MARGIN + WIDTH + 12.0;
            match sw.split_once(':') {
                Some(("shade", c)) => {
                    let _ = write!(s, r#"<rect x="{}" y="{}" width="18" height="10" fill="{c}" fill-opacity="0.25"/>"#, f(x), f(y - 8.0));
                }
                Some(("dot", c)) => {
                    let _ = write!(s, r#"<circle cx="{}" cy="{}" r="3" fill="{c}"/>"#, f(x + 9.0), f(y - 3.0));
                }
                _ => {
                    let c = sw.split_once(':').map_or(sw.as_str(), |p| p.1);
                    let _ = write!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{c}" stroke-width="1.6"/>"#, f(x), f(y - 3.0), f(x + 18.0), f(y - 3.0));
                }
            }
            let _ = write!(s, r#"<text x="{}" y="{}" font-size="11">{}</text>"#, f(x + 24.0), f(y), esc(label));
        }
        s.push_str("\n</svg>\n");
        s
    }

    /// Rational abscissae strictly inside an x-cell, clipped to the view.
    fn columns(&self, lo: Option<&RealCoord>, hi: Option<&RealCoord>) -> Vec<Rational> {
        let a = lo.map_or(self.view.x0, |c| c.to_f64()).max(self.view.x0);
        let b = hi.map_or(self.view.x1, |c| c.to_f64()).min(self.view.x1);
        if a >= b {
            return Vec::new();
        }
        let n = ((b - a) / (self.view.x1 - self.view.x0) * COLUMNS as f64).ceil().max(2.0) as usize;
        let inside = |x: &Rational| {
            lo.is_none_or(|l| l.cmp_coord(&RealCoord::Rational(x.clone())).is_lt())
                && hi.is_none_or(|h| RealCoord::Rational(x.clone()).cmp_coord(h).is_lt())
        };
        let mut out: Vec<Rational> = (0..=n).map(|k| exact(a + (b - a) * k as f64 / n as f64)).filter(inside).collect();
        // step just inside algebraic ends so the curve reaches them
        for (end, toward) in [(lo, 1.0), (hi, -1.0)] {
            if let Some(e) = end {
                let v = e.to_f64();
                if v > self.view.x0 && v < self.view.x1 {
                    let x = exact(v + toward * (b - a) * 1e-4);
                    if inside(&x) {
                        out.push(x);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Draws a semi-algebraic set; returns how many pieces were drawn.
    pub fn set(&mut self, set: &SemiAlgebraicSet, color: &str) -> usize {
        let polys = set.polys();
        let Ok(d) = decompose(&polys, None, &CadOptions::default()) else {
            return 0;
        };
        let mut pieces = 0;
        let mut full = false;
        for cell in &d.cells {
            if !set.holds_with(|p| sign_at(p, &cell.sample.x, &cell.sample.y)) {
                continue;
            }
            pieces += 1;
            let xc = &d.x_cells[cell.index.0];
            match (cell.dim, &cell.y_cell) {
                (2, _) => full = true,
                (0, _) => {
                    let (x, y) = cell.sample.to_f64();
                    self.dot(x, y, color, "point", &format!("({x:.6}, {y:.6})"));
                }
                (1, YCell::Section(_)) => {
                    let pts: Vec<(f64, f64)> = self
                        .columns(xc.lo.as_ref(), xc.hi.as_ref())
                        .iter()
                        .map(|x| (x, d.y_bounds_at(cell, x).0.expect("section bound")))
                        .map(|(x, y)| (x.to_f64().unwrap_or(f64::NAN), y.to_f64()))
                        .collect();
                    self.clipped(&pts, color);
                }
                (1, YCell::Sector { .. }) => self.vertical(&d, cell.index, color),
                _ => {}
            }
        }
        if full {
            let mut hit = Vec::new();
            for j in 0..RASTER {
                for i in 0..RASTER {
                    let (x, y) = self.to_plane(MARGIN + (i as f64 + 0.5) * WIDTH / RASTER as f64, MARGIN + self.height - (j as f64 + 0.5) * self.height / RASTER as f64);
                    let (xr, yr) = (exact(x), exact(y));
                    if set.holds_with(|p| p.sign_at_rational(&xr, &yr)) {
                        hit.push((i, j));
                    }
                }
            }
            self.shade(&hit, color);
        }
        pieces
    }

    /// Splits a traced curve where it leaves the view.
    fn clipped(&mut self, pts: &[(f64, f64)], color: &str) {
        let (lo, hi) = (self.view.y0, self.view.y1);
        let mut run = Vec::new();
        for &(x, y) in pts {
            if (lo..=hi).contains(&y) {
                run.push((x, y));
            } else {
                let r = std::mem::take(&mut run);
                self.polyline(&r, color, "curve");
            }
        }
        self.polyline(&run, color, "curve");
    }

    /// A vertical segment: a sector cell over a section of the base line.
    fn vertical(&mut self, d: &CellDecomposition, index: (usize, usize), color: &str) {
        let cell = d.cells.iter().find(|c| c.index == index).expect("cell exists");
        let x = d.x_cells[index.0].sample.to_f64();
        if !(self.view.x0..=self.view.x1).contains(&x) {
            return;
        }
        let bound = |r: Option<&branchwise::cad::SectionRef>, dflt: f64| {
            r.map_or(dflt, |r| {
                let stack: Vec<_> = d.cells.iter().filter(|c| c.index.0 == index.0 && c.dim == 0).collect();
                stack
                    .iter()
                    .find(|c| matches!(&c.y_cell, YCell::Section(refs) if refs.contains(r)))
                    .map_or(dflt, |c| c.sample.y.to_f64())
            })
        };
        let (a, b) = match &cell.y_cell {
            YCell::Sector { below, above } => (bound(below.as_ref(), self.view.y0), bound(above.as_ref(), self.view.y1)),
            YCell::Section(_) => return,
        };
        let (a, b) = (a.max(self.view.y0), b.min(self.view.y1));
        if a < b {
            self.polyline(&[(x, a), (x, b)], color, "curve");
        }
    }

    /// Zero set of one polynomial.
    pub fn zero_set(&mut self, p: &BivarPoly, color: &str) -> usize {
        self.set(&SemiAlgebraicSet::conjunction(vec![branchwise::cad::Atom::new(p, branchwise::cad::Rel::Eq)]), color)
    }
}
