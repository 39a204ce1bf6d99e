//! Command-line front end: `verify`, `cuts`, `cad` and `eval`.

pub mod presets;
pub mod report;
pub mod svg;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use branchwise::branchcut::{cut_polys, expression_cuts, format_clause, real_discontinuity_locus, CutSet};
use branchwise::cad::{decompose, parse_polynomial, CadError, CadOptions, RegionError, SemiAlgebraicSet};
use branchwise::expr::{eval_exact, parse, Expr, Gaussian, Mode, ParseError};
use branchwise::numeval::{eval, EvalError, Point};
use branchwise::realalg::BivarPoly;
use branchwise::verifier::{verify, verify_on_grid, GridSpec, IdentityQuery, Overall, Verdict, VerifyError, VerifyOptions};

use report::{QueryRep, RunReport};
use svg::{Svg, View};

/// Process exit codes.
pub mod exit {
    pub const EQUAL: i32 = 0;
    pub const NOT_EQUAL: i32 = 1;
    pub const INCONCLUSIVE: i32 = 2;
    pub const CAD_BUDGET: i32 = 3;
    pub const DOMAIN: i32 = 4;
    pub const PARSE: i32 = 64;
    pub const USAGE: i32 = 65;
    pub const IO: i32 = 74;
}

#[derive(Parser, Debug)]
#[command(name = "branchwise", version, about = "Branch-cut aware verification of elementary-function identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether two expressions agree on a region.
    Verify(VerifyArgs),
    /// List the potential branch cuts of an expression.
    Cuts(CutsArgs),
    /// Decompose the plane into sign-invariant cells.
    Cad(CadArgs),
    /// Enclose the value of an expression at a point.
    Eval(EvalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Complex,
    Real,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Complex => Mode::Complex,
            ModeArg::Real => Mode::Real,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// complex: expressions in z = x + iy; real: expressions in x and y.
    #[arg(long, value_enum, default_value = "complex")]
    pub mode: ModeArg,
    /// Working precision in bits; the per-sample budget is 16 times this.
    #[arg(long, default_value_t = 128)]
    pub precision: u32,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write an SVG plot to this file.
    #[arg(long, value_name = "FILE.svg")]
    pub plot: Option<String>,
    /// Plot window `[a,b]x[c,d]`.
    #[arg(long, default_value = "[-6,2]x[-3,3]")]
    pub view: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub lhs: String,
    #[arg(long)]
    pub rhs: String,
    /// Conditions like `x^2+y^2 > 1, y > 0`; `or` separates alternatives.
    #[arg(long)]
    pub region: Option<String>,
    /// Evidence mode on a grid `WxH@[a,b]x[c,d]` instead of a decomposition.
    #[arg(long)]
    pub grid: Option<String>,
    /// Assumed separation of the values of a nonzero difference.
    #[arg(long, default_value_t = std::f64::consts::PI)]
    pub delta: f64,
    #[arg(long, default_value_t = branchwise::cad::DEFAULT_MAX_CELLS)]
    pub max_cells: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CutsArgs {
    #[arg(long, required_unless_present = "preset")]
    pub expr: Option<String>,
    #[arg(long, value_parser = preset_names())]
    pub preset: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CadArgs {
    /// Polynomials in x and y separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub polys: String,
    #[arg(long, default_value_t = branchwise::cad::DEFAULT_MAX_CELLS)]
    pub max_cells: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, required_unless_present = "preset")]
    pub expr: Option<String>,
    #[arg(long, value_parser = preset_names())]
    pub preset: Option<String>,
    /// The point `a+b*I` with rational a and b.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub at: String,
    #[command(flatten)]
    pub common: Common,
}

fn preset_names() -> clap::builder::PossibleValuesParser {
    clap::builder::PossibleValuesParser::new(presets::PRESETS.iter().map(|p| p.name))
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(exit::PARSE, e.to_string())
    }
}

impl From<RegionError> for Failure {
    fn from(e: RegionError) -> Self {
        Failure::new(exit::PARSE, e.to_string())
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Parse(p) => p.into(),
            VerifyError::Region(r) => r.into(),
            VerifyError::Variable(..) => Failure::new(exit::PARSE, e.to_string()),
            VerifyError::Cut(c) => Failure::new(exit::USAGE, c.to_string()),
        }
    }
}

fn parse_expr(text: &str, mode: Mode) -> Result<Expr, Failure> {
    let expanded = presets::expand(text).map_err(|m| Failure::new(exit::PARSE, m))?;
    Ok(parse(&expanded, mode)?)
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Complex => "complex",
        Mode::Real => "real",
    }
}

fn axis_labels(m: Mode) -> (&'static str, &'static str) {
    match m {
        Mode::Complex => ("Re z", "Im z"),
        Mode::Real => ("x", "y"),
    }
}

fn write_plot(path: &str, svg: String) -> Result<(), Failure> {
    std::fs::write(path, svg).map_err(|e| Failure::new(exit::IO, format!("cannot write {path}: {e}")))
}

fn view(c: &Common) -> Result<View, Failure> {
    c.view.parse().map_err(|m: String| Failure::new(exit::USAGE, m))
}

const CUT_COLOR: &str = "#1f4eb4";

fn draw_cuts(s: &mut Svg, cuts: &[CutSet]) {
    for c in cuts {
        s.set(&c.set, CUT_COLOR);
    }
    s.legend(&format!("line:{CUT_COLOR}"), "cut curve");
    s.legend(&format!("shade:{CUT_COLOR}"), "cut region");
}

/// Runs one command, writing the report to `out` and diagnostics to `err`,
/// and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => exit::USAGE,
            };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Cuts(a) => cmd_cuts(a, out),
        Command::Cad(a) => cmd_cad(a, out),
        Command::Eval(a) => cmd_eval(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::new(exit::IO, e.to_string()))
}

fn cut_listing(cuts: &[CutSet]) -> String {
    let mut s = String::new();
    for c in cuts {
        s.push_str(&format!("{}  [{}]\n", c.provenance, c.exactness.name()));
        if let Some(n) = &c.note {
            s.push_str(&format!("  note: {n}\n"));
        }
        if c.set.is_empty() {
            s.push_str("  (none)\n");
        }
        for cl in &c.set.clauses {
            s.push_str(&format!("  {}\n", format_clause(cl)));
        }
    }
    s
}

fn max_degree(polys: &[BivarPoly]) -> usize {
    polys.iter().map(|p| p.total_degree().max(0) as usize).max().unwrap_or(0)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mode: Mode = a.common.mode.into();
    let lhs = parse_expr(&a.lhs, mode)?;
    let rhs = parse_expr(&a.rhs, mode)?;
    let mut q = IdentityQuery::new(lhs, rhs, mode);
    if let Some(r) = &a.region {
        q.region = Some(SemiAlgebraicSet::parse(r)?);
    }
    q.options = VerifyOptions {
        precision: a.common.precision,
        delta: a.delta,
        cad: CadOptions { max_cells: a.max_cells, ..CadOptions::default() },
        ..VerifyOptions::default()
    };
    let query_rep = QueryRep {
        lhs: Some(q.lhs.to_string()),
        rhs: Some(q.rhs.to_string()),
        expr: None,
        polys: None,
        at: None,
        mode: mode_name(mode).into(),
        region: a.region.clone(),
        precision: a.common.precision,
    };
    let mut rep = RunReport::new("verify", query_rep);
    if let Some(g) = &a.grid {
        let spec: GridSpec = g.parse().map_err(|m: String| Failure::new(exit::USAGE, m))?;
        let t = Instant::now();
        let r = verify_on_grid(&q, &spec)?;
        rep.timings = vec![("grid".into(), report::ms(t.elapsed()))];
        rep.grid = Some(report::grid(&r));
        let text = format!(
            "grid {}: {} equal, {} nonzero, {} inconclusive, {} skipped (on a cut or outside the region)\n\
             evidence only: a grid never certifies equality\n",
            spec, r.equal, r.nonzero, r.inconclusive, r.skipped
        );
        let code = if r.nonzero > 0 { exit::NOT_EQUAL } else { exit::INCONCLUSIVE };
        if let Some(path) = &a.common.plot {
            let mut s = Svg::new(view(&a.common)?);
            let (xl, yl) = axis_labels(mode);
            s.axes(xl, yl);
            draw_cuts(&mut s, &q.cuts()?);
            for n in &r.nodes {
                let (x, y) = n.point.to_f64();
                s.dot(x, y, status_color(n.status.name()), n.status.name(), &format!("({x}, {y}) {}", n.status.name()));
            }
            status_legend(&mut s);
            write_plot(path, s.finish(&format!("{} vs {} on {spec}", q.lhs, q.rhs)))?;
        }
        emit(out, &if a.common.format == Format::Json { rep.to_json() + "\n" } else { text })?;
        return Ok(code);
    }
    let v = verify(&q)?;
    let polys = cut_polys(&v.cuts);
    rep.set_verdict(&v, max_degree(&polys));
    if let Some(path) = &a.common.plot {
        let mut s = Svg::new(view(&a.common)?);
        let (xl, yl) = axis_labels(mode);
        s.axes(xl, yl);
        draw_cuts(&mut s, &v.cuts);
        for c in &v.cells {
            let (x, y) = c.sample.to_f64();
            s.dot(x, y, status_color(c.status.name()), c.status.name(), &format!("{} {}", c.sample, c.status.name()));
        }
        status_legend(&mut s);
        write_plot(path, s.finish(&format!("{} vs {}", q.lhs, q.rhs)))?;
    }
    let text = verdict_text(&q, &v);
    emit(out, &if a.common.format == Format::Json { rep.to_json() + "\n" } else { text })?;
    Ok(match v.overall {
        Overall::EqualOnRegion => exit::EQUAL,
        Overall::NotEqual => exit::NOT_EQUAL,
        Overall::Inconclusive => exit::INCONCLUSIVE,
    })
}

fn status_color(s: &str) -> &'static str {
    match s {
        "equal" => "#2a9d3a",
        "nonzero" => "#d62728",
        _ => "#999999",
    }
}

fn status_legend(s: &mut Svg) {
    for st in ["equal", "nonzero", "inconclusive"] {
        s.legend(&format!("dot:{}", status_color(st)), st);
    }
}

const SHOWN: usize = 10;

fn verdict_text(q: &IdentityQuery, v: &Verdict) -> String {
    let mut s = String::new();
    s.push_str(&format!("verdict: {}\n", v.overall.name()));
    s.push_str(&format!("lhs: {}\nrhs: {}\nmode: {}\n", q.lhs, q.rhs, mode_name(q.mode)));
    if let Some(r) = &q.region {
        let clauses: Vec<String> = r.clauses.iter().map(|c| format_clause(c)).collect();
        s.push_str(&format!("region: {}\n", clauses.join("  or  ")));
    }
    if let Some(st) = &v.stats {
        s.push_str(&format!(
            "decomposition: {} cells ({} full-dimensional) over {} x-cells, {} tested\n",
            st.cells,
            st.full_dimensional,
            st.x_cells,
            v.cells.len()
        ));
    }
    s.push_str(&format!("cuts ({}):\n", v.cuts.len()));
    for line in cut_listing(&v.cuts).lines() {
        s.push_str(&format!("  {line}\n"));
    }
    if !v.witnesses.is_empty() {
        s.push_str(&format!("witnesses ({}):\n", v.witnesses.len()));
        for w in v.witnesses.iter().take(SHOWN) {
            let at = if q.mode == Mode::Complex { format!("z = {}", w.point) } else { format!("(x, y) = {}", w.point) };
            s.push_str(&format!("  {at}  difference ~ {}\n", report::approx(&w.enclosure)));
            s.push_str(&format!("    {} ({} bits, rechecked at {})\n", box_text(&w.enclosure, 20), w.enclosure.prec, w.recheck.prec));
        }
        if v.witnesses.len() > SHOWN {
            s.push_str(&format!("  ... {} more\n", v.witnesses.len() - SHOWN));
        }
    }
    let bad = v.inconclusive_cells();
    if !bad.is_empty() {
        s.push_str(&format!("undecided cells ({}):\n", bad.len()));
        for c in bad.iter().take(SHOWN) {
            if let branchwise::verifier::CellStatus::Inconclusive(m) = &c.status {
                s.push_str(&format!("  {}: {m}\n", c.sample));
            }
        }
        if bad.len() > SHOWN {
            s.push_str(&format!("  ... {} more\n", bad.len() - SHOWN));
        }
    }
    if let Some(b) = &v.bottleneck {
        s.push_str(&format!("bottleneck: {b}\n"));
    }
    s.push_str("assumptions:\n");
    for n in &v.assumptions.notes {
        s.push_str(&format!("  {n}\n"));
    }
    let t = &v.timings;
    s.push_str(&format!(
        "time: cuts {:.1} ms, decomposition {:.1} ms, decisions {:.1} ms\n",
        report::ms(t.cuts),
        report::ms(t.decomposition),
        report::ms(t.decisions)
    ));
    s
}

/// `re in [..], im in [..]` with outward-rounded decimals.
fn box_text(b: &branchwise::numeval::ComplexBox, digits: usize) -> String {
    format!(
        "re in [{}, {}], im in [{}, {}]",
        decimal(&b.re.lo.to_rational(), digits, false),
        decimal(&b.re.hi.to_rational(), digits, true),
        decimal(&b.im.lo.to_rational(), digits, false),
        decimal(&b.im.hi.to_rational(), digits, true)
    )
}

fn resolve_expr(expr: &Option<String>, preset: &Option<String>) -> String {
    match (expr, preset) {
        (Some(e), _) => e.clone(),
        (None, Some(p)) => format!("@{p}"),
        (None, None) => unreachable!("clap requires one of --expr and --preset"),
    }
}

fn cmd_cuts(a: &CutsArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mode: Mode = a.common.mode.into();
    let e = parse_expr(&resolve_expr(&a.expr, &a.preset), mode)?;
    let t = Instant::now();
    let cuts = match mode {
        Mode::Complex => expression_cuts(&e),
        Mode::Real => real_discontinuity_locus(&e),
    }
    .map_err(|c| Failure::new(exit::USAGE, c.to_string()))?;
    let mut rep = RunReport::new(
        "cuts",
        QueryRep {
            lhs: None,
            rhs: None,
            expr: Some(e.to_string()),
            polys: None,
            at: None,
            mode: mode_name(mode).into(),
            region: None,
            precision: a.common.precision,
        },
    );
    rep.cuts = cuts.iter().map(report::cut).collect();
    rep.timings = vec![("cuts".into(), report::ms(t.elapsed()))];
    if let Some(path) = &a.common.plot {
        let mut s = Svg::new(view(&a.common)?);
        let (xl, yl) = axis_labels(mode);
        s.axes(xl, yl);
        draw_cuts(&mut s, &cuts);
        write_plot(path, s.finish(&format!("cuts of {e}")))?;
    }
    let text = if a.common.format == Format::Json {
        rep.to_json() + "\n"
    } else if cuts.iter().all(|c| c.set.is_empty()) && cuts.iter().all(|c| c.exactness.name() == "exact") {
        "no cuts\n".to_string()
    } else {
        cut_listing(&cuts)
    };
    emit(out, &text)?;
    Ok(0)
}

fn cmd_cad(a: &CadArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let polys: Vec<BivarPoly> = a
        .polys
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_polynomial)
        .collect::<Result<_, _>>()?;
    let opts = CadOptions { max_cells: a.max_cells, ..CadOptions::default() };
    let t = Instant::now();
    let d = match decompose(&polys, None, &opts) {
        Ok(d) => d,
        Err(e @ (CadError::CellBudget { .. } | CadError::DegreeBudget { .. })) => {
            return Err(Failure::new(exit::CAD_BUDGET, e.to_string()));
        }
    };
    let mut rep = RunReport::new(
        "cad",
        QueryRep {
            lhs: None,
            rhs: None,
            expr: None,
            polys: Some(polys.iter().map(|p| p.to_string()).collect()),
            at: None,
            mode: "real".into(),
            region: None,
            precision: a.common.precision,
        },
    );
    let st = d.stats();
    rep.decomposition = Some(report::StatsRep {
        cells: st.cells,
        x_cells: st.x_cells,
        full_dimensional: st.full_dimensional,
        basis: st.basis,
        projection: st.projection,
        max_stack: st.max_stack,
        max_degree: max_degree(&polys),
    });
    rep.cells = d
        .cells
        .iter()
        .map(|c| report::CellRep {
            index: [c.index.0, c.index.1],
            dim: c.dim,
            sample: report::point(&c.sample),
            status: c.signs.iter().map(|s| ["-", "0", "+"][(s + 1) as usize]).collect::<Vec<_>>().join(""),
            reason: None,
            enclosure: None,
        })
        .collect();
    rep.timings = vec![("decomposition".into(), report::ms(t.elapsed()))];
    if let Some(path) = &a.common.plot {
        let mut s = Svg::new(view(&a.common)?);
        s.axes("x", "y");
        for xc in d.x_cells.iter().filter(|c| c.dim == 0) {
            s.vline(xc.sample.to_f64(), "#bbbbbb");
        }
        for p in &polys {
            s.zero_set(p, CUT_COLOR);
        }
        for c in &d.cells {
            let (x, y) = c.sample.to_f64();
            s.dot(x, y, "#000000", "sample", &format!("cell {:?} dim {} at {}", c.index, c.dim, c.sample));
        }
        s.legend(&format!("line:{CUT_COLOR}"), "zero set");
        s.legend("dot:#000000", "sample point");
        write_plot(path, s.finish("cylindrical decomposition"))?;
    }
    let text = if a.common.format == Format::Json {
        rep.to_json() + "\n"
    } else {
        let mut s = format!("cells: {} ({} full-dimensional) over {} x-cells\n", st.cells, st.full_dimensional, st.x_cells);
        for c in &d.cells {
            let signs: String = c.signs.iter().map(|s| ["-", "0", "+"][(s + 1) as usize]).collect();
            s.push_str(&format!("  {:?} dim {} sample {} signs [{}]\n", c.index, c.dim, c.sample, signs));
        }
        s
    };
    emit(out, &text)?;
    Ok(0)
}

/// Reads `a+b*I` with rational parts.
fn parse_point(text: &str) -> Result<Point, Failure> {
    let e = parse(text, Mode::Complex)?;
    if !e.variables().is_empty() {
        return Err(Failure::new(exit::PARSE, format!("`{text}` must be a constant")));
    }
    let g = eval_exact(&e, &Gaussian::real(Default::default()))
        .ok_or_else(|| Failure::new(exit::PARSE, format!("`{text}` is not a rational point")))?;
    Ok(Point::rational(g.re, g.im))
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mode: Mode = a.common.mode.into();
    let e = parse_expr(&resolve_expr(&a.expr, &a.preset), mode)?;
    let at = parse_point(&a.at)?;
    let mut rep = RunReport::new(
        "eval",
        QueryRep {
            lhs: None,
            rhs: None,
            expr: Some(e.to_string()),
            polys: None,
            at: Some(a.at.clone()),
            mode: mode_name(mode).into(),
            region: None,
            precision: a.common.precision,
        },
    );
    let t = Instant::now();
    let b = match eval(&e, &at, a.common.precision) {
        Ok(b) => b,
        Err(EvalError::Budget(m)) => {
            rep.error = Some(m.clone());
            if a.common.format == Format::Json {
                emit(out, &(rep.to_json() + "\n"))?;
            } else {
                emit(out, &format!("inconclusive: {m}\n"))?;
            }
            return Ok(exit::INCONCLUSIVE);
        }
        Err(d) => return Err(Failure::new(exit::DOMAIN, format!("{d} at {at}"))),
    };
    rep.timings = vec![("eval".into(), report::ms(t.elapsed()))];
    rep.value = Some(report::enclosure(&b));
    let digits = (a.common.precision as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
    let text = if a.common.format == Format::Json {
        rep.to_json() + "\n"
    } else {
        format!(
            "{e} at {at}\n  {}\n  ~ {}\n",
            box_text(&b, digits),
            report::approx(&b)
        )
    };
    emit(out, &text)?;
    Ok(0)
}

/// Decimal rendering with `digits` significant digits, rounded down or up
/// so that a printed interval still contains the exact one.
pub fn decimal(r: &branchwise::realalg::Rational, digits: usize, up: bool) -> String {
    use num_traits::{Signed, Zero};
    if r.is_zero() {
        return "0".into();
    }
    let ten = branchwise::realalg::Rational::from_integer(10.into());
    let mut e: i64 = 0;
    let mut m = r.abs();
    while m >= ten {
        m /= &ten;
        e += 1;
    }
    while m < branchwise::realalg::Rational::from_integer(1.into()) {
        m *= &ten;
        e -= 1;
    }
    let scale = num_bigint::BigInt::from(10).pow(digits as u32 - 1);
    let scaled = &m * branchwise::realalg::Rational::from_integer(scale.clone());
    // round the magnitude toward the requested side of the signed value
    let toward_up = up != r.is_negative();
    let mut k = if toward_up { scaled.ceil().to_integer() } else { scaled.floor().to_integer() };
    if k >= &scale * 10 {
        k /= 10;
        e += 1;
    }
    let s = k.to_string();
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{}.{}e{e}", &s[..1], &s[1..])
}
