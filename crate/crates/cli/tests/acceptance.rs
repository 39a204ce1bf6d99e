//! Acceptance suite. Each criterion prints one PASS or FAIL line; the
//! process fails if any criterion does.

use std::process::Command;
use std::time::{Duration, Instant};

use branchwise::branchcut::{cut_polys, expression_cuts};
use branchwise::cad::{decompose, parse_polynomial, CadOptions, Cell, CellDecomposition};
use branchwise::expr::{parse, Mode};
use branchwise::numeval::elementary::pi;
use branchwise::numeval::{eval, ComplexBox, EvalError, Point};
use branchwise::realalg::{ratio, BivarPoly, Rational, RealCoord};
use branchwise_cli::presets;
use branchwise_cli::report::{BoxRep, Number, PointRep, RunReport};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

/// Name, check and time limit.
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn cli(args: &[&str]) -> (i32, RunReport) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = Command::new(env!("CARGO_BIN_EXE_branchwise")).args(&a).output().expect("binary runs");
    let out = String::from_utf8_lossy(&o.stdout);
    let rep = serde_json::from_str(&out)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{out}\n{}", String::from_utf8_lossy(&o.stderr)));
    (o.status.code().unwrap_or(-1), rep)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(s: &str) -> BigRational {
    s.parse().unwrap()
}

/// Exact rational coordinates of a reported point, if it has them.
fn rational_point(p: &PointRep) -> Option<(BigRational, BigRational)> {
    match (&p.x, &p.y) {
        (Number::Rational(x), Number::Rational(y)) => Some((q(x), q(y))),
        _ => None,
    }
}

/// Bounds on a reported coordinate.
fn bounds(n: &Number) -> (BigRational, BigRational) {
    match n {
        Number::Rational(r) => (q(r), q(r)),
        Number::Algebraic { interval, .. } => (q(&interval[0]), q(&interval[1])),
    }
}

fn excludes_zero(b: &BoxRep) -> bool {
    let pos = |i: &[String; 2]| q(&i[0]).is_positive() || q(&i[1]).is_negative();
    pos(&b.re) || pos(&b.im)
}

fn proportional(a: &BivarPoly, b: &BivarPoly) -> Option<Rational> {
    let (ta, ca) = a.leading_term()?;
    let (tb, cb) = b.leading_term()?;
    if ta != tb {
        return None;
    }
    let c = &ca / &cb;
    (*a == b.scale(&c)).then_some(c)
}

fn poly(s: &str) -> BivarPoly {
    parse_polynomial(s).unwrap()
}

fn in_teardrop(x: &BigRational, y: &BigRational) -> bool {
    let r = |n: i64| BigRational::from_integer(n.into());
    let bound = -(x + r(3)) * (x + r(3)) * (r(2) * x + r(9)) / (r(2) * x + r(5));
    *x >= r(-9) / r(2) && *x <= r(-3) && y * y <= bound
}

fn c1_teardrop_cut() -> Outcome {
    let (code, rep) = cli(&["cuts", "--preset", "kahan-q"]);
    ensure(code == 0, || format!("exit {code}"))?;
    let eq = poly("2*y*(2*y^2*x + 2*x^3 + 5*y^2 + 21*x^2 + 72*x + 81)");
    let i1 = poly("4*(y^4 - x^4 + 3*y^2*x - 13*x^3 + 9*y^2 - 63*x^2 - 135*x - 108)");
    let i2 = poly("4*x^4 - 4*y^4 - 12*y^2*x + 52*x^3 - 63*y^2 + 225*x^2 + 324*x");
    // p rel 0 matches target < 0 when p = c * target with the relation flipped for c < 0
    let matches = |rel: &str, p: &BivarPoly, target: &BivarPoly| {
        proportional(p, target).is_some_and(|c| rel == if c.is_positive() { "<" } else { ">" })
    };
    let clauses: Vec<_> = rep.cuts.iter().flat_map(|c| c.clauses.iter().zip(c.display.iter())).collect();
    for (cl, shown) in &clauses {
        let atoms: Vec<(String, BivarPoly)> = cl.iter().map(|a| (a.rel.clone(), poly(&a.poly))).collect();
        let has_eq = atoms.iter().any(|(r, p)| r == "=" && proportional(p, &eq).is_some());
        let has_i1 = atoms.iter().any(|(r, p)| matches(r, p, &i1));
        let has_i2 = atoms.iter().any(|(r, p)| matches(r, p, &i2));
        if has_eq && has_i1 && has_i2 {
            return Ok(format!("{} clauses; found {shown}", clauses.len()));
        }
    }
    Err(format!("no clause matches among {} clauses", clauses.len()))
}

fn c2_kahan_not_equal() -> Outcome {
    let (code, rep) = cli(&["verify", "--lhs", "@kahan-g", "--rhs", "@kahan-q", "--precision", "128"]);
    let v = rep.verdict.as_ref().ok_or("no verdict")?;
    ensure(code == 1 && v.overall == "not-equal", || format!("exit {code}, verdict {}", v.overall))?;
    let w = v.witnesses.first().ok_or("no witness")?;
    let (x, y) = rational_point(&w.point).ok_or("first witness is not rational")?;
    ensure(in_teardrop(&x, &y), || format!("witness ({x}, {y}) is outside the teardrop"))?;
    ensure(w.enclosure.prec == 128 && excludes_zero(&w.enclosure), || "enclosure contains 0 at 128 bits".into())?;
    let outside = v
        .witnesses
        .iter()
        .filter(|w| {
            let (xl, xh) = bounds(&w.point.x);
            let (yl, yh) = bounds(&w.point.y);
            let (x, y) = ((xl + xh) / BigRational::from_integer(2.into()), (yl + yh) / BigRational::from_integer(2.into()));
            !in_teardrop(&x, &y)
        })
        .count();
    ensure(outside == 0, || format!("{outside} witnesses outside the teardrop"))?;
    let minus3 = BigRational::from_integer((-3).into());
    let axis: Vec<_> = v
        .cells
        .iter()
        .filter(|c| c.sample.y == Number::Rational("0".into()) && bounds(&c.sample.x).0 > minus3)
        .collect();
    ensure(!axis.is_empty(), || "no real-axis cells with x > -3".into())?;
    let unequal = axis.iter().filter(|c| c.status != "equal").count();
    ensure(unequal == 0, || format!("{unequal} of {} real-axis cells with x > -3 are not equal", axis.len()))?;
    Ok(format!(
        "{} witnesses, first ({x}, {y}) with difference {}; {} real-axis cells with x > -3 equal",
        v.witnesses.len(),
        w.enclosure.approx,
        axis.len()
    ))
}

fn c3_kahan_h_grid() -> Outcome {
    let (code, rep) = cli(&["verify", "--lhs", "@kahan-g", "--rhs", "@kahan-h", "--grid", "61x61@[-6,2]x[-3,3]"]);
    let g = rep.grid.ok_or("no grid report")?;
    ensure(g.nonzero == 0, || format!("{} nonzero nodes", g.nonzero))?;
    ensure(code == 2, || format!("exit {code}"))?;
    let (code, rep) = cli(&["verify", "--lhs", "@kahan-g", "--rhs", "@kahan-h"]);
    let exact = rep.verdict.map(|v| v.overall).unwrap_or_default();
    ensure(code != 1, || "exact mode reports not-equal".into())?;
    Ok(format!(
        "grid: {} equal, 0 nonzero, {} inconclusive, {} skipped; exact mode: {exact}",
        g.equal, g.inconclusive, g.skipped
    ))
}

fn c4_joukowski() -> Outcome {
    let mut parts = Vec::new();
    let mut failed = false;
    for (inv, region) in [("joukowski-f2", "x^2+y^2 > 1"), ("joukowski-f4", "y > 0")] {
        let lhs = format!("@{inv}(@joukowski-f)");
        let (code, rep) = cli(&["verify", "--lhs", &lhs, "--rhs", "z", "--region", region]);
        let v = rep.verdict.ok_or("no verdict")?;
        let mut s = format!("{inv} on {region}: {}", v.overall);
        if let Some(w) = v.witnesses.first() {
            s.push_str(&format!(" (witness ({}, {}), difference {})", w.point.decimal[0], w.point.decimal[1], w.enclosure.approx));
        }
        failed |= code != 0;
        parts.push(s);
    }
    let msg = parts.join("; ");
    if failed {
        Err(msg)
    } else {
        Ok(msg)
    }
}

fn c5_arctan() -> Outcome {
    let (code, rep) = cli(&["verify", "--mode", "real", "--lhs", "arctan(x)+arctan(y)", "--rhs", "arctan((x+y)/(1-x*y))"]);
    let v = rep.verdict.ok_or("no verdict")?;
    ensure(code == 1 && v.overall == "not-equal", || format!("exit {code}, verdict {}", v.overall))?;
    let tol = 1e-10;
    let w = v
        .witnesses
        .iter()
        .find(|w| rational_point(&w.point).is_some_and(|(x, y)| x * y > BigRational::from_integer(1.into())))
        .ok_or("no witness with xy > 1")?;
    let (x, y) = rational_point(&w.point).unwrap();
    let (xf, yf) = (x.to_f64().unwrap(), y.to_f64().unwrap());
    // brute-force oracle for the defect
    let oracle = xf.atan() + yf.atan() - ((xf + yf) / (1.0 - xf * yf)).atan();
    let pi = std::f64::consts::PI;
    ensure((oracle.abs() - pi).abs() < 1e-12, || format!("oracle defect {oracle} at ({x}, {y})"))?;
    let near = |c: f64, i: &[String; 2]| q(&i[0]).to_f64().unwrap() - tol <= c && c <= q(&i[1]).to_f64().unwrap() + tol;
    let target = pi.copysign(oracle);
    ensure(near(target, &w.enclosure.re) && near(0.0, &w.enclosure.im), || {
        format!("enclosure {:?} misses {target}", w.enclosure.re)
    })?;
    Ok(format!("witness ({x}, {y}), difference {} (oracle {oracle:.12})", w.enclosure.approx))
}

/// Rational bounds strictly inside `(lo, hi)`, with a finite stand-in for an
/// infinite end.
fn inner_bounds(lo: Option<&RealCoord>, hi: Option<&RealCoord>, anchor: &Rational) -> (Rational, Rational) {
    let mut bits = 16;
    loop {
        let a = lo.map(|l| l.enclosure(bits).1).unwrap_or_else(|| anchor - Rational::from_integer(4.into()));
        let b = hi.map(|h| h.enclosure(bits).0).unwrap_or_else(|| anchor + Rational::from_integer(4.into()));
        if a < b {
            return (a, b);
        }
        bits *= 2;
    }
}

fn inside(a: &Rational, b: &Rational, rng: &mut StdRng) -> Rational {
    a + (b - a) * ratio(rng.gen_range(1..64), 64)
}

/// A rational point inside a full-dimensional cell, and whether it lies
/// strictly between the cell's bounds.
fn probe(d: &CellDecomposition, cell: &Cell, rng: &mut StdRng) -> (Rational, Rational, bool) {
    let xc = &d.x_cells[cell.index.0];
    let x0 = xc.sample.rational().expect("sector sample is rational").clone();
    let (a, b) = inner_bounds(xc.lo.as_ref(), xc.hi.as_ref(), &x0);
    let x = inside(&a, &b, rng);
    let (ylo, yhi) = d.y_bounds_at(cell, &x);
    let anchor = ylo.as_ref().or(yhi.as_ref()).map(|c| c.enclosure(8).0).unwrap_or_default();
    let (c, e) = inner_bounds(ylo.as_ref(), yhi.as_ref(), &anchor);
    let y = inside(&c, &e, rng);
    let yr = RealCoord::Rational(y.clone());
    let between = ylo.is_none_or(|l| l.cmp_coord(&yr).is_lt()) && yhi.is_none_or(|h| yr.cmp_coord(&h).is_lt());
    (x.clone(), y, xc.contains(&x) && between)
}

fn random_poly(rng: &mut StdRng) -> BivarPoly {
    loop {
        let n = rng.gen_range(1..=5);
        let terms: Vec<(usize, usize, i64)> = (0..n)
            .map(|_| {
                let i = rng.gen_range(0..=4);
                (i, rng.gen_range(0..=4 - i), rng.gen_range(-3..=3))
            })
            .collect();
        let p = BivarPoly::from_terms(&terms);
        if !p.is_constant() {
            return p;
        }
    }
}

fn c6_cad_suite() -> Outcome {
    for (polys, want) in [("x^2+y^2-1", 13), ("y;x", 9), ("", 1)] {
        let (code, rep) = cli(&["cad", "--polys", polys]);
        let got = rep.decomposition.map(|d| d.cells).unwrap_or(0);
        ensure(code == 0 && got == want, || format!("`{polys}`: {got} cells, expected {want}"))?;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut probes, mut violations, mut cells) = (0usize, Vec::new(), 0usize);
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let polys: Vec<BivarPoly> = (0..n).map(|_| random_poly(&mut rng)).collect();
        let d = decompose(&polys, None, &CadOptions::default()).map_err(|e| format!("{e}"))?;
        cells += d.cells.len();
        for cell in d.cells.iter().filter(|c| c.dim == 2) {
            for _ in 0..20 {
                let (x, y, inside) = probe(&d, cell, &mut rng);
                probes += 1;
                let signs: Vec<i8> = polys.iter().map(|p| p.sign_at_rational(&x, &y)).collect();
                if signs != cell.signs || !inside {
                    violations.push(format!("({x}, {y}) in cell {:?}", cell.index));
                }
            }
        }
    }
    ensure(violations.is_empty(), || format!("{} violations, first {}", violations.len(), violations[0]))?;
    Ok(format!("circle 13, {{x, y}} 9, empty 1; 50 random sets, {cells} cells, {probes} probes, 0 violations"))
}

fn c7_kahan_cad() -> Outcome {
    let mut cuts = Vec::new();
    for name in ["kahan-g", "kahan-q", "kahan-h"] {
        let e = parse(presets::find(name).unwrap().text, Mode::Complex).map_err(|e| e.to_string())?;
        cuts.extend(expression_cuts(&e).map_err(|e| e.to_string())?);
    }
    let polys = cut_polys(&cuts);
    let d = decompose(&polys, None, &CadOptions::default()).map_err(|e| format!("decomposition failed: {e}"))?;
    let st = d.stats();
    ensure((50..=5000).contains(&st.cells), || format!("{} cells", st.cells))?;
    let degree = polys.iter().map(|p| p.total_degree()).max().unwrap_or(0);
    Ok(format!("{} polynomials (max degree {degree}), {} cells over {} x-cells", polys.len(), st.cells, st.x_cells))
}

const P: u32 = 128;

fn zbox(x: &Rational, y: &Rational) -> ComplexBox {
    ComplexBox::from_rationals(x, y, P)
}

fn random_rational(rng: &mut StdRng) -> Rational {
    ratio(rng.gen_range(-40..=40), rng.gen_range(1..=8))
}

fn random_point(rng: &mut StdRng) -> (Rational, Rational) {
    let x = random_rational(rng);
    let y = if rng.gen_bool(0.25) { Rational::zero() } else { random_rational(rng) };
    (x, y)
}

fn random_expr(rng: &mut StdRng, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..5) {
            0 => format!("({}/{})", rng.gen_range(-5..=5), rng.gen_range(1..=4)),
            1 => "I".into(),
            _ => "z".into(),
        };
    }
    if rng.gen_bool(0.5) {
        let f = ["sqrt", "log", "exp", "arctan", "arccosh"][rng.gen_range(0..5)];
        format!("{f}({})", random_expr(rng, depth - 1))
    } else {
        let op = ["+", "-", "*", "/"][rng.gen_range(0..4)];
        format!("({} {op} {})", random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    }
}

fn c8_evaluator() -> Outcome {
    let mut failures = Vec::new();
    let tiny = 2f64.powi(-100);
    let pi_f = std::f64::consts::PI;
    for (text, re, im) in [("log(1)", 0.0, 0.0), ("sqrt(4)", 2.0, 0.0), ("log(-1)", 0.0, pi_f), ("sqrt(-4)", 0.0, 2.0)] {
        let e = parse(text, Mode::Complex).unwrap();
        let b = eval(&e, &Point::rational(Rational::zero(), Rational::zero()), P).map_err(|e| e.to_string())?;
        let (rl, rh) = b.re.to_f64_pair();
        let (il, ih) = b.im.to_f64_pair();
        let ok = rl <= re && re <= rh && il <= im && im <= ih && rh - rl < tiny && ih - il < tiny;
        let pi_ok = im != pi_f || b.im.intersect(&pi(P)).is_some();
        if !ok || !pi_ok {
            failures.push(format!("{text}: {:?}", b.to_f64()));
        }
    }

    let mut rng = StdRng::seed_from_u64(8);
    let (mut nested, mut skipped) = (0, 0);
    while nested + skipped < 1000 {
        let text = random_expr(&mut rng, 3);
        let (x, y) = random_point(&mut rng);
        let e = parse(&text, Mode::Complex).unwrap();
        let p = Point::rational(x, y);
        match (eval(&e, &p, 64), eval(&e, &p, 128)) {
            (Ok(a), Ok(b)) => {
                nested += 1;
                if !a.inflate_ulps(1).contains(&b) {
                    failures.push(format!("nesting: {text} at {p}"));
                }
            }
            (Err(EvalError::Budget(_)), _) | (_, Err(EvalError::Budget(_))) | (Err(_), Err(_)) => skipped += 1,
            _ => failures.push(format!("domain disagreement: {text} at {p}")),
        }
    }

    let (mut exp_log, mut sqr, mut cosh_arccosh) = (0, 0, 0);
    for _ in 0..500 {
        let (x, y) = random_point(&mut rng);
        let z = zbox(&x, &y);
        if !z.contains_zero() {
            exp_log += 1;
            if !z.log().map(|l| l.exp().contains(&z)).unwrap_or(false) {
                failures.push(format!("exp(log z) at ({x}, {y})"));
            }
        }
        sqr += 1;
        if !z.sqrt().map(|s| s.mul(&s).contains(&z)).unwrap_or(false) {
            failures.push(format!("sqrt(z)^2 at ({x}, {y})"));
        }
        cosh_arccosh += 1;
        match z.arccosh() {
            Ok(w) if w.exp().add(&w.neg().exp()).scale_pow2(-1).contains(&z) => {}
            _ => failures.push(format!("cosh(arccosh z) at ({x}, {y})")),
        }
    }
    ensure(failures.is_empty(), || format!("{} failures, first {}", failures.len(), failures[0]))?;
    Ok(format!(
        "4 golden values; {nested} nested pairs ({skipped} undefined at the point); {exp_log} exp∘log, {sqr} sqrt², {cosh_arccosh} cosh∘arccosh; 0 failures"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 teardrop cut recovery", c1_teardrop_cut, Duration::from_secs(30)),
        ("2 Kahan g vs q not equal", c2_kahan_not_equal, Duration::from_secs(300)),
        ("3 Kahan g vs h grid evidence", c3_kahan_h_grid, Duration::from_secs(120)),
        ("4 Joukowski inverses", c4_joukowski, Duration::from_secs(600)),
        ("5 arctan addition", c5_arctan, Duration::from_secs(10)),
        ("6 CAD suite", c6_cad_suite, Duration::from_secs(60)),
        ("7 Kahan CAD scale", c7_kahan_cad, Duration::from_secs(600)),
        ("8 evaluator suite", c8_evaluator, Duration::from_secs(600)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run, limit) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = t.elapsed();
        let outcome = match outcome {
            Ok(_) if took > limit => Err(format!("took {:.1} s, limit {} s", took.as_secs_f64(), limit.as_secs())),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS [{name}] {:.1} s: {detail}", took.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{name}] {:.1} s: {detail}", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
