use branchwise::branchcut::{expression_cuts, Exactness};
use branchwise::cad::Rel;
use branchwise::expr::{parse, Expr, Func, Mode};
use branchwise::numeval::{eval, Point};
use branchwise::realalg::{ratio, roots_over, Rational, RealCoord};
use rand::{rngs::StdRng, Rng, SeedableRng};

const KAHAN_Q: &str = "2*arccosh(2*(z+3)*sqrt((z+3)/(27*(z+4))))";
const KAHAN_G: &str = "2*arccosh(1 + 2*z/3) - arccosh((5*z+12)/(3*(z+4)))";
const F2F: &str = "(z+1/z)/2 + sqrt((z+1/z)/2 - 1)*sqrt((z+1/z)/2 + 1)";

fn value(e: &Expr, x: f64, y: f64) -> Option<(f64, f64)> {
    let p = Point::rational(Rational::from_float(x)?, Rational::from_float(y)?);
    eval(e, &p, 64).ok().map(|b| b.to_f64())
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Largest change over 8 neighbours at distance `h`.
fn spread(e: &Expr, x: f64, y: f64, h: f64) -> Option<f64> {
    let c = value(e, x, y)?;
    let mut m: f64 = 0.0;
    for k in 0..8 {
        let t = k as f64 * std::f64::consts::FRAC_PI_4;
        m = m.max(dist(value(e, x + h * t.cos(), y + h * t.sin())?, c));
    }
    Some(m)
}

/// Off every potential cut, values at distance 1e-6 stay within ten
/// times the change predicted by a slope measured at distance 1e-4.
#[test]
fn no_jumps_off_the_cuts() {
    let mut rng = StdRng::seed_from_u64(7);
    for src in [KAHAN_Q, KAHAN_G, F2F, "log(z^2 - 1)", "sqrt(1/z + z)", "arctan(z)", "arccosh(z^2)"] {
        let e = parse(src, Mode::Complex).unwrap();
        let cuts = expression_cuts(&e).unwrap();
        assert!(cuts.iter().all(|c| c.exactness == Exactness::Exact), "{src}");
        let mut tested = 0;
        while tested < 200 {
            let x = ratio(rng.gen_range(-6000..6000), 997);
            let y = ratio(rng.gen_range(-3000..3000), 991);
            let (xr, yr) = (RealCoord::Rational(x.clone()), RealCoord::Rational(y.clone()));
            if cuts.iter().any(|c| c.set.contains(&xr, &yr)) {
                continue;
            }
            let (xf, yf) = (xr.to_f64(), yr.to_f64());
            let (Some(near), Some(far)) = (spread(&e, xf, yf, 1e-6), spread(&e, xf, yf, 1e-4)) else {
                continue;
            };
            let slope = far / 1e-4;
            assert!(near <= 10.0 * slope * 1e-6 + 1e-9, "{src}: jump {near} at ({xf}, {yf})");
            tested += 1;
        }
    }
}

/// Points on an equality clause map into the function's own cut.
#[test]
fn equality_clauses_map_into_defining_cuts() {
    let mut rng = StdRng::seed_from_u64(11);
    for src in [KAHAN_Q, KAHAN_G, "log(z^2 - 1)", "sqrt(1/z + z)", "arccosh(z^2)", "arctan(z^2 + z)"] {
        let e = parse(src, Mode::Complex).unwrap();
        let nodes = e.non_analytic_nodes();
        let mut hits = 0;
        for cut in expression_cuts(&e).unwrap() {
            let branchwise::branchcut::CutSource::Function(f) = cut.provenance.source else { continue };
            let arg = nodes.iter().find(|(g, a)| *g == f && *a == cut.provenance.arg).unwrap().1.clone();
            for clause in &cut.set.clauses {
                let Some(eq) = clause.iter().find(|a| a.rel == Rel::Eq && a.poly.deg_y() >= 1) else { continue };
                for _ in 0..20 {
                    let x = RealCoord::Rational(ratio(rng.gen_range(-1200..1200), 199));
                    for y in roots_over(&eq.poly, &x) {
                        let pt = Point::new(x.clone(), y.clone());
                        if !clause.iter().all(|a| a.rel.holds(branchwise::realalg::sign_at(&a.poly, &x, &y))) {
                            continue;
                        }
                        let Ok(w) = eval(&arg, &pt, 96) else { continue };
                        let (re, im) = w.to_f64();
                        match f {
                            Func::Arctan => assert!(re.abs() < 1e-20 && im.abs() >= 1.0 - 1e-20, "{src} {pt}"),
                            Func::Arccosh => assert!(im.abs() < 1e-20 && re < 1.0 + 1e-20, "{src} {pt}"),
                            _ => assert!(im.abs() < 1e-20 && re < 1e-20, "{src} {pt}"),
                        }
                        hits += 1;
                    }
                }
            }
        }
        assert!(hits > 0, "{src}: no points on the cut curves");
    }
}
