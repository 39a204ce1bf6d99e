use branchwise::expr::Mode;
use branchwise::numeval::eval;
use branchwise::realalg::{sign_at, BivarPoly};
use branchwise::verifier::{
    find_counterexample, verify, verify_on_grid, CellStatus, GridSpec, IdentityQuery, Overall, Verdict,
};
use proptest::prelude::*;
use std::sync::OnceLock;

const KAHAN_G: &str = "2*arccosh(1 + 2*z/3) - arccosh((5*z+12)/(3*(z+4)))";
const KAHAN_Q: &str = "2*arccosh(2*(z+3)*sqrt((z+3)/(27*(z+4))))";
const KAHAN_H: &str = "2*log(sqrt(3*z+12)*(sqrt(z+3)+sqrt(z))^2/(3*(2*sqrt(z+3)+sqrt(z))))";
const F2F: &str = "(z+1/z)/2 + sqrt((z+1/z)/2 - 1)*sqrt((z+1/z)/2 + 1)";
const ARCTAN_L: &str = "arctan(x)+arctan(y)";
const ARCTAN_R: &str = "arctan((x+y)/(1-x*y))";

fn query(lhs: &str, rhs: &str, mode: Mode, region: Option<&str>) -> IdentityQuery {
    IdentityQuery::parse(lhs, rhs, mode, region).unwrap()
}

fn in_teardrop(x: f64, y: f64) -> bool {
    (-4.5..=-3.0).contains(&x) && y * y <= -(x + 3.0).powi(2) * (2.0 * x + 9.0) / (2.0 * x + 5.0) + 1e-9
}

fn kahan_gq() -> &'static (IdentityQuery, Verdict) {
    static V: OnceLock<(IdentityQuery, Verdict)> = OnceLock::new();
    V.get_or_init(|| {
        let q = query(KAHAN_G, KAHAN_Q, Mode::Complex, None);
        let v = verify(&q).unwrap();
        (q, v)
    })
}

#[test]
fn tested_cells_respect_the_region() {
    for (lhs, rhs, region) in [
        (F2F, "z", "x^2+y^2 > 1"),
        ("log(z^2)", "2*log(z)", "x > 0, y < 1"),
        ("sqrt(z^2)", "z", "y >= x^2 - 1 or x > 2"),
    ] {
        let q = query(lhs, rhs, Mode::Complex, Some(region));
        let v = verify(&q).unwrap();
        let set = q.region.as_ref().unwrap();
        assert!(!v.cells.is_empty());
        for c in &v.cells {
            assert!(set.holds_with(|p| sign_at(p, &c.sample.x, &c.sample.y)), "{region}: {}", c.sample);
        }
    }
}

#[test]
fn witnesses_recheck_independently() {
    let others = [(ARCTAN_L, ARCTAN_R, Mode::Real), ("sqrt(z^2)", "z", Mode::Complex)]
        .map(|(lhs, rhs, mode)| {
            let q = query(lhs, rhs, mode, None);
            let v = verify(&q).unwrap();
            (q, v)
        });
    for (q, v) in std::iter::once(kahan_gq()).chain(others.iter()) {
        assert_eq!(v.overall, Overall::NotEqual);
        let lhs = &q.lhs;
        let diff = q.difference();
        for w in &v.witnesses {
            assert!(!w.enclosure.contains_zero());
            let b = eval(&diff, &w.point, 4 * q.options.precision).unwrap();
            assert!(!b.contains_zero(), "{lhs} at {}", w.point);
            assert!(b.overlaps(&w.enclosure));
        }
    }
}

#[test]
fn kahan_witnesses_lie_in_the_teardrop() {
    let (_, v) = kahan_gq();
    for w in &v.witnesses {
        let (x, y) = w.point.to_f64();
        assert!(in_teardrop(x, y), "({x}, {y})");
    }
    // equality is discovered on the real axis right of the teardrop
    let axis: Vec<_> = v.cells.iter().filter(|c| c.sample.y.to_f64() == 0.0 && c.sample.x.to_f64() > -3.0).collect();
    assert!(!axis.is_empty());
    assert!(axis.iter().all(|c| c.status == CellStatus::Equal));
    assert!(find_counterexample(&query(KAHAN_G, KAHAN_H, Mode::Complex, None)).unwrap().is_none());
}

#[test]
fn grid_nonzero_nodes_sit_in_the_teardrop() {
    let spec: GridSpec = "33x25@[-6,2]x[-3,3]".parse().unwrap();
    let r = verify_on_grid(&query(KAHAN_G, KAHAN_Q, Mode::Complex, None), &spec).unwrap();
    assert!(r.nonzero > 0);
    for n in r.nodes.iter().filter(|n| n.status == CellStatus::Nonzero) {
        let (x, y) = n.point.to_f64();
        assert!(in_teardrop(x, y), "({x}, {y})");
    }
    let h = verify_on_grid(&query(KAHAN_G, KAHAN_H, Mode::Complex, None), &spec).unwrap();
    assert_eq!(h.nonzero, 0);
}

fn line_strategy() -> impl Strategy<Value = BivarPoly> {
    (-3i64..=3, -3i64..=3, -4i64..=4)
        .prop_filter("a line", |(a, b, _)| *a != 0 || *b != 0)
        .prop_map(|(a, b, c)| BivarPoly::from_terms(&[(1, 0, a), (0, 1, b), (0, 0, c)]))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    /// Redundant polynomials refine the decomposition but keep the verdict.
    #[test]
    fn verdicts_are_stable_under_refinement(extra in prop::collection::vec(line_strategy(), 1..=2)) {
        for (lhs, rhs, mode, region) in [
            (ARCTAN_L, ARCTAN_R, Mode::Real, None),
            (F2F, "z", Mode::Complex, Some("x^2+y^2 > 1")),
        ] {
            let mut q = query(lhs, rhs, mode, region);
            let base = verify(&q).unwrap();
            q.options.extra_polys = extra.clone();
            let fine = verify(&q).unwrap();
            prop_assert_eq!(base.overall, fine.overall);
            prop_assert!(fine.cells.len() >= base.cells.len());
        }
    }
}
