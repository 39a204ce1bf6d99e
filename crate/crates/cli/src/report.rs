//! Machine-readable run reports. Exact numbers are strings `"p/q"`;
//! algebraic coordinates carry their defining polynomial and an isolating
//! interval.

use serde::{Deserialize, Serialize};

use branchwise::branchcut::CutSet;
use branchwise::numeval::{ComplexBox, Dyadic, Interval, Point};
use branchwise::realalg::{Rational, RealCoord};
use branchwise::verifier::{CellRecord, CellStatus, GridReport, Verdict, Witness};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Rational(String),
    Algebraic { poly: String, interval: [String; 2] },
}

pub fn rational(r: &Rational) -> String {
    r.to_string()
}

pub fn number(c: &RealCoord) -> Number {
    match c {
        RealCoord::Rational(r) => Number::Rational(rational(r)),
        RealCoord::Algebraic(a) => {
            a.refine_bits(64);
            let (lo, hi) = a.interval();
            Number::Algebraic { poly: a.poly().fmt_var("t"), interval: [rational(&lo), rational(&hi)] }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointRep {
    pub x: Number,
    pub y: Number,
    pub decimal: [String; 2],
}

pub fn point(p: &Point) -> PointRep {
    PointRep { x: number(&p.x), y: number(&p.y), decimal: [p.x.display(), p.y.display()] }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxRep {
    pub re: [String; 2],
    pub im: [String; 2],
    pub prec: u32,
    /// Midpoint rendered as a decimal complex number.
    pub approx: String,
}

fn dyadic(d: &Dyadic) -> String {
    rational(&d.to_rational())
}

fn interval(i: &Interval) -> [String; 2] {
    [dyadic(&i.lo), dyadic(&i.hi)]
}

pub fn approx(b: &ComplexBox) -> String {
    let (re, im) = b.to_f64();
    if im == 0.0 {
        format!("{re:.15e}")
    } else {
        format!("{re:.15e} {} {:.15e}i", if im < 0.0 { '-' } else { '+' }, im.abs())
    }
}

pub fn enclosure(b: &ComplexBox) -> BoxRep {
    BoxRep { re: interval(&b.re), im: interval(&b.im), prec: b.prec, approx: approx(b) }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomRep {
    pub poly: String,
    pub rel: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutRep {
    pub source: String,
    pub exactness: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub clauses: Vec<Vec<AtomRep>>,
    pub display: Vec<String>,
}

pub fn cut(c: &CutSet) -> CutRep {
    CutRep {
        source: c.provenance.to_string(),
        exactness: c.exactness.name().into(),
        note: c.note.clone(),
        clauses: c
            .set
            .clauses
            .iter()
            .map(|cl| cl.iter().map(|a| AtomRep { poly: a.poly.to_string(), rel: a.rel.symbol().into() }).collect())
            .collect(),
        display: c.set.clauses.iter().map(|cl| branchwise::branchcut::format_clause(cl)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellRep {
    pub index: [usize; 2],
    pub dim: u8,
    pub sample: PointRep,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub enclosure: Option<BoxRep>,
}

fn reason(s: &CellStatus) -> Option<String> {
    match s {
        CellStatus::Inconclusive(m) => Some(m.clone()),
        _ => None,
    }
}

pub fn cell(c: &CellRecord) -> CellRep {
    CellRep {
        index: [c.index.0, c.index.1],
        dim: c.dim,
        sample: point(&c.sample),
        status: c.status.name().into(),
        reason: reason(&c.status),
        enclosure: c.enclosure.as_ref().map(enclosure),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRep {
    pub cell: [usize; 2],
    pub point: PointRep,
    pub enclosure: BoxRep,
    pub recheck: BoxRep,
}

pub fn witness(w: &Witness) -> WitnessRep {
    WitnessRep {
        cell: [w.cell.0, w.cell.1],
        point: point(&w.point),
        enclosure: enclosure(&w.enclosure),
        recheck: enclosure(&w.recheck),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsRep {
    pub cells: usize,
    pub x_cells: usize,
    pub full_dimensional: usize,
    pub basis: usize,
    pub projection: usize,
    pub max_stack: usize,
    pub max_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssumptionsRep {
    pub delta: f64,
    pub all_cuts_exact: bool,
    pub equal_evidence: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRep {
    pub overall: String,
    pub witnesses: Vec<WitnessRep>,
    pub cells: Vec<CellRep>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bottleneck: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridRep {
    pub spec: String,
    pub equal: usize,
    pub nonzero: usize,
    pub inconclusive: usize,
    pub skipped: usize,
    pub nodes: Vec<GridNodeRep>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridNodeRep {
    pub index: [usize; 2],
    pub point: PointRep,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

pub fn grid(g: &GridReport) -> GridRep {
    GridRep {
        spec: g.spec.to_string(),
        equal: g.equal,
        nonzero: g.nonzero,
        inconclusive: g.inconclusive,
        skipped: g.skipped,
        nodes: g
            .nodes
            .iter()
            .map(|n| GridNodeRep {
                index: [n.index.0, n.index.1],
                point: point(&n.point),
                status: n.status.name().into(),
                reason: reason(&n.status),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryRep {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expr: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub polys: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub at: Option<String>,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub region: Option<String>,
    pub precision: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Default for Tool {
    fn default() -> Self {
        Tool { name: "branchwise".into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

/// One report per command. Only the fields a command produces are present.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub tool: Tool,
    pub command: String,
    pub query: QueryRep,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<VerdictRep>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grid: Option<GridRep>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub cuts: Vec<CutRep>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decomposition: Option<StatsRep>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub cells: Vec<CellRep>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<BoxRep>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub assumptions: Option<AssumptionsRep>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    /// Wall-clock milliseconds per stage; the only nondeterministic part.
    pub timings: Vec<(String, f64)>,
}

impl RunReport {
    pub fn new(command: &str, query: QueryRep) -> Self {
        RunReport {
            schema: SCHEMA,
            tool: Tool::default(),
            command: command.into(),
            query,
            verdict: None,
            grid: None,
            cuts: Vec::new(),
            decomposition: None,
            cells: Vec::new(),
            value: None,
            assumptions: None,
            error: None,
            timings: Vec::new(),
        }
    }

    pub fn set_verdict(&mut self, v: &Verdict, max_degree: usize) {
        self.verdict = Some(VerdictRep {
            overall: v.overall.name().into(),
            witnesses: v.witnesses.iter().map(witness).collect(),
            cells: v.cells.iter().map(cell).collect(),
            bottleneck: v.bottleneck.clone(),
        });
        self.cuts = v.cuts.iter().map(cut).collect();
        self.decomposition = v.stats.map(|s| StatsRep {
            cells: s.cells,
            x_cells: s.x_cells,
            full_dimensional: s.full_dimensional,
            basis: s.basis,
            projection: s.projection,
            max_stack: s.max_stack,
            max_degree,
        });
        self.assumptions = Some(AssumptionsRep {
            delta: v.assumptions.delta,
            all_cuts_exact: v.assumptions.all_cuts_exact,
            equal_evidence: v.assumptions.equal_evidence,
            notes: v.assumptions.notes.clone(),
        });
        let t = &v.timings;
        self.timings = vec![
            ("cuts".into(), ms(t.cuts)),
            ("decomposition".into(), ms(t.decomposition)),
            ("decisions".into(), ms(t.decisions)),
        ];
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}
