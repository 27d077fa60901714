//! Input handling, orchestration and reports for the `surfrank` binary.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use surfrank_core::error::{Error, Result};
use surfrank_core::expr::parse_poly;
use surfrank_core::families::{FamilyInstance, Promise, SearchHit};
use surfrank_core::mordell::{
    add, build_orbits, torsion_order, trace_descent, PointQT, PointView, TORSION_BOUND,
};
use surfrank_core::nagao::{estimate_rank, EstimateTrace};
use surfrank_core::rankformula::{normalize, normalize_triple, rank, RankCase, SurfaceABC};

/// The three accepted ways of describing a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSpec {
    /// `Y^2 = A(X) T^2 + B(X) T + C(X)`.
    Triple { a: String, b: String, c: String },
    /// `Y^2 = X^3 + a2(T) X^2 + a4(T) X + a6(T)`.
    Weierstrass { a2: String, a4: String, a6: String },
    /// `Y^2 = L(X)^3 T^2 + B(X) T + C(X)`.
    Cube { l: String, b: String, c: String },
}

impl InputSpec {
    pub fn to_surface(&self) -> Result<SurfaceABC> {
        match self {
            InputSpec::Triple { a, b, c } => normalize_triple(
                &parse_poly(a, 'X')?,
                &parse_poly(b, 'X')?,
                &parse_poly(c, 'X')?,
            ),
            InputSpec::Weierstrass { a2, a4, a6 } => normalize(
                &parse_poly(a2, 'T')?,
                &parse_poly(a4, 'T')?,
                &parse_poly(a6, 'T')?,
            ),
            InputSpec::Cube { l, b, c } => SurfaceABC::cube(
                parse_poly(l, 'X')?,
                parse_poly(b, 'X')?,
                parse_poly(c, 'X')?,
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Flags {
    pub nagao_q: Option<u64>,
    pub no_descent: bool,
}

/// The normalized surface as printed polynomials in X.
#[derive(Clone, Debug, Serialize)]
pub struct SurfaceView {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<String>,
}

impl From<&SurfaceABC> for SurfaceView {
    fn from(s: &SurfaceABC) -> Self {
        SurfaceView {
            a: s.a.to_expr("X"),
            b: s.b.to_expr("X"),
            c: s.c.to_expr("X"),
            l: s.cube_root().map(|l| l.to_expr("X")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointEntry {
    pub x: String,
    pub y: String,
    pub provenance: String,
    /// Order when at most 12, otherwise the string `"none"`.
    pub torsion_order_le12: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct NagaoView {
    #[serde(rename = "Q")]
    pub q: u64,
    pub trace: Vec<(u64, f64)>,
    pub target: i64,
    pub heuristic: bool,
}

impl From<&EstimateTrace> for NagaoView {
    fn from(t: &EstimateTrace) -> Self {
        NagaoView {
            q: t.checkpoints.last().map_or(0, |c| c.0),
            trace: t
                .checkpoints
                .iter()
                .map(|&(q, r)| (q, round_sig6(r)))
                .collect(),
            target: t.target,
            heuristic: true,
        }
    }
}

/// Full result of `run`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub input: SurfaceView,
    pub case: RankCase,
    pub rank: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_plus: Option<i64>,
    pub intermediates: BTreeMap<String, Value>,
    pub points: Vec<PointEntry>,
    pub relations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nagao: Option<NagaoView>,
    pub warnings: Vec<String>,
}

/// `x` rounded to 6 significant digits.
pub fn round_sig6(x: f64) -> f64 {
    sig6(x).parse().unwrap_or(x)
}

/// `x` printed with 6 significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let prec = (5 - mag).max(0) as usize;
    format!("{x:.prec$}")
}

/// Normalize, rank, descend every orbit, test torsion, and optionally run
/// the Nagao estimate.
pub fn run(spec: &InputSpec, flags: Flags) -> Result<Report> {
    let s = spec.to_surface()?;
    let rr = rank(&s)?;
    let mut warnings = rr.warnings.clone();
    let mut points = Vec::new();
    let mut relations = Vec::new();
    if !flags.no_descent {
        let mut descended = Vec::new();
        for o in build_orbits(&s)? {
            let pt = trace_descent(&s, &o)?;
            let order = torsion_order(&s, &pt, TORSION_BOUND)?;
            let source = if o.source == "A" {
                "square root of A"
            } else {
                "square root of C"
            };
            let view = PointView::from(&pt);
            points.push(PointEntry {
                x: view.x,
                y: view.y,
                provenance: format!("trace over roots of {} ({source})", o.f.to_expr("X")),
                torsion_order_le12: order.map_or(json!("none"), |n| json!(n)),
            });
            descended.push(pt);
        }
        if descended.len() >= 2 {
            let sum = descended
                .iter()
                .try_fold(PointQT::Infinity, |acc, p| add(&s, &acc, p))?;
            if sum.is_infinity() {
                let names: Vec<String> = (1..=descended.len()).map(|i| format!("P{i}")).collect();
                relations.push(format!("{} = O", names.join("+")));
            }
        }
    }
    let nagao = match flags.nagao_q {
        Some(q) => {
            warnings.push("nagao estimate is heuristic".into());
            Some(NagaoView::from(&estimate_rank(&s, q)?))
        }
        None => None,
    };
    Ok(Report {
        input: SurfaceView::from(&s),
        case: rr.case,
        rank: rr.rank,
        r_plus: rr.bound_rplus,
        intermediates: rr.intermediates,
        points,
        relations,
        nagao,
        warnings,
    })
}

/// Generator output with its verified claims.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub surface: SurfaceView,
    pub promise: String,
    pub rank: i64,
    pub points: Vec<PointView>,
}

impl FamilyReport {
    pub fn new(family: &str, inst: &FamilyInstance) -> Result<Self> {
        let promise = match inst.promise {
            Promise::Rank(r) => format!("rank {r}"),
            Promise::Torsion(n) => format!("rank 0, first point of order {n}"),
        };
        Ok(FamilyReport {
            family: family.into(),
            surface: SurfaceView::from(&inst.surface),
            promise,
            rank: rank(&inst.surface)?.rank,
            points: inst.points.iter().map(PointView::from).collect(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_over_qt: Option<PointView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<(String, String)>,
    pub seed: u64,
}

impl SearchReport {
    pub fn new(hit: Option<&SearchHit>, seed: u64) -> Self {
        use surfrank_core::exactalg::rational_to_string as q;
        SearchReport {
            found: hit.is_some(),
            surface: hit.map(|h| SurfaceView::from(&h.surface)),
            point_over_qt: hit.map(|h| PointView::from(&h.point_qt)),
            point: hit.map(|h| (q(&h.x), q(&h.y))),
            seed,
        }
    }
}

/// Process exit code for an error: 2 parse, 3 degenerate input, 4 internal.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::VariableMismatch { .. } => 2,
        Error::DegenerateInput(_)
        | Error::DegenerateParameters(_)
        | Error::UnsupportedShape(_)
        | Error::BadSpecialization(_)
        | Error::PointNotOnCurve
        | Error::InvalidModulus(_)
        | Error::BadPrime { .. } => 3,
        _ => 4,
    }
}

/// `(x, y)`, or `O` for the identity.
pub fn point_text(x: &str, y: &str) -> String {
    if x == "O" {
        "O".into()
    } else {
        format!("({x}, {y})")
    }
}

/// Human-readable rendering of a `Report`.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!(
        "surface: Y^2 = ({})*T^2 + ({})*T + ({})",
        r.input.a, r.input.b, r.input.c
    ));
    line(format!("case: {:?}", r.case));
    line(format!("rank: {}", r.rank));
    if let Some(rp) = r.r_plus {
        line(format!("r_plus: {rp}"));
    }
    for (k, v) in &r.intermediates {
        line(format!("  {k} = {v}"));
    }
    for (i, p) in r.points.iter().enumerate() {
        let tors = match p.torsion_order_le12.as_u64() {
            Some(n) => format!("torsion of order {n}"),
            None => "no torsion of order <= 12".into(),
        };
        line(format!(
            "P{} = {}  [{}; {}]",
            i + 1,
            point_text(&p.x, &p.y),
            p.provenance,
            tors
        ));
    }
    for rel in &r.relations {
        line(format!("relation: {rel}"));
    }
    if let Some(n) = &r.nagao {
        line(format!("nagao estimate (heuristic), target {}:", n.target));
        for (q, v) in &n.trace {
            line(format!("  Q = {q}: {}", sig6(*v)));
        }
    }
    for w in &r.warnings {
        line(format!("warning: {w}"));
    }
    out
}
