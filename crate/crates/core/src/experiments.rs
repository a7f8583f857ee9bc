//! Reproducible experiment tables.
//!
//! * `fig1`: `u = (1 - 4s)^5`, `v = (1 - 5s)^5`, `w = (1 - 6s)^5` near their
//!   multiple roots, at `s = 1/4 + 6/(16N)`, `1/5 + 8/(25N)`, `1/6 + 10/(36N)`.
//! * `fig2`: `(1 - 5s)^5` at `s = 1/5 + 8/(25N)`, naive vs improved bound.
//! * `fig3`: `f = prod (s - j/20)`, `g = prod (s - 2/2^j)` (`j = 1..20`) and
//!   `h = (s - 1/2)^20`, de Casteljau against VS.
//!
//! `N = 2.1^e` for `e = 1..=45`, taken as the binary64 nearest to the exact
//! decimal power. Evaluation points are then computed left to right with one
//! rounding per operation, e.g. `s = fl(fl(1/5) + fl(8 / fl(25 * N)))`.
//! Everything downstream of the binary64 point is exact: the oracle
//! evaluates the rounded-coefficient polynomial at the exact value of the
//! rounded point.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::bernstein::{family_rational, poly_from_roots, round_coeffs, BernsteinPoly, RationalPoly};
use crate::evaluators::{decasteljau, vs};
use crate::family::{decasteljau_bound, detect_family, improved_bound_exact, naive_bound_exact, vs_bound, FamilySpec, VsBound};
use crate::oracle::{condition_number, eval_exact, relative_error, ErrorReport};
use crate::rational::{self, Magnitude, Rational};
use crate::{Error, Result};

pub const DEFAULT_E_MAX: u32 = 45;

pub const CSV_HEADER: [&str; 12] = [
    "experiment",
    "poly",
    "e_or_j",
    "s",
    "cond",
    "err_dc",
    "err_vs",
    "bound_dc",
    "bound_vs",
    "bound_improved",
    "bound_naive",
    "flags",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    /// `s` is the family root, where `phi` is undefined.
    Pole,
    /// The exact value `p(s)` is zero.
    ExactZero,
    /// VS degree above 56; its bound does not apply.
    BoundInvalid,
    /// Some reported error exceeds its valid bound.
    Violation,
}

impl Flag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flag::Pole => "pole",
            Flag::ExactZero => "exact-zero",
            Flag::BoundInvalid => "bound-invalid",
            Flag::Violation => "violation",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pole" => Ok(Flag::Pole),
            "exact-zero" => Ok(Flag::ExactZero),
            "bound-invalid" => Ok(Flag::BoundInvalid),
            "violation" => Ok(Flag::Violation),
            other => Err(format!("unknown flag {other:?}")),
        }
    }
}

/// Everything known exactly about one evaluation point.
#[derive(Clone, Debug)]
pub struct PointReport {
    pub experiment: String,
    pub poly: String,
    pub index: u32,
    pub degree: usize,
    pub s: f64,
    pub s_exact: Rational,
    pub cond: Magnitude,
    pub dc: ErrorReport,
    pub vs: Option<ErrorReport>,
    pub bound_dc: Magnitude,
    pub bound_vs: Option<VsBound>,
    pub family: Option<FamilySpec>,
    /// `(1 + |phi| gamma_3)^n - 1`; infinite at the pole.
    pub bound_improved: Option<Magnitude>,
    /// `gamma_3n |phi|^n`; infinite at the pole.
    pub bound_naive: Option<Magnitude>,
}

impl PointReport {
    /// `err_dc <= gamma_3n * cond`.
    pub fn dc_within_bound(&self) -> bool {
        self.dc.rel_error.le(&self.bound_dc)
    }

    /// `err_vs <= gamma_(5n|6n) * cond`; vacuously true without VS or when
    /// the bound is flagged invalid.
    pub fn vs_within_bound(&self) -> bool {
        match (&self.vs, &self.bound_vs) {
            (Some(err), Some(b)) if b.valid => err.rel_error.le(&b.bound),
            _ => true,
        }
    }

    /// `err_dc <= improved bound` for family members.
    pub fn dc_within_improved(&self) -> bool {
        self.bound_improved.as_ref().is_none_or(|b| self.dc.rel_error.le(b))
    }

    pub fn flags(&self) -> Vec<Flag> {
        let mut flags = Vec::new();
        if self.bound_improved.as_ref().is_some_and(Magnitude::is_infinite)
            && self.family.is_some_and(|f| f.root() == self.s_exact)
        {
            flags.push(Flag::Pole);
        }
        if self.dc.exact_value.is_zero() {
            flags.push(Flag::ExactZero);
        }
        if self.bound_vs.as_ref().is_some_and(|b| !b.valid) {
            flags.push(Flag::BoundInvalid);
        }
        if !(self.dc_within_bound() && self.vs_within_bound() && self.dc_within_improved()) {
            flags.push(Flag::Violation);
        }
        flags
    }

    pub fn to_row(&self) -> ExperimentRow {
        ExperimentRow {
            experiment: self.experiment.clone(),
            poly: self.poly.clone(),
            index: self.index,
            s: self.s,
            cond: self.cond.to_f64_nearest(),
            err_dc: self.dc.rel_error.to_f64_nearest(),
            err_vs: self.vs.as_ref().map(|r| r.rel_error.to_f64_nearest()),
            bound_dc: self.bound_dc.to_f64_up(),
            bound_vs: self.bound_vs.as_ref().map(|b| b.bound.to_f64_up()),
            bound_improved: self.bound_improved.as_ref().map(Magnitude::to_f64_up),
            bound_naive: self.bound_naive.as_ref().map(Magnitude::to_f64_up),
            flags: self.flags(),
        }
    }
}

/// One CSV record. Relative errors and the condition number are rounded to
/// nearest, bounds upward.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRow {
    pub experiment: String,
    pub poly: String,
    pub index: u32,
    pub s: f64,
    pub cond: f64,
    pub err_dc: f64,
    pub err_vs: Option<f64>,
    pub bound_dc: f64,
    pub bound_vs: Option<f64>,
    pub bound_improved: Option<f64>,
    pub bound_naive: Option<f64>,
    pub flags: Vec<Flag>,
}

/// Evaluate `p` at `s` with de Casteljau (and VS if asked) and measure
/// everything against the exact oracle.
pub fn evaluate_point(
    experiment: &str,
    poly_id: &str,
    index: u32,
    p: &BernsteinPoly,
    s: f64,
    with_vs: bool,
) -> Result<PointReport> {
    let exact_poly = p.to_rational();
    let s_exact = rational::from_f64(s)?;
    let exact = eval_exact(&exact_poly, &s_exact);
    let (computed, _) = decasteljau(p, s)?;
    let dc = relative_error(&exact, computed)?;
    let cond = condition_number(&exact_poly, &s_exact)?;
    let bound_dc = decasteljau_bound(&exact_poly, &s_exact)?;
    let (vs_report, bound_vs) = if with_vs {
        let v = vs(p, s)?;
        (Some(relative_error(&exact, v)?), Some(vs_bound(&exact_poly, &s_exact)?))
    } else {
        (None, None)
    };
    let family = detect_family(p);
    let (bound_improved, bound_naive) = match family {
        Some(f) => (
            Some(pole_to_infinite(improved_bound_exact(f.n, f.t, &s_exact))?),
            Some(pole_to_infinite(naive_bound_exact(f.n, f.t, &s_exact))?),
        ),
        None => (None, None),
    };
    Ok(PointReport {
        experiment: experiment.to_string(),
        poly: poly_id.to_string(),
        index,
        degree: p.degree(),
        s,
        s_exact,
        cond,
        dc,
        vs: vs_report,
        bound_dc,
        bound_vs,
        family,
        bound_improved,
        bound_naive,
    })
}

fn pole_to_infinite(r: Result<Rational>) -> Result<Magnitude> {
    match r {
        Ok(q) => Ok(Magnitude::Finite(q)),
        Err(Error::Pole(_)) => Ok(Magnitude::Infinite),
        Err(e) => Err(e),
    }
}

/// `N = 2.1^e`, nearest binary64 to the exact power.
pub fn grid_n(e: u32) -> f64 {
    rational::to_f64_nearest(&num_traits::pow(rational::ratio(21, 10), e as usize))
}

/// `fl(fl(a / b) + fl(c / fl(d * N)))`, the point `a/b + c/(dN)`.
fn near_root_point(a: f64, b: f64, c: f64, d: f64, big_n: f64) -> f64 {
    let base = a / b;
    let den = d * big_n;
    let offset = c / den;
    base + offset
}

/// Bernstein coefficients `(-ratio)^j` of `[(1 - s) - ratio * s]^n`.
fn power_form(ratio: i64, n: usize) -> RationalPoly {
    let r = rational::int(-ratio);
    let mut c = Rational::one();
    let coeffs = (0..=n)
        .map(|_| {
            let out = c.clone();
            c *= &r;
            out
        })
        .collect();
    RationalPoly::new(coeffs).expect("nonempty")
}

fn rounded(p: &RationalPoly) -> BernsteinPoly {
    round_coeffs(p).expect("experiment coefficients fit binary64").0
}

struct NearRoot {
    id: &'static str,
    // (1 - k s)^5 = [(1 - s) - (k - 1) s]^5
    k: i64,
}

const FIG1_POLYS: [NearRoot; 3] = [NearRoot { id: "u", k: 4 }, NearRoot { id: "v", k: 5 }, NearRoot { id: "w", k: 6 }];

fn near_root_reports(experiment: &str, polys: &[NearRoot], e_max: u32) -> Result<Vec<PointReport>> {
    let mut out = Vec::new();
    for spec in polys {
        let p = rounded(&power_form(spec.k - 1, 5));
        let k = spec.k as f64;
        for e in 1..=e_max {
            // s = 1/k + 2(k - 1) / (k^2 N)
            let s = near_root_point(1.0, k, 2.0 * (k - 1.0), k * k, grid_n(e));
            out.push(evaluate_point(experiment, spec.id, e, &p, s, false)?);
        }
    }
    Ok(out)
}

pub fn fig1_reports(e_max: u32) -> Result<Vec<PointReport>> {
    if e_max == 0 {
        return Err(Error::Domain("e_max must be at least 1".into()));
    }
    near_root_reports("fig1", &FIG1_POLYS, e_max)
}

pub fn fig2_reports() -> Result<Vec<PointReport>> {
    near_root_reports("fig2", &[NearRoot { id: "p", k: 5 }], DEFAULT_E_MAX)
}

/// `prod_{j=1}^{20} (s - j/20)`.
pub fn poly_f() -> RationalPoly {
    let roots: Vec<Rational> = (1..=20).map(|j| rational::ratio(j, 20)).collect();
    poly_from_roots(&roots)
}

/// `prod_{j=1}^{20} (s - 2/2^j)`.
pub fn poly_g() -> RationalPoly {
    let roots: Vec<Rational> = (1..=20).map(|j| rational::pow2(1 - j)).collect();
    poly_from_roots(&roots)
}

/// `(s - 1/2)^20 = 2^-20 [(1 - s) - s]^20`.
pub fn poly_h() -> RationalPoly {
    family_rational(&rational::pow2(-20), 0, 20).expect("degree 20")
}

pub fn fig3_reports() -> Result<Vec<PointReport>> {
    let mut out = Vec::new();
    let f = rounded(&poly_f());
    for j in 1..=36u32 {
        let s = f64::from(2 * j - 1) / 72.0;
        out.push(evaluate_point("fig3", "f", j, &f, s, true)?);
    }
    let g = rounded(&poly_g());
    for j in 1..=38u32 {
        let s = f64::from(j) / 39.0;
        out.push(evaluate_point("fig3", "g", j, &g, s, true)?);
    }
    let h = rounded(&poly_h());
    for j in 1..=24u32 {
        let s = f64::from(4 * j) / 100.0;
        out.push(evaluate_point("fig3", "h", j, &h, s, true)?);
    }
    Ok(out)
}

pub fn fig1_experiment(e_max: u32) -> Result<Vec<ExperimentRow>> {
    Ok(fig1_reports(e_max)?.iter().map(PointReport::to_row).collect())
}

pub fn fig2_experiment() -> Result<Vec<ExperimentRow>> {
    Ok(fig2_reports()?.iter().map(PointReport::to_row).collect())
}

pub fn fig3_experiment() -> Result<Vec<ExperimentRow>> {
    Ok(fig3_reports()?.iter().map(PointReport::to_row).collect())
}

/// Shortest round-trip decimal in scientific notation; `inf` for infinity.
fn fmt_f64(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Write rows as CSV, ordered by polynomial id then index (stable within
/// equal keys).
pub fn emit_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut sorted: Vec<&ExperimentRow> = rows.iter().collect();
    sorted.sort_by(|a, b| (&a.poly, a.index).cmp(&(&b.poly, b.index)));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in sorted {
        let flags: Vec<&str> = r.flags.iter().map(Flag::as_str).collect();
        w.write_record([
            r.experiment.clone(),
            r.poly.clone(),
            r.index.to_string(),
            fmt_f64(r.s),
            fmt_f64(r.cond),
            fmt_f64(r.err_dc),
            fmt_opt(r.err_vs),
            fmt_f64(r.bound_dc),
            fmt_opt(r.bound_vs),
            fmt_opt(r.bound_improved),
            fmt_opt(r.bound_naive),
            flags.join(";"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_file(rows: &[ExperimentRow], path: &std::path::Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    emit_csv(rows, std::io::BufWriter::new(file))
}

/// Read back rows written by [`emit_csv`].
pub fn parse_csv<R: Read>(input: R) -> Result<Vec<ExperimentRow>> {
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Parse { line: 1, msg: format!("unexpected header {header:?}") });
    }
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let line = i + 2;
        let rec = rec?;
        let err = |msg: String| Error::Parse { line, msg };
        let num = |k: usize| -> Result<f64> {
            rec[k].parse::<f64>().map_err(|e| err(format!("{}: {e}", CSV_HEADER[k])))
        };
        let opt = |k: usize| -> Result<Option<f64>> {
            if rec[k].is_empty() {
                Ok(None)
            } else {
                num(k).map(Some)
            }
        };
        let flags = if rec[11].is_empty() {
            Vec::new()
        } else {
            rec[11].split(';').map(|f| f.parse::<Flag>().map_err(err)).collect::<Result<_>>()?
        };
        rows.push(ExperimentRow {
            experiment: rec[0].to_string(),
            poly: rec[1].to_string(),
            index: rec[2].parse().map_err(|e| err(format!("e_or_j: {e}")))?,
            s: num(3)?,
            cond: num(4)?,
            err_dc: num(5)?,
            err_vs: opt(6)?,
            bound_dc: num(7)?,
            bound_vs: opt(8)?,
            bound_improved: opt(9)?,
            bound_naive: opt(10)?,
            flags,
        });
    }
    Ok(rows)
}

/// Parse one binary64 literal: decimal, or hexadecimal significand
/// (`0x1.8p-3`, optionally signed).
pub fn parse_f64_literal(text: &str) -> std::result::Result<f64, String> {
    let t = text.trim();
    let unsigned = t.trim_start_matches(['+', '-']);
    let x = if unsigned.starts_with("0x") || unsigned.starts_with("0X") {
        let normalized = t.strip_prefix('+').unwrap_or(t).replace("0X", "0x");
        hexf_parse::parse_hexf64(&normalized, false).map_err(|e| format!("{t:?}: {e}"))?
    } else {
        t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"))?
    };
    if !x.is_finite() {
        return Err(format!("{t:?} is not finite"));
    }
    Ok(x)
}

/// One coefficient per line; blank lines and `#` comments are ignored.
pub fn parse_poly_text(text: &str) -> Result<BernsteinPoly> {
    let mut coeffs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        coeffs.push(parse_f64_literal(body).map_err(|msg| Error::Parse { line: i + 1, msg })?);
    }
    BernsteinPoly::new(coeffs)
}
