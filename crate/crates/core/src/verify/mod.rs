//! Per-`a` verification of the claims behind the length-six result, with
//! machine-readable reports.
//!
//! Reports are plain data; [`render_json`], [`render_csv`] and
//! [`render_text`] turn them into output.

mod checks;
pub mod named;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::FieldParam;
use crate::units::DEFAULT_EXP_BOX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Computed outside the claim's hypothesis; recorded, not asserted.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        })
    }
}

/// Outcome of one claim at one `a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub claim: String,
    pub a: i64,
    pub status: Status,
    pub elapsed_ms: u64,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    /// Inclusive `[lo, hi]`.
    pub range: [i64; 2],
    /// Sorted by `a`.
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }
}

/// The verifiable claims. Identifiers are the stable names used on the
/// command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    TriangleNormOrder,
    UnitsWithSmallConjugates,
    LargeUnitAlternatives,
    UnitsBelowGamma,
    SmallNormRepresentatives,
    IndecomposableSquares,
    DecomposableSquares,
    SignatureTable,
    SmallParameterLengths,
    LengthSix,
}

impl Claim {
    pub const ALL: [Claim; 10] = [
        Claim::TriangleNormOrder,
        Claim::UnitsWithSmallConjugates,
        Claim::LargeUnitAlternatives,
        Claim::UnitsBelowGamma,
        Claim::SmallNormRepresentatives,
        Claim::IndecomposableSquares,
        Claim::DecomposableSquares,
        Claim::SignatureTable,
        Claim::SmallParameterLengths,
        Claim::LengthSix,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::TriangleNormOrder => "lemma-2.2",
            Claim::UnitsWithSmallConjugates => "lemma-2.3",
            Claim::LargeUnitAlternatives => "lemma-2.4",
            Claim::UnitsBelowGamma => "lemma-3.1",
            Claim::SmallNormRepresentatives => "lemma-3.2",
            Claim::IndecomposableSquares => "lemma-3.3",
            Claim::DecomposableSquares => "lemma-3.4",
            Claim::SignatureTable => "table-1",
            Claim::SmallParameterLengths => "table-2",
            Claim::LengthSix => "theorem-1.1",
        }
    }

    /// Smallest `a` for which the claim is asserted.
    pub fn min_a(self) -> i64 {
        match self {
            Claim::TriangleNormOrder | Claim::LengthSix => 3,
            Claim::UnitsWithSmallConjugates | Claim::LargeUnitAlternatives | Claim::UnitsBelowGamma => 7,
            Claim::SmallNormRepresentatives
            | Claim::IndecomposableSquares
            | Claim::DecomposableSquares
            | Claim::SignatureTable => 15,
            Claim::SmallParameterLengths => -1,
        }
    }

    /// Largest `a` for which the claim is asserted, if bounded.
    pub fn max_a(self) -> Option<i64> {
        match self {
            Claim::SmallParameterLengths => Some(2),
            _ => None,
        }
    }

    pub fn default_range(self) -> RangeInclusive<i64> {
        match self {
            Claim::SmallParameterLengths => -1..=2,
            Claim::LengthSix => 3..=30,
            c => c.min_a()..=50,
        }
    }

    fn in_hypothesis(self, a: i64) -> bool {
        a >= self.min_a() && self.max_a().map_or(true, |m| a <= m)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown claim `{s}`")))
    }
}

/// Knobs shared by all checks.
#[derive(Clone, Debug)]
pub struct Options {
    /// Bound on `|k|, |l|` in unit searches.
    pub exp_box: u32,
    /// Width of the cached root intervals; `None` keeps the default.
    pub width: Option<BigRational>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            exp_box: DEFAULT_EXP_BOX,
            width: None,
        }
    }
}

fn make_field(a: i64, opts: &Options) -> Result<Arc<FieldParam>> {
    match &opts.width {
        Some(w) => FieldParam::with_width(a, w),
        None => FieldParam::new(a),
    }
}

fn run_check(claim: Claim, field: &Arc<FieldParam>, opts: &Options) -> Result<checks::Outcome> {
    let b = opts.exp_box;
    match claim {
        Claim::TriangleNormOrder => checks::triangle_norm_order(field),
        Claim::UnitsWithSmallConjugates => checks::units_with_small_conjugates(field, b),
        Claim::LargeUnitAlternatives => checks::large_unit_alternatives(field, b),
        Claim::UnitsBelowGamma => checks::units_below_gamma(field, b),
        Claim::SmallNormRepresentatives => checks::small_norm_representatives(field),
        Claim::IndecomposableSquares => checks::indecomposable_squares(field, b),
        Claim::DecomposableSquares => checks::decomposable_squares(field, b),
        Claim::SignatureTable => checks::signature_table(field, b),
        Claim::SmallParameterLengths => checks::small_parameter_length(field),
        Claim::LengthSix => checks::length_six(field, b),
    }
}

fn entry(claim: Claim, a: i64, opts: &Options) -> Result<Entry> {
    let field = make_field(a, opts)?;
    let start = Instant::now();
    let outcome = run_check(claim, &field, opts);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let asserted = claim.in_hypothesis(a);
    let (status, mut data) = match outcome {
        Ok(o) if asserted => (if o.holds { Status::Pass } else { Status::Fail }, o.data),
        Ok(o) => (Status::Info, o.data),
        Err(e) if asserted => (Status::Fail, json!({"error": e.to_string()})),
        Err(e) => (Status::Info, json!({"error": e.to_string()})),
    };
    if !asserted {
        if let Value::Object(map) = &mut data {
            map.insert(
                "note".into(),
                json!(format!("outside the claim's hypothesis (a >= {}); recorded, not asserted", claim.min_a())),
            );
        }
    }
    Ok(Entry {
        claim: claim.id().to_string(),
        a,
        status,
        elapsed_ms,
        data,
    })
}

/// Checks `claim` at every `a` in `range` (the claim's default range if
/// `None`). Distinct `a` run in parallel.
pub fn verify(claim: Claim, range: Option<RangeInclusive<i64>>, opts: &Options) -> Result<VerificationReport> {
    let range = range.unwrap_or_else(|| claim.default_range());
    if *range.start() < -1 {
        return Err(Error::InvalidParameter(*range.start()));
    }
    let mut entries = range
        .clone()
        .into_par_iter()
        .map(|a| entry(claim, a, opts))
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by_key(|e| e.a);
    Ok(VerificationReport {
        claim: claim.id().to_string(),
        range: [*range.start(), *range.end()],
        entries,
    })
}

/// Every claim, each over `range` if given and its default range otherwise.
pub fn verify_all(range: Option<RangeInclusive<i64>>, opts: &Options) -> Result<Vec<VerificationReport>> {
    Claim::ALL.iter().map(|c| verify(*c, range.clone(), opts)).collect()
}

pub fn render_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One row per `(claim, a)`; `data` is compact JSON in the last column.
pub fn render_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("claim,a,status,elapsed_ms,data\n");
    for e in reports.iter().flat_map(|r| &r.entries) {
        let data = serde_json::to_string(&e.data).expect("json value serializes");
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_field(&e.claim),
            e.a,
            e.status,
            e.elapsed_ms,
            csv_field(&data)
        ));
    }
    out
}

pub fn render_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "{} a={}..{}: {} pass, {} fail, {} info\n",
            r.claim,
            r.range[0],
            r.range[1],
            r.count(Status::Pass),
            r.count(Status::Fail),
            r.count(Status::Info)
        ));
        for e in &r.entries {
            out.push_str(&format!("  a={:<4} {:<4} {:>7} ms", e.a, e.status, e.elapsed_ms));
            if e.status != Status::Pass {
                out.push_str(&format!("  {}", e.data));
            }
            out.push('\n');
        }
    }
    out
}
