//! Embedded reference data, input parsers and output emitters.
//!
//! The reference file `data/reference.json` holds the transcribed tables,
//! the one-dimensional families and the cited facts used by the classifier.
//! Layout (schema version 1):
//!
//! * `tables[]`: `id`, `caption`, `n` (0 when mixed), `columns` (cell keys,
//!   see [`RefRow::cell`]) and `rows`.
//! * `rows[]`: `label`, optional `d` (descending divisor order), `chi`
//!   (order -> Euler characteristic), `profiles` (order -> partial fixed
//!   locus: `curves` genera, `a` point types, `points`, `alpha`), `ns`,
//!   `extra`, `highlighted`, `verdict` (`admissible`, `eliminated`,
//!   `geometric`) and `note`.
//! * `families[]`: Weierstrass templates `a`, `b` in `t` and the listed
//!   parameters, weight `scale`, diagonal `action` as `order:exponent`.
//! * `facts[]`: `kind`, free-form `payload`, mandatory `citation`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intsolve::Relation;
use crate::lefschetz::{HoloConstraint, HoloVar};

pub const SCHEMA_VERSION: u32 = 1;

const REFERENCE_JSON: &str = include_str!("../data/reference.json");

#[derive(Debug, Error)]
pub enum DataError {
    #[error("reference data: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("fact #{index} ({kind}) has no citation")]
    MissingCitation { index: usize, kind: String },
    #[error("fact #{index} ({kind}): {msg}")]
    BadPayload { index: usize, kind: String, msg: String },
    #[error("duplicate {what} {id:?}")]
    Duplicate { what: &'static str, id: String },
    #[error("unknown table {id:?}; known tables: {known}")]
    UnknownTable { id: String, known: String },
    #[error("unknown family {id:?}; known families: {known}")]
    UnknownFamily { id: String, known: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileRef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curves: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<i64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    #[default]
    Admissible,
    Eliminated,
    Geometric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefRow {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profiles: Option<BTreeMap<String, ProfileRef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ns: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra: Option<BTreeMap<String, i64>>,
    #[serde(default)]
    pub highlighted: bool,
    #[serde(default)]
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn show_list<T: fmt::Display>(v: &[T]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(","))
}

/// `C_g + k R` notation for a list of genera (first entry is the main curve).
pub fn show_curves(c: &[u64]) -> String {
    match c.split_first() {
        None => "-".to_string(),
        Some((g, rest)) => format!("({},{})", g, rest.len()),
    }
}

impl RefRow {
    pub fn profile(&self, order: u64) -> Option<&ProfileRef> {
        self.profiles.as_ref()?.get(&order.to_string())
    }

    pub fn chi_of(&self, order: u64) -> Option<i64> {
        self.chi.as_ref()?.get(&order.to_string()).copied()
    }

    /// Cell value for a column key: `d`, `ns`, `n`, `m` (extras),
    /// `chi.K`, or `K.field` with field one of `N`, `alpha`, `a`, `aI`,
    /// `g`, `k`, `curves`.
    pub fn cell(&self, key: &str) -> String {
        let dash = || "-".to_string();
        match key {
            "d" => return self.d.as_deref().map(show_list).unwrap_or_else(dash),
            "ns" => return self.ns.clone().unwrap_or_else(dash),
            "label" => return self.label.clone(),
            "profiles" => {
                let Some(p) = &self.profiles else { return dash() };
                let mut orders: Vec<u64> = p.keys().filter_map(|k| k.parse().ok()).collect();
                orders.sort_unstable_by(|a, b| b.cmp(a));
                return orders
                    .iter()
                    .map(|o| {
                        let r = &p[&o.to_string()];
                        let c = r.curves.as_deref().map(show_curves).unwrap_or_else(dash);
                        let n = r.points.map(|x| x.to_string()).unwrap_or_else(dash);
                        format!("{o}:{c}/{n}")
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
            }
            _ => {}
        }
        if let Some(o) = key.strip_prefix("chi.") {
            return o
                .parse()
                .ok()
                .and_then(|o| self.chi_of(o))
                .map(|x| x.to_string())
                .unwrap_or_else(dash);
        }
        let Some((o, field)) = key.split_once('.') else {
            return self
                .extra
                .as_ref()
                .and_then(|e| e.get(key))
                .map(|x| x.to_string())
                .unwrap_or_else(dash);
        };
        let Some(p) = o.parse().ok().and_then(|o| self.profile(o)) else {
            return dash();
        };
        match field {
            "N" => p
                .points
                .or_else(|| p.a.as_ref().map(|a| a.iter().map(|&x| x as u64).sum()))
                .map(|x| x.to_string())
                .unwrap_or_else(dash),
            "alpha" => p.alpha.map(|x| x.to_string()).unwrap_or_else(dash),
            "a" => p.a.as_deref().map(show_list).unwrap_or_else(dash),
            "curves" => p.curves.as_deref().map(show_curves).unwrap_or_else(dash),
            "g" => match p.curves.as_deref() {
                Some([g, ..]) => g.to_string(),
                _ => dash(),
            },
            "k" => match p.curves.as_deref() {
                Some([_, rest @ ..]) => rest.len().to_string(),
                _ => dash(),
            },
            f => f
                .strip_prefix('a')
                .and_then(|i| i.parse::<usize>().ok())
                .and_then(|i| p.a.as_ref()?.get(i.checked_sub(1)?).copied())
                .map(|x| x.to_string())
                .unwrap_or_else(dash),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefTable {
    pub id: String,
    pub caption: String,
    pub n: u64,
    pub columns: Vec<String>,
    pub rows: Vec<RefRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub lambda: String,
    pub mu: String,
    pub nu: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Weierstrass,
    DoubleCover,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Family {
    pub id: String,
    pub n: u64,
    pub kind: FamilyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    pub parameters: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fact {
    pub kind: String,
    pub payload: serde_json::Value,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceData {
    pub schema_version: u32,
    pub tables: Vec<RefTable>,
    pub families: Vec<Family>,
    pub facts: Vec<Fact>,
}

/// A prime-order fixed locus from a cited catalog, indexed by `m`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub order: u64,
    pub m: u64,
    pub curves: Vec<u64>,
    pub a: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DoublingCondition {
    Any,
    Curve,
    TwoCurves,
    CurveAndTwoPoints,
    IsolatedOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoublingPayload {
    pub order: u64,
    pub condition: DoublingCondition,
    pub lift: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pattern {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profiles: Option<BTreeMap<String, ProfileRef>>,
}

/// A case the source eliminates by geometry rather than arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometricPayload {
    pub n: u64,
    pub label: String,
    pub pattern: Pattern,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFormulaPayload {
    pub order: u64,
    pub formula: String,
}

fn payload<T: for<'de> Deserialize<'de>>(i: usize, f: &Fact) -> Result<T, DataError> {
    serde_json::from_value(f.payload.clone()).map_err(|e| DataError::BadPayload {
        index: i,
        kind: f.kind.clone(),
        msg: e.to_string(),
    })
}

impl ReferenceData {
    pub fn parse(s: &str) -> Result<Self, DataError> {
        let r: ReferenceData = serde_json::from_str(s)?;
        r.validate()?;
        Ok(r)
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reference data serializes");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<(), DataError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DataError::Schema(self.schema_version));
        }
        let mut seen = BTreeSet::new();
        for t in &self.tables {
            if !seen.insert(t.id.clone()) {
                return Err(DataError::Duplicate { what: "table", id: t.id.clone() });
            }
            let mut labels = BTreeSet::new();
            for r in &t.rows {
                if !labels.insert(r.label.clone()) {
                    return Err(DataError::Duplicate { what: "row", id: format!("{}/{}", t.id, r.label) });
                }
            }
        }
        let mut fams = BTreeSet::new();
        for f in &self.families {
            if !fams.insert(f.id.clone()) {
                return Err(DataError::Duplicate { what: "family", id: f.id.clone() });
            }
        }
        for (i, f) in self.facts.iter().enumerate() {
            if f.citation.trim().is_empty() {
                return Err(DataError::MissingCitation { index: i, kind: f.kind.clone() });
            }
            match f.kind.as_str() {
                "prime_catalog" => {
                    payload::<CatalogEntry>(i, f)?;
                }
                "doubling" => {
                    payload::<DoublingPayload>(i, f)?;
                }
                "geometric" => {
                    payload::<GeometricPayload>(i, f)?;
                }
                "point_formula" => {
                    payload::<PointFormulaPayload>(i, f)?;
                }
                other => {
                    return Err(DataError::BadPayload {
                        index: i,
                        kind: other.to_string(),
                        msg: "unknown fact kind".into(),
                    })
                }
            }
        }
        Ok(())
    }

    pub fn table(&self, id: &str) -> Result<&RefTable, DataError> {
        self.tables.iter().find(|t| t.id == id).ok_or_else(|| DataError::UnknownTable {
            id: id.to_string(),
            known: self.tables.iter().map(|t| t.id.as_str()).collect::<Vec<_>>().join(", "),
        })
    }

    pub fn family(&self, id: &str) -> Result<&Family, DataError> {
        self.families.iter().find(|f| f.id == id).ok_or_else(|| DataError::UnknownFamily {
            id: id.to_string(),
            known: self.families.iter().map(|f| f.id.as_str()).collect::<Vec<_>>().join(", "),
        })
    }

    fn facts_of<T: for<'de> Deserialize<'de>>(&self, kind: &str) -> Vec<(T, &str)> {
        self.facts
            .iter()
            .enumerate()
            .filter(|(_, f)| f.kind == kind)
            .map(|(i, f)| (payload(i, f).expect("validated on load"), f.citation.as_str()))
            .collect()
    }

    pub fn catalog(&self) -> Vec<(CatalogEntry, &str)> {
        self.facts_of("prime_catalog")
    }

    pub fn doubling(&self) -> Vec<(DoublingPayload, &str)> {
        self.facts_of("doubling")
    }

    pub fn geometric(&self) -> Vec<(GeometricPayload, &str)> {
        self.facts_of("geometric")
    }

    pub fn point_formulas(&self) -> Vec<(PointFormulaPayload, &str)> {
        self.facts_of("point_formula")
    }
}

/// The embedded reference data, parsed and validated once.
pub fn reference() -> &'static ReferenceData {
    static DATA: OnceLock<ReferenceData> = OnceLock::new();
    DATA.get_or_init(|| ReferenceData::parse(REFERENCE_JSON).expect("embedded reference data is valid"))
}

pub fn reference_source() -> &'static str {
    REFERENCE_JSON
}

// ---------------------------------------------------------------------------
// Parsers

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{msg} at position {pos} in {input:?}")]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub msg: String,
}

fn perr(input: &str, pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError { input: input.to_string(), pos, msg: msg.into() }
}

/// Root of unity `order:exponent`, e.g. `16:3` for zeta_16^3.
pub fn parse_root(s: &str) -> Result<(u64, i64), ParseError> {
    let Some((o, e)) = s.trim().split_once(':') else {
        return Err(perr(s, 0, "expected order:exponent"));
    };
    let order: u64 = o.trim().parse().map_err(|_| perr(s, 0, "bad order"))?;
    if order == 0 {
        return Err(perr(s, 0, "order must be positive"));
    }
    let exp: i64 = e.trim().parse().map_err(|_| perr(s, o.len() + 1, "bad exponent"))?;
    Ok((order, exp))
}

/// Integer vector `(2,0,1,4)` or `2,0,1,4`.
pub fn parse_vector(s: &str) -> Result<Vec<u64>, ParseError> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let mut out = Vec::new();
    let mut pos = s.find(|c: char| c.is_ascii_digit()).unwrap_or(0);
    for part in t.split(',') {
        let v = part.trim().parse().map_err(|_| perr(s, pos, format!("bad entry {:?}", part.trim())))?;
        out.push(v);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// Rational number `p` or `p/q` (no decimals).
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let t = s.trim();
    let (n, d) = t.split_once('/').unwrap_or((t, "1"));
    let n: num_bigint::BigInt = n.trim().parse().map_err(|_| perr(s, 0, "bad numerator"))?;
    let d: num_bigint::BigInt = d.trim().parse().map_err(|_| perr(s, t.find('/').unwrap_or(0) + 1, "bad denominator"))?;
    if d == num_bigint::BigInt::from(0) {
        return Err(perr(s, t.find('/').unwrap_or(0) + 1, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// `key=value` pairs such as `d15=2` or `a=3/2`.
pub fn parse_assignment(s: &str) -> Result<(String, String), ParseError> {
    let Some((k, v)) = s.split_once('=') else {
        return Err(perr(s, 0, "expected key=value"));
    };
    if k.trim().is_empty() {
        return Err(perr(s, 0, "empty key"));
    }
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Constraint over `a1..ak` and `alpha`: a linear form, then one of
/// `<=`, `>=`, `=`, `<`, `>`, or `== r mod m`, then an integer.
/// Example: `a1+a3+2*a6 <= 4`, `a2 - alpha == 1 mod 5`.
pub fn parse_constraint(s: &str) -> Result<HoloConstraint, ParseError> {
    let b = s.as_bytes();
    let mut pos = 0;
    let skip = |pos: &mut usize| {
        while *pos < b.len() && b[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let int = |pos: &mut usize| -> Result<i64, ParseError> {
        skip(pos);
        let st = *pos;
        if *pos < b.len() && b[*pos] == b'-' {
            *pos += 1;
        }
        while *pos < b.len() && b[*pos].is_ascii_digit() {
            *pos += 1;
        }
        s[st..*pos].parse().map_err(|_| perr(s, st, "expected an integer"))
    };
    let mut terms: Vec<(HoloVar, i64)> = Vec::new();
    let mut sign = 1i64;
    let mut expect_term = true;
    loop {
        skip(&mut pos);
        if pos >= b.len() {
            return Err(perr(s, pos, "missing relation"));
        }
        let c = b[pos];
        if expect_term {
            if c == b'-' {
                sign = -sign;
                pos += 1;
                continue;
            }
            if c == b'+' {
                pos += 1;
                continue;
            }
            let mut coef = 1i64;
            if c.is_ascii_digit() {
                coef = int(&mut pos)?;
                skip(&mut pos);
                if pos < b.len() && b[pos] == b'*' {
                    pos += 1;
                    skip(&mut pos);
                } else {
                    return Err(perr(s, pos, "expected '*' after coefficient"));
                }
            }
            let st = pos;
            while pos < b.len() && b[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            let name = &s[st..pos];
            let var = if name == "alpha" {
                HoloVar::Alpha
            } else if let Some(i) = name.strip_prefix('a').and_then(|i| i.parse::<usize>().ok()) {
                if i == 0 {
                    return Err(perr(s, st, "type indices start at 1"));
                }
                HoloVar::A(i)
            } else {
                return Err(perr(s, st, format!("unknown variable {name:?}")));
            };
            terms.push((var, sign * coef));
            sign = 1;
            expect_term = false;
            continue;
        }
        match c {
            b'+' => {
                pos += 1;
                expect_term = true;
            }
            b'-' => {
                pos += 1;
                sign = -1;
                expect_term = true;
            }
            b'<' | b'>' | b'=' => break,
            _ => return Err(perr(s, pos, format!("unexpected {:?}", c as char))),
        }
    }
    let rel_start = pos;
    let two = s.get(pos..pos + 2).unwrap_or("");
    let (rel, adv) = match two {
        "<=" => (Some(Relation::Le), 2),
        ">=" => (Some(Relation::Ge), 2),
        "==" => (None, 2),
        _ => match b[pos] {
            b'=' => (Some(Relation::Eq), 1),
            b'<' => (Some(Relation::Le), 1),
            b'>' => (Some(Relation::Ge), 1),
            _ => return Err(perr(s, pos, "expected a relation")),
        },
    };
    pos += adv;
    let mut rhs = int(&mut pos)?;
    let out = match rel {
        Some(r) => {
            // strict forms
            if adv == 1 && b[rel_start] == b'<' {
                rhs -= 1;
            } else if adv == 1 && b[rel_start] == b'>' {
                rhs += 1;
            }
            HoloConstraint::rel(terms, r, rhs)
        }
        None => {
            skip(&mut pos);
            if !s[pos..].starts_with("mod") {
                return Err(perr(s, pos, "expected 'mod'"));
            }
            pos += 3;
            let m = int(&mut pos)?;
            if m <= 0 {
                return Err(perr(s, pos, "modulus must be positive"));
            }
            HoloConstraint::congruent(terms, rhs, m as u64)
        }
    };
    skip(&mut pos);
    if pos != b.len() {
        return Err(perr(s, pos, "trailing input"));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Emitters

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" | "text" => Ok(Format::Table),
            _ => Err(format!("unknown format {s:?} (json, csv, table)")),
        }
    }
}

/// Rows of text cells under a header; the common shape for CSV and aligned output.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TextTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new(header: Vec<String>) -> Self {
        TextTable { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let esc = |c: &str| {
            if c.contains([',', '"', '\n']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.to_string()
            }
        };
        let mut out = String::new();
        for r in std::iter::once(&self.header).chain(&self.rows) {
            out.push_str(&r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_aligned(&self) -> String {
        let ncol = self.header.len();
        let mut w = vec![0; ncol];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (i, c) in r.iter().enumerate().take(ncol) {
                w[i] = w[i].max(c.chars().count());
            }
        }
        let line = |r: &Vec<String>| {
            let cells: Vec<String> = (0..ncol)
                .map(|i| {
                    let c = r.get(i).map(String::as_str).unwrap_or("");
                    format!("{c:<width$}", width = w[i])
                })
                .collect();
            cells.join("  ").trim_end().to_string()
        };
        let mut out = line(&self.header);
        out.push('\n');
        out.push_str(&w.iter().map(|&x| "-".repeat(x)).collect::<Vec<_>>().join("  "));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

/// Canonical structured form: pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn render(fmt: Format, json: &impl Serialize, table: &TextTable) -> String {
    match fmt {
        Format::Json => to_json(json),
        Format::Csv => table.to_csv(),
        Format::Table => table.to_aligned(),
    }
}

/// Text table view of a reference table.
pub fn reference_text_table(t: &RefTable) -> TextTable {
    let mut header = vec!["label".to_string()];
    header.extend(t.columns.iter().cloned());
    header.push("verdict".into());
    let mut out = TextTable::new(header);
    for r in &t.rows {
        let mut row = vec![if r.highlighted { format!("{}*", r.label) } else { r.label.clone() }];
        row.extend(t.columns.iter().map(|c| r.cell(c)));
        row.push(
            match r.verdict {
                Verdict::Admissible => "admissible",
                Verdict::Eliminated => "eliminated",
                Verdict::Geometric => "geometric",
            }
            .into(),
        );
        out.push(row);
    }
    out
}

/// Wrapper written by the command line tool around every result.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub command: Vec<String>,
    pub input_digest: String,
    pub results: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

/// FNV-1a digest of the command line; stable across runs and platforms.
pub fn digest(parts: &[String]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for p in parts {
        for b in p.bytes().chain(std::iter::once(0)) {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    format!("{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_embedded_data_loads() {
        let r = reference();
        assert!(r.table("tab").is_ok());
        assert!(r.table("nope").is_err());
        assert_eq!(r.table("tab16").unwrap().rows.len(), 14);
        assert_eq!(r.table("tab:30-1").unwrap().rows.len(), 5);
    }

    #[test]
    fn test_round_trip() {
        let r = reference();
        let s = r.emit();
        let back = ReferenceData::parse(&s).unwrap();
        assert_eq!(&back, r);
        assert_eq!(back.emit(), s);
    }

    #[test]
    fn test_missing_citation_rejected() {
        let mut r = reference().clone();
        r.facts[0].citation = " ".into();
        let s = r.emit();
        assert!(matches!(ReferenceData::parse(&s), Err(DataError::MissingCitation { .. })));
    }

    #[test]
    fn test_cells() {
        let t = reference().table("tab").unwrap();
        let a1 = &t.rows[0];
        let cells: Vec<String> = t.columns.iter().map(|c| a1.cell(c)).collect();
        assert_eq!(cells, ["5", "0", "1", "0", "2", "0", "2", "2", "0", "(2,1,0,2)"]);
    }

    #[test]
    fn test_parse_constraint() {
        let c = parse_constraint("a1 + a3 + 2*a6 <= 4").unwrap();
        assert_eq!(c.to_string(), "a1+a3+2*a6<=4");
        let c = parse_constraint("a2-alpha == 1 mod 5").unwrap();
        assert_eq!(c.to_string(), "a2-alpha==1 mod 5");
        let e = parse_constraint("a1 + b2 = 3").unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(parse_constraint("a1 <= ").is_err());
        assert!(parse_constraint("a0 = 1").is_err());
    }

    #[test]
    fn test_parse_misc() {
        assert_eq!(parse_root("16:3").unwrap(), (16, 3));
        assert!(parse_root("16").is_err());
        assert_eq!(parse_vector("(2,0,1,4)").unwrap(), vec![2, 0, 1, 4]);
        assert!(parse_vector("2,x").is_err());
        assert_eq!(parse_rational("-27/4").unwrap(), BigRational::new((-27).into(), 4.into()));
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn test_emitters() {
        let mut t = TextTable::new(vec!["a".into(), "bb".into()]);
        t.push(vec!["1".into(), "x,y".into()]);
        assert_eq!(t.to_csv(), "a,bb\n1,\"x,y\"\n");
        assert_eq!(t.to_aligned(), "a  bb\n-  ---\n1  x,y\n");
        let empty = TextTable::new(vec!["a".into()]);
        assert_eq!(empty.to_csv(), "a\n");
        assert_eq!(to_json(&Vec::<u32>::new()), "[]\n");
    }
}
