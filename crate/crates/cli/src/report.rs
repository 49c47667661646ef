//! Verification report: the record model and its text, JSON and CSV renderings.

use std::fmt::Write as _;

use cr_lab::{GaussianRational, SpherePoly};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

pub const NORMALIZATION: &str = "integrals use the rotation-invariant probability measure on S^3 (total mass 1); \
the contact volume theta^dtheta is a fixed positive multiple of it, so eigenvalues, vanishing, \
signs and definiteness are unaffected";

const APPROX_NOTE: &str = "approx fields are decimal renderings for reading only; the exact values are authoritative";

/// One exact witness value. Rationals and complex parts are `"n"` or `"n/d"`;
/// polynomials use the expression syntax accepted by `--phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Value {
    Rational {
        value: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        approx: Option<String>,
    },
    Complex {
        re: String,
        im: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        approx: Option<String>,
    },
    Integer {
        value: String,
    },
    Poly {
        value: String,
    },
    Text {
        value: String,
    },
}

impl Value {
    /// Type tag and a single-cell rendering, used by the text and CSV outputs.
    pub fn flat(&self) -> (&'static str, String) {
        match self {
            Value::Rational { value, .. } => ("rational", value.clone()),
            Value::Complex { re, im, .. } => ("complex", format!("{re} + ({im})*i")),
            Value::Integer { value } => ("integer", value.clone()),
            Value::Poly { value } => ("poly", value.clone()),
            Value::Text { value } => ("text", value.clone()),
        }
    }

    fn approx(&self) -> Option<&str> {
        match self {
            Value::Rational { approx, .. } | Value::Complex { approx, .. } => approx.as_deref(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    #[serde(flatten)]
    pub value: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    /// Plain-language statement of the claim being checked.
    pub anchor: String,
    pub status: Status,
    pub witnesses: Vec<Witness>,
}

impl Record {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Self {
        Record { id: id.into(), anchor: anchor.into(), status: Status::from_bool(ok), witnesses: Vec::new() }
    }

    fn push(mut self, name: impl Into<String>, value: Value) -> Self {
        self.witnesses.push(Witness { name: name.into(), value });
        self
    }

    /// Real part only; callers use this for quantities known to be real.
    pub fn rational(self, name: impl Into<String>, x: &GaussianRational) -> Self {
        debug_assert!(x.is_real());
        self.push(name, Value::Rational { value: x.re_string(), approx: None })
    }

    pub fn complex(self, name: impl Into<String>, x: &GaussianRational) -> Self {
        self.push(name, Value::Complex { re: x.re_string(), im: x.im_string(), approx: None })
    }

    pub fn integer(self, name: impl Into<String>, n: impl ToString) -> Self {
        self.push(name, Value::Integer { value: n.to_string() })
    }

    pub fn poly(self, name: impl Into<String>, p: &SpherePoly) -> Self {
        self.push(name, Value::Poly { value: p.to_string() })
    }

    pub fn text(self, name: impl Into<String>, s: impl Into<String>) -> Self {
        self.push(name, Value::Text { value: s.into() })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub normalization: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub approx_note: Option<String>,
    pub passed: usize,
    pub total: usize,
    /// Ids of failed records, in record order.
    pub failures: Vec<String>,
    pub records: Vec<Record>,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: String, mut records: Vec<Record>, approx: bool, elapsed_ms: f64) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        if approx {
            for w in records.iter_mut().flat_map(|r| r.witnesses.iter_mut()) {
                add_approx(&mut w.value);
            }
        }
        let failures: Vec<String> = records.iter().filter(|r| r.status == Status::Fail).map(|r| r.id.clone()).collect();
        Report {
            schema: SCHEMA,
            command,
            normalization: NORMALIZATION.to_string(),
            approx_note: approx.then(|| APPROX_NOTE.to_string()),
            passed: records.len() - failures.len(),
            total: records.len(),
            failures,
            records,
            timing: Timing { elapsed_ms },
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "cr-lab report (schema {})", self.schema);
        let _ = writeln!(s, "command: {}", self.command);
        let _ = writeln!(s, "normalization: {}", self.normalization);
        if let Some(note) = &self.approx_note {
            let _ = writeln!(s, "note: {note}");
        }
        for r in &self.records {
            let _ = writeln!(s, "\n{} {}", r.status.label(), r.id);
            let _ = writeln!(s, "  claim: {}", r.anchor);
            for w in &r.witnesses {
                let (kind, value) = w.value.flat();
                let _ = write!(s, "  {} = {value} [{kind}]", w.name);
                if let Some(a) = w.value.approx() {
                    let _ = write!(s, " ~ {a}");
                }
                s.push('\n');
            }
        }
        let _ = writeln!(s, "\nresult: {} of {} checks passed", self.passed, self.total);
        if !self.failures.is_empty() {
            let _ = writeln!(s, "failures: {}", self.failures.join(", "));
        }
        let _ = writeln!(s, "elapsed: {:.3} ms", self.timing.elapsed_ms);
        s
    }

    /// One row per witness; a record without witnesses gets a single row with empty witness cells.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let write = |w: &mut csv::Writer<Vec<u8>>, row: &CsvRow| w.serialize(row).expect("csv row");
        for r in &self.records {
            let status = r.status.label().to_lowercase();
            if r.witnesses.is_empty() {
                write(&mut w, &CsvRow::bare(r, &status));
            }
            for wit in &r.witnesses {
                let (kind, value) = wit.value.flat();
                let row = CsvRow {
                    id: r.id.clone(),
                    anchor: r.anchor.clone(),
                    status: status.clone(),
                    witness: wit.name.clone(),
                    kind: kind.to_string(),
                    value,
                    approx: wit.value.approx().unwrap_or("").to_string(),
                };
                write(&mut w, &row);
            }
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("utf-8")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub id: String,
    pub anchor: String,
    pub status: String,
    pub witness: String,
    #[serde(rename = "type")]
    pub kind: String,
    pub value: String,
    pub approx: String,
}

impl CsvRow {
    fn bare(r: &Record, status: &str) -> Self {
        CsvRow {
            id: r.id.clone(),
            anchor: r.anchor.clone(),
            status: status.to_string(),
            witness: String::new(),
            kind: String::new(),
            value: String::new(),
            approx: String::new(),
        }
    }
}

fn decimal(s: &str) -> String {
    let x = cr_lab::scalar::parse_rational(s).expect("witness is a rational string");
    let g = GaussianRational::real(x);
    format!("{:.12}", g.approx().0)
}

fn add_approx(v: &mut Value) {
    match v {
        Value::Rational { value, approx } => *approx = Some(decimal(value)),
        Value::Complex { re, im, approx } => *approx = Some(format!("{} + {}i", decimal(re), decimal(im))),
        _ => {}
    }
}
