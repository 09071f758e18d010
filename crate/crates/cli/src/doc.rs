//! Output documents: JSON with sorted keys, or aligned text tables.

use std::collections::BTreeMap;

use padic_sigma::scalar::{PadicScalar, Scalar, UnivScalar, EXACT};
use padic_sigma::verify::CheckReport;
use padic_sigma::{Result, SigmaError};
use serde::Serialize;
use serde_json::Value;

/// `(degree, value, certified modulus)`.
pub type Entry = (i64, String, String);

#[derive(Serialize, Default)]
pub struct Doc {
    pub p: u64,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, Vec<(i64, i64)>>>,
    pub series: BTreeMap<String, Vec<Entry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckJson>>,
}

#[derive(Serialize)]
pub struct CheckJson {
    pub id: String,
    pub status: String,
    pub certified_mod: String,
    pub degree: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub detail: String,
}

impl CheckJson {
    pub fn from_report(r: &CheckReport, p: u64) -> Self {
        CheckJson {
            id: r.id.clone(),
            status: r.status.to_string(),
            certified_mod: format!("{p}^{}", r.modulus),
            degree: format!("{}^{}", r.var, r.degree),
            witness: r.witness.clone(),
            detail: r.detail.clone(),
        }
    }
}

/// Scalars that can be written into a document.
pub trait Encode: Scalar {
    const MODE: &'static str;
    /// The value modulo `p^e`.
    fn encode(&self, e: i64) -> String;
}

impl Encode for PadicScalar {
    const MODE: &'static str = "specialized";
    fn encode(&self, e: i64) -> String {
        let p = self.prime();
        match self.residue(e) {
            Some(r) => format!("{r} mod {p}^{e}"),
            None => self.to_string(),
        }
    }
}

impl Encode for UnivScalar {
    const MODE: &'static str = "universal";
    fn encode(&self, e: i64) -> String {
        let p = self.prime();
        let m = if e == 1 { p.to_string() } else { format!("{p}^{e}") };
        format!("{} (mod {m})", self.render(e))
    }
}

pub fn cert_text(p: u64, cert: i64) -> String {
    if cert >= EXACT / 2 {
        "exact".into()
    } else {
        format!("{p}^{cert}")
    }
}

/// Collects coefficients, failing when one is certified below `p^e`.
pub struct Table<'a, S: Encode> {
    pub doc: &'a mut Doc,
    pub e: i64,
    pub marker: std::marker::PhantomData<S>,
}

impl<S: Encode> Table<'_, S> {
    pub fn push(&mut self, name: &str, items: impl IntoIterator<Item = (i64, S, i64)>) -> Result<()> {
        let mut rows = Vec::new();
        let mut weights = Vec::new();
        for (n, c, cert) in items {
            if cert < self.e {
                return Err(SigmaError::PrecisionExhausted(format!(
                    "{name} at degree {n} is certified only to p^{cert}, below p^{}",
                    self.e
                )));
            }
            if let Some(w) = c.weight() {
                if !c.is_zero() {
                    weights.push((n, w));
                }
            }
            rows.push((n, c.encode(self.e), cert_text(c.prime(), cert)));
        }
        if S::MODE == "universal" {
            self.doc.weights.get_or_insert_with(BTreeMap::new).insert(name.to_string(), weights);
        }
        self.doc.series.insert(name.to_string(), rows);
        Ok(())
    }
}

fn aligned(rows: &[Vec<String>], right: &[bool]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols).map(|i| rows.iter().filter_map(|r| r.get(i)).map(|c| c.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let pad = widths[i] - c.chars().count();
                if right.get(i).copied().unwrap_or(false) {
                    format!("{}{c}", " ".repeat(pad))
                } else {
                    format!("{c}{}", " ".repeat(pad))
                }
            })
            .collect();
        out.push_str("  ");
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

impl Doc {
    /// Pretty JSON with arrays of scalars kept on one line.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("documents serialize");
        let mut out = String::new();
        write_json(&v, 0, &mut out);
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p = {}  mode = {}\n", self.p, self.mode);
        for (name, rows) in &self.series {
            out.push_str(&format!("\n{name}\n"));
            let weights: BTreeMap<i64, i64> =
                self.weights.as_ref().and_then(|w| w.get(name)).map(|v| v.iter().copied().collect()).unwrap_or_default();
            let mut table = vec![vec!["degree".to_string(), "value".into(), "certified".into()]];
            if !weights.is_empty() {
                table[0].push("weight".into());
            }
            for (n, v, c) in rows {
                let mut row = vec![n.to_string(), v.clone(), c.clone()];
                if !weights.is_empty() {
                    row.push(weights.get(n).map(|w| w.to_string()).unwrap_or_default());
                }
                table.push(row);
            }
            out.push_str(&aligned(&table, &[true, false, false, true]));
        }
        if let Some(checks) = &self.checks {
            out.push_str("\nchecks\n");
            let mut table = vec![vec!["id".to_string(), "status".into(), "modulus".into(), "degree".into(), "note".into()]];
            for c in checks {
                let note = match &c.witness {
                    Some(w) => format!("witness: {w}"),
                    None => c.detail.clone(),
                };
                table.push(vec![c.id.clone(), c.status.clone(), c.certified_mod.clone(), c.degree.clone(), note]);
            }
            out.push_str(&aligned(&table, &[]));
        }
        out
    }
}

fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(&serde_json::to_string(v).expect("scalars serialize"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_json(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_json(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).expect("scalars serialize")),
    }
}
