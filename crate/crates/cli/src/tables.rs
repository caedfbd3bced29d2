//! CSV, JSON and plain-text renderings of cyclotomic tables and claim
//! tables.
//!
//! Cyclotomic CSV: the header `e,f,q,source`, one record with those values,
//! then `e` records of `e` counts each. Claim CSV: the header
//! `q,n,claim,provenance,I,include_zero,e` with one record per length;
//! `provenance` entries are joined by `;` and `I` lists class indices
//! separated by commas.

use cyclomds::cyclotomy::CyclotomicTable;
use cyclomds::theorem::SigmaRow;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloJson {
    pub e: usize,
    pub f: u64,
    pub q: u64,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_sign: Option<i8>,
    pub values: Vec<Vec<u64>>,
}

impl From<&CyclotomicTable> for CycloJson {
    fn from(t: &CyclotomicTable) -> Self {
        CycloJson {
            e: t.e,
            f: t.f,
            q: t.q,
            source: t.source.name().into(),
            t_sign: t.t_sign,
            values: t.rows().map(<[u64]>::to_vec).collect(),
        }
    }
}

pub fn cyclo_csv(t: &CyclotomicTable) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    w.write_record(["e", "f", "q", "source"])?;
    w.write_record([
        t.e.to_string(),
        t.f.to_string(),
        t.q.to_string(),
        t.source.name().to_string(),
    ])?;
    for row in t.rows() {
        w.write_record(row.iter().map(u64::to_string))?;
    }
    finish(w)
}

pub fn cyclo_json(t: &CyclotomicTable) -> String {
    to_json(&CycloJson::from(t))
}

pub fn cyclo_text(t: &CyclotomicTable) -> String {
    let width = t
        .values
        .iter()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = format!(
        "e = {}, f = {}, q = {}, source = {}",
        t.e,
        t.f,
        t.q,
        t.source.name()
    );
    if let Some(s) = t.t_sign {
        out += &format!(", t sign = {s}");
    }
    out.push('\n');
    for row in t.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        out += &cells.join(" ");
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimJson {
    pub q: u64,
    pub n: usize,
    pub claim: String,
    pub provenance: Vec<String>,
    #[serde(rename = "I")]
    pub classes: Vec<usize>,
    pub include_zero: bool,
    pub e: usize,
}

impl From<&SigmaRow> for ClaimJson {
    fn from(r: &SigmaRow) -> Self {
        ClaimJson {
            q: r.q,
            n: r.n,
            claim: r.claim.name().into(),
            provenance: r.provenance.clone(),
            classes: r.witness.classes.clone(),
            include_zero: r.witness.include_zero,
            e: r.witness.e,
        }
    }
}

fn join_classes(c: &[usize]) -> String {
    c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn claims_csv(rows: &[SigmaRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["q", "n", "claim", "provenance", "I", "include_zero", "e"])?;
    for r in rows.iter().map(ClaimJson::from) {
        w.write_record([
            r.q.to_string(),
            r.n.to_string(),
            r.claim,
            r.provenance.join(";"),
            join_classes(&r.classes),
            r.include_zero.to_string(),
            r.e.to_string(),
        ])?;
    }
    finish(w)
}

pub fn claims_json(rows: &[SigmaRow]) -> String {
    to_json(&rows.iter().map(ClaimJson::from).collect::<Vec<_>>())
}

pub fn claims_text(rows: &[SigmaRow]) -> String {
    let mut out = String::new();
    for r in rows.iter().map(ClaimJson::from) {
        let zero = if r.include_zero { " + {0}" } else { "" };
        out += &format!(
            "n = {:>4}  Sigma({}, {})  I = {{{}}} mod {}{}  from {}\n",
            r.n,
            r.claim,
            r.q,
            join_classes(&r.classes),
            r.e,
            zero,
            r.provenance.join(", ")
        );
    }
    out
}

/// Reads a claim table written by [`claims_csv`].
pub fn parse_claims_csv(text: &str) -> Result<Vec<ClaimJson>, CliError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let bad = |what: &str| CliError::Usage(format!("claim table: bad {what} in {rec:?}"));
        let num = |i: usize, what: &str| {
            rec.get(i)
                .and_then(|s| s.parse::<u64>().ok())
                .ok_or_else(|| bad(what))
        };
        let classes =
            crate::args::parse_class_set(rec.get(4).unwrap_or("")).map_err(|_| bad("I"))?;
        out.push(ClaimJson {
            q: num(0, "q")?,
            n: num(1, "n")? as usize,
            claim: rec.get(2).ok_or_else(|| bad("claim"))?.to_string(),
            provenance: rec
                .get(3)
                .unwrap_or("")
                .split(';')
                .map(String::from)
                .collect(),
            classes: classes.0,
            include_zero: rec
                .get(5)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("include_zero"))?,
            e: num(6, "e")? as usize,
        });
    }
    Ok(out)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}
