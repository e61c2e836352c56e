use bethecount::counting::{BranchedLabel, CompletenessReport, YoungDiagram};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::failure::Failure;

pub enum Label {
    Young(YoungDiagram),
    Branched(BranchedLabel),
}

impl Label {
    fn key(&self) -> &'static str {
        match self {
            Label::Young(_) => "lambda",
            Label::Branched(_) => "Lambda",
        }
    }

    fn text(&self) -> String {
        match self {
            Label::Young(y) => y.to_string(),
            Label::Branched(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Label::Young(y) => json!(y.rows()),
            Label::Branched(b) => {
                Value::Array(b.components().iter().map(|c| json!(c.rows())).collect())
            }
        }
    }
}

pub struct Row {
    pub m: Vec<i64>,
    pub label: Option<Label>,
    pub value: BigInt,
    pub dim: Option<BigInt>,
    pub charge: Option<Vec<i64>>,
}

pub struct Table {
    pub command: &'static str,
    /// `c` or `mu`.
    pub value_name: &'static str,
    /// Job description, in output order.
    pub meta: Vec<(&'static str, Value)>,
    pub formula: Option<String>,
    pub rows: Vec<Row>,
    /// A single `--M` query rather than a table.
    pub single: bool,
}

impl Table {
    /// `Σ c` for counts, `Σ μ · dim` for multiplicities.
    pub fn total(&self) -> BigInt {
        self.rows
            .iter()
            .map(|r| match &r.dim {
                Some(d) => &r.value * d,
                None => r.value.clone(),
            })
            .sum()
    }

    pub fn render(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Human => Ok(self.human()),
            Format::Json => Ok(self.json()),
            Format::Csv => self.csv(),
        }
    }

    fn label_key(&self) -> Option<&'static str> {
        self.rows
            .iter()
            .find_map(|r| r.label.as_ref().map(Label::key))
    }

    fn has_dim(&self) -> bool {
        self.rows.iter().any(|r| r.dim.is_some())
    }

    fn has_charge(&self) -> bool {
        self.rows.iter().any(|r| r.charge.is_some())
    }

    fn human(&self) -> String {
        let mut out = String::new();
        if let Some(f) = &self.formula {
            out.push_str(&format!("{}(M) = {f}\n", self.value_name));
        }
        if self.single {
            let row = &self.rows[0];
            out.push_str(&format!("{}\n", row.value));
            return out;
        }
        let meta: Vec<String> = self
            .meta
            .iter()
            .map(|(k, v)| format!("{k}={}", plain(v)))
            .collect();
        out.push_str(&format!("# {}\n", meta.join(" ")));

        let mut header = vec!["M".to_string()];
        if let Some(k) = self.label_key() {
            header.push(k.to_string());
        }
        header.push(self.value_name.to_string());
        if self.has_dim() {
            header.push("dim".into());
        }
        if self.has_charge() {
            header.push("charge".into());
        }
        let mut lines = vec![header];
        for row in &self.rows {
            let mut cells = vec![join(&row.m, ",")];
            if self.label_key().is_some() {
                cells.push(row.label.as_ref().map_or("-".into(), Label::text));
            }
            cells.push(row.value.to_string());
            if self.has_dim() {
                cells.push(row.dim.as_ref().map_or("-".into(), ToString::to_string));
            }
            if self.has_charge() {
                cells.push(row.charge.as_ref().map_or("-".into(), |c| join(c, ",")));
            }
            lines.push(cells);
        }
        let widths: Vec<usize> = (0..lines[0].len())
            .map(|j| lines.iter().map(|l| l[j].len()).max().unwrap_or(0))
            .collect();
        for l in &lines {
            let padded: Vec<String> = l
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            out.push_str(padded.join("  ").trim_end());
            out.push('\n');
        }
        let total_name = if self.has_dim() {
            "sum mu*dim"
        } else {
            "sum c"
        };
        out.push_str(&format!("total ({total_name}): {}\n", self.total()));
        out
    }

    fn json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        for (k, v) in &self.meta {
            obj.insert((*k).into(), v.clone());
        }
        if let Some(f) = &self.formula {
            obj.insert("formula".into(), json!(f));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut o = Map::new();
                o.insert("M".into(), json!(r.m));
                if let Some(l) = &r.label {
                    o.insert(l.key().into(), l.json());
                }
                o.insert(self.value_name.into(), json!(r.value.to_string()));
                if let Some(d) = &r.dim {
                    o.insert("dim".into(), json!(d.to_string()));
                }
                if let Some(c) = &r.charge {
                    o.insert("charge".into(), json!(c));
                }
                Value::Object(o)
            })
            .collect();
        obj.insert("rows".into(), Value::Array(rows));
        obj.insert("total".into(), json!(self.total().to_string()));
        to_json(Value::Object(obj))
    }

    fn csv(&self) -> Result<String, Failure> {
        let arity = self.rows.first().map_or(0, |r| r.m.len());
        let mut header: Vec<String> = (1..=arity).map(|i| format!("M{i}")).collect();
        if let Some(k) = self.label_key() {
            header.push(k.into());
        }
        header.push(self.value_name.into());
        if self.has_dim() {
            header.push("dim".into());
        }
        if self.has_charge() {
            header.push("charge".into());
        }
        let mut records = vec![header];
        for row in &self.rows {
            let mut rec: Vec<String> = row.m.iter().map(i64::to_string).collect();
            if self.label_key().is_some() {
                rec.push(row.label.as_ref().map_or(String::new(), Label::text));
            }
            rec.push(row.value.to_string());
            if self.has_dim() {
                rec.push(row.dim.as_ref().map_or(String::new(), ToString::to_string));
            }
            if self.has_charge() {
                rec.push(row.charge.as_ref().map_or(String::new(), |c| join(c, ";")));
            }
            records.push(rec);
        }
        write_csv(&records)
    }
}

pub fn completeness(
    report: &CompletenessReport,
    meta: &[(&'static str, Value)],
    format: Format,
) -> Result<String, Failure> {
    let status = if report.pass { "pass" } else { "fail" };
    match format {
        Format::Human => {
            let mut out = String::new();
            let meta: Vec<String> = meta
                .iter()
                .map(|(k, v)| format!("{k}={}", plain(v)))
                .collect();
            out.push_str(&format!("# {}\n", meta.join(" ")));
            out.push_str(&format!("sum mu*dim: {}\n", report.sum));
            out.push_str(&format!("target:     {}\n", report.target));
            out.push_str(&format!("labels:     {}\n", report.terms));
            if report.experimental {
                out.push_str("experimental: yes\n");
            }
            if let Some(note) = &report.note {
                out.push_str(&format!("note: {note}\n"));
            }
            out.push_str(&format!("status: {status}\n"));
            Ok(out)
        }
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("command".into(), json!("check"));
            for (k, v) in meta {
                obj.insert((*k).into(), v.clone());
            }
            obj.insert("sum".into(), json!(report.sum.to_string()));
            obj.insert("target".into(), json!(report.target.to_string()));
            obj.insert("terms".into(), json!(report.terms));
            obj.insert("experimental".into(), json!(report.experimental));
            if let Some(note) = &report.note {
                obj.insert("note".into(), json!(note));
            }
            obj.insert("pass".into(), json!(report.pass));
            Ok(to_json(Value::Object(obj)))
        }
        Format::Csv => write_csv(&[
            vec![
                "sum".into(),
                "target".into(),
                "labels".into(),
                "experimental".into(),
                "status".into(),
            ],
            vec![
                report.sum.to_string(),
                report.target.to_string(),
                report.terms.to_string(),
                report.experimental.to_string(),
                status.into(),
            ],
        ]),
    }
}

pub fn to_json(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn write_csv(records: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for rec in records {
        w.write_record(rec)
            .map_err(|e| Failure::BadInput(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::BadInput(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields is UTF-8"))
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn join(v: &[i64], sep: &str) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(sep)
}
