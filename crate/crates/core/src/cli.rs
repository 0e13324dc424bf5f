//! Ensemble documents, result documents and the command implementations behind the
//! `acwd` binary. Every command returns the rendered output as a string.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::asymptotic::{agr_curve, bipartite_typical_coset_weight, uniform_grid, AgrCurve};
use crate::bits::BitMatrix;
use crate::combinators::{type2_tensor, EnsembleExpr};
use crate::error::{Error, Result};
use crate::oracle::{acwd_bruteforce_tensor, enumerate_expr};
use crate::poly::rational_to_f64;
use crate::tensor::SplitAcwdTensor;

pub const SCHEMA_VERSION: u32 = 1;

/// One node of an ensemble document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NodeSpec {
    Gallager {
        j: usize,
        k: usize,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")] m: Option<usize>,
    },
    Bipartite {
        j: usize,
        k: usize,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")] m: Option<usize>,
    },
    ConstantRow { k: usize, n: usize, m: usize },
    SingleMatrix { rows: Vec<String> },
    Stack { children: Vec<NodeSpec> },
    Concat { children: Vec<NodeSpec> },
    RowShuffle { child: Box<NodeSpec> },
    ColShuffle { child: Box<NodeSpec> },
}

/// `{"version": 1, "ensemble": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSpecDocument {
    pub version: u32,
    pub ensemble: NodeSpec,
}

fn check_rows(kind: &str, declared: Option<usize>, derived: usize) -> Result<()> {
    match declared {
        Some(m) if m != derived => Err(Error::Schema(format!("{kind}: declared m={m} but the parameters give m={derived}"))),
        _ => Ok(()),
    }
}

impl NodeSpec {
    pub fn build(&self) -> Result<EnsembleExpr> {
        match self {
            NodeSpec::Gallager { j, k, n, m } => {
                let e = EnsembleExpr::gallager(*j, *k, *n)?;
                check_rows("gallager", *m, e.m())?;
                Ok(e)
            }
            NodeSpec::Bipartite { j, k, n, m } => {
                let e = EnsembleExpr::bipartite(*j, *k, *n)?;
                check_rows("bipartite", *m, e.m())?;
                Ok(e)
            }
            NodeSpec::ConstantRow { k, n, m } => EnsembleExpr::constant_row(*k, *n, *m),
            NodeSpec::SingleMatrix { rows } => {
                if rows.is_empty() {
                    return Err(Error::Schema("single_matrix needs at least one row".into()));
                }
                EnsembleExpr::single_matrix(BitMatrix::from_bitstrings(rows)?)
            }
            NodeSpec::Stack { children } => EnsembleExpr::stack(children.iter().map(NodeSpec::build).collect::<Result<_>>()?),
            NodeSpec::Concat { children } => EnsembleExpr::concat(children.iter().map(NodeSpec::build).collect::<Result<_>>()?),
            NodeSpec::RowShuffle { child } => Ok(child.build()?.row_shuffle()),
            NodeSpec::ColShuffle { child } => Ok(child.build()?.col_shuffle()),
        }
    }
}

pub fn parse_spec(text: &str) -> Result<EnsembleSpecDocument> {
    if text.trim().is_empty() {
        return Err(Error::Schema("ensemble document is empty".into()));
    }
    let doc: EnsembleSpecDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    if doc.version != SCHEMA_VERSION {
        return Err(Error::Schema(format!("unsupported version {}, expected {SCHEMA_VERSION}", doc.version)));
    }
    Ok(doc)
}

pub fn read_spec(path: &std::path::Path) -> Result<EnsembleSpecDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_spec(&text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Markdown,
}

/// How the result payload was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    ClosedForm,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub library_version: String,
    pub mode: Mode,
}

/// Echoed input, payload and provenance. Rationals are strings `"p/q"` (or `"p"`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub input: Value,
    pub result: Value,
    pub provenance: Provenance,
}

impl ResultDocument {
    fn new(input: Value, result: Value, mode: Mode) -> Self {
        ResultDocument {
            input,
            result,
            provenance: Provenance { library_version: env!("CARGO_PKG_VERSION").into(), mode },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

/// `x` with `digits` significant digits.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == f64::NEG_INFINITY { "-inf".into() } else { format!("{x}") };
    }
    let mag = x.abs().log10().floor() as i64;
    let prec = (digits as i64 - 1 - mag).max(0) as usize;
    let s = format!("{x:.prec$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn cell(q: &BigRational, float: bool) -> String {
    if float {
        significant(rational_to_f64(q), 12)
    } else {
        q.to_string()
    }
}

/// Rows of a tensor: `(signature, values over w)`.
fn tensor_rows(t: &SplitAcwdTensor) -> Vec<(Vec<usize>, Vec<BigRational>)> {
    (0..t.signature_count())
        .map(|idx| (t.signature(idx), (0..=t.n()).map(|w| t.get_idx(w, idx).clone()).collect()))
        .collect()
}

pub fn tensor_json(t: &SplitAcwdTensor) -> Value {
    if t.parts().len() == 1 {
        let rows: Vec<Vec<String>> = tensor_rows(t).into_iter().map(|(_, v)| v.iter().map(|q| q.to_string()).collect()).collect();
        return json!({"type": "acwd_table", "n": t.n(), "m": t.m(), "entries": rows});
    }
    let cells: Vec<Value> = tensor_rows(t)
        .into_iter()
        .map(|(sig, v)| json!({"sigma": sig, "values": v.iter().map(|q| q.to_string()).collect::<Vec<_>>()}))
        .collect();
    json!({"type": "split_acwd", "n": t.n(), "parts": t.parts(), "cells": cells})
}

/// Inverse of [`tensor_json`].
pub fn tensor_from_json(v: &Value) -> Result<SplitAcwdTensor> {
    let bad = |what: &str| Error::Schema(format!("malformed ACWD payload: {what}"));
    let n = v["n"].as_u64().ok_or_else(|| bad("n"))? as usize;
    let parse = |s: &Value| -> Result<BigRational> {
        s.as_str().ok_or_else(|| bad("value is not a string"))?.parse().map_err(|_| bad("value is not a rational"))
    };
    match v["type"].as_str() {
        Some("acwd_table") => {
            let m = v["m"].as_u64().ok_or_else(|| bad("m"))? as usize;
            let mut t = SplitAcwdTensor::zeros(n, vec![m])?;
            let rows = v["entries"].as_array().ok_or_else(|| bad("entries"))?;
            for (sigma, row) in rows.iter().enumerate() {
                for (w, q) in row.as_array().ok_or_else(|| bad("row"))?.iter().enumerate() {
                    t.set(w, &[sigma], parse(q)?);
                }
            }
            Ok(t)
        }
        Some("split_acwd") => {
            let parts: Vec<usize> = serde_json::from_value(v["parts"].clone()).map_err(|_| bad("parts"))?;
            let mut t = SplitAcwdTensor::zeros(n, parts)?;
            for c in v["cells"].as_array().ok_or_else(|| bad("cells"))? {
                let sig: Vec<usize> = serde_json::from_value(c["sigma"].clone()).map_err(|_| bad("sigma"))?;
                for (w, q) in c["values"].as_array().ok_or_else(|| bad("values"))?.iter().enumerate() {
                    t.set(w, &sig, parse(q)?);
                }
            }
            Ok(t)
        }
        _ => Err(bad("type")),
    }
}

fn sig_header(t: &SplitAcwdTensor) -> Vec<String> {
    if t.parts().len() == 1 {
        vec!["sigma".into()]
    } else {
        (1..=t.parts().len()).map(|i| format!("sigma_{i}")).collect()
    }
}

pub fn tensor_csv(t: &SplitAcwdTensor, float: bool) -> String {
    let mut out = sig_header(t).join(",");
    for w in 0..=t.n() {
        let _ = write!(out, ",w={w}");
    }
    out.push('\n');
    for (sig, vals) in tensor_rows(t) {
        let mut fields: Vec<String> = sig.iter().map(ToString::to_string).collect();
        fields.extend(vals.iter().map(|q| cell(q, float)));
        out += &fields.join(",");
        out.push('\n');
    }
    out
}

/// Syndrome weights down the side, codeword weights across the top.
pub fn tensor_markdown(t: &SplitAcwdTensor, float: bool) -> String {
    let corner = format!("{} \\ w", sig_header(t).join(", "));
    let mut out = format!("| {corner} |");
    for w in 0..=t.n() {
        let _ = write!(out, " {w} |");
    }
    out += "\n|---|";
    out += &"---:|".repeat(t.n() + 1);
    out.push('\n');
    for (sig, vals) in tensor_rows(t) {
        let label: Vec<String> = sig.iter().map(ToString::to_string).collect();
        let _ = write!(out, "| {} |", label.join(", "));
        for q in &vals {
            let _ = write!(out, " {} |", cell(q, float));
        }
        out.push('\n');
    }
    out
}

fn render_tensor(doc: &EnsembleSpecDocument, t: &SplitAcwdTensor, mode: Mode, format: OutputFormat, float: bool) -> String {
    match format {
        OutputFormat::Json => ResultDocument::new(serde_json::to_value(doc).expect("serializable"), tensor_json(t), mode).to_json(),
        OutputFormat::Csv => tensor_csv(t, float),
        OutputFormat::Markdown => tensor_markdown(t, float),
    }
}

/// Closed-form ACWD of the ensemble: a `B_w(sigma)` table when row symmetric,
/// otherwise the split tensor on the evaluator's row partition.
pub fn cmd_acwd(doc: &EnsembleSpecDocument, format: OutputFormat, float: bool) -> Result<String> {
    let acwd = doc.ensemble.build()?.acwd()?;
    Ok(render_tensor(doc, acwd.tensor(), Mode::ClosedForm, format, float))
}

/// Type II split-syndrome tensor, after validating the expression shape.
pub fn cmd_split_acwd(doc: &EnsembleSpecDocument, format: OutputFormat, float: bool) -> Result<String> {
    let t = type2_tensor(&doc.ensemble.build()?)?;
    Ok(render_tensor(doc, &t, Mode::ClosedForm, format, float))
}

/// Closed form and brute force side by side on full syndromes.
pub struct OracleComparison {
    pub closed_form: SplitAcwdTensor,
    pub bruteforce: SplitAcwdTensor,
    pub members: u128,
}

impl OracleComparison {
    pub fn exact_match(&self) -> bool {
        self.closed_form == self.bruteforce
    }
}

pub fn oracle_comparison(e: &EnsembleExpr) -> Result<OracleComparison> {
    let members = enumerate_expr(e)?;
    let bruteforce = acwd_bruteforce_tensor(&members)?;
    let closed_form = e.acwd()?.tensor().refine(&vec![1; e.m()])?;
    Ok(OracleComparison { closed_form, bruteforce, members: members.len() })
}

pub fn cmd_oracle(doc: &EnsembleSpecDocument, format: OutputFormat, float: bool) -> Result<String> {
    let cmp = oracle_comparison(&doc.ensemble.build()?)?;
    let (a, b) = (&cmp.closed_form, &cmp.bruteforce);
    let syndrome = |sig: &[usize]| sig.iter().map(ToString::to_string).collect::<String>();
    Ok(match format {
        OutputFormat::Json => {
            let payload = json!({
                "type": "oracle",
                "members": cmp.members.to_string(),
                "exact_match": cmp.exact_match(),
                "closed_form": tensor_json(a),
                "bruteforce": tensor_json(b),
            });
            ResultDocument::new(serde_json::to_value(doc).expect("serializable"), payload, Mode::Oracle).to_json()
        }
        OutputFormat::Csv => {
            let mut out = String::from("syndrome,w,closed_form,bruteforce,match\n");
            for idx in 0..a.signature_count() {
                for w in 0..=a.n() {
                    let (x, y) = (a.get_idx(w, idx), b.get_idx(w, idx));
                    let _ = writeln!(out, "{},{w},{},{},{}", syndrome(&a.signature(idx)), cell(x, float), cell(y, float), x == y);
                }
            }
            out
        }
        OutputFormat::Markdown => {
            let mut out = format!(
                "members: {}\n\nexact_match: {}\n\n| syndrome | w | closed form | brute force |\n|---|---:|---:|---:|\n",
                cmp.members,
                cmp.exact_match()
            );
            for idx in 0..a.signature_count() {
                for w in 0..=a.n() {
                    let _ = writeln!(out, "| {} | {w} | {} | {} |", syndrome(&a.signature(idx)), cell(a.get_idx(w, idx), float), cell(b.get_idx(w, idx), float));
                }
            }
            out
        }
    })
}

/// Growth-rate curves of the `(j, k)` bipartite ensemble, one per `eta`.
pub fn agr_curves(j: usize, k: usize, etas: &[f64], grid: usize) -> Result<Vec<AgrCurve>> {
    let ells = uniform_grid(grid);
    etas.iter().map(|&eta| agr_curve(j, k, eta, &ells)).collect()
}

pub fn cmd_agr(j: usize, k: usize, etas: &[f64], grid: usize, format: OutputFormat) -> Result<String> {
    let curves = agr_curves(j, k, etas, grid)?;
    Ok(match format {
        OutputFormat::Csv => {
            let mut out = String::from("eta,ell,agr\n");
            for c in &curves {
                for (l, v) in &c.samples {
                    let _ = writeln!(out, "{},{},{}", c.eta, l, v);
                }
            }
            out
        }
        OutputFormat::Json => {
            let cs: Vec<Value> = curves
                .iter()
                .map(|c| {
                    let samples: Vec<Value> = c.samples.iter().map(|(l, v)| json!([l, if v.is_finite() { json!(v.to_f64()) } else { json!("-inf") }])).collect();
                    json!({"eta": c.eta, "samples": samples})
                })
                .collect();
            let input = json!({"family": "bipartite", "j": j, "k": k, "eta": etas, "grid": grid});
            ResultDocument::new(input, json!({"type": "agr", "curves": cs}), Mode::ClosedForm).to_json()
        }
        OutputFormat::Markdown => {
            let mut out = String::from("| ell |");
            for c in &curves {
                let _ = write!(out, " eta={} |", c.eta);
            }
            out += "\n|---:|";
            out += &"---:|".repeat(curves.len());
            out.push('\n');
            for i in 0..curves.first().map_or(0, |c| c.samples.len()) {
                let _ = write!(out, "| {} |", curves[0].samples[i].0);
                for c in &curves {
                    let _ = write!(out, " {} |", c.samples[i].1);
                }
                out.push('\n');
            }
            out
        }
    })
}

pub fn cmd_typical_weight(j: usize, k: usize, etas: &[f64], format: OutputFormat) -> Result<String> {
    let thetas = etas.iter().map(|&e| bipartite_typical_coset_weight(j, k, e)).collect::<Result<Vec<_>>>()?;
    let shown: Vec<String> = thetas.iter().map(|&t| significant(t, 4)).collect();
    Ok(match format {
        OutputFormat::Csv => {
            let mut out = String::from("eta,theta\n");
            for (e, t) in etas.iter().zip(&shown) {
                let _ = writeln!(out, "{e},{t}");
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = etas.iter().zip(&thetas).zip(&shown).map(|((e, t), s)| json!({"eta": e, "theta": t, "theta_4sig": s})).collect();
            let input = json!({"family": "bipartite", "j": j, "k": k, "eta": etas});
            ResultDocument::new(input, json!({"type": "typical_weight", "results": rows}), Mode::ClosedForm).to_json()
        }
        OutputFormat::Markdown => {
            let mut out = String::from("| eta | theta |\n|---:|---:|\n");
            for (e, t) in etas.iter().zip(&shown) {
                let _ = writeln!(out, "| {e} | {t} |");
            }
            out
        }
    })
}
