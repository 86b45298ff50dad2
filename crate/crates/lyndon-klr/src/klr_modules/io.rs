//! The module description file: line-delimited JSON records holding the
//! Cartan datum, `nu`, the basis tags and dense rational matrices.
//!
//! ```text
//! {"kind":"module","label":"...","datum":{...},"nu":[1,2,1],"dim":3}
//! {"kind":"basis","index":0,"word":"0121","degree":1}
//! {"kind":"matrix","gen":"y","r":0,"rows":[["0","1/2",...],...]}
//! ```

use std::sync::Arc;

use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use super::GradedModule;
use crate::cartan::{CartanDatum, RootVector};
use crate::error::AlgebraError;
use crate::klr_core::relations::{ModuleAction, SparseMatrix};
use crate::shuffle::Word;

#[derive(Serialize, Deserialize)]
struct Header {
    kind: String,
    label: String,
    datum: serde_json::Value,
    nu: Vec<u32>,
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct Basis {
    kind: String,
    index: usize,
    word: String,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
struct Matrix {
    kind: String,
    gen: String,
    r: usize,
    rows: Vec<Vec<String>>,
}

fn parse_err(line: usize, e: impl std::fmt::Display) -> AlgebraError {
    AlgebraError::Parse(format!("module file line {}: {e}", line + 1))
}

/// Serializes a module; `read_module` inverts it byte for byte.
pub fn write_module(m: &GradedModule) -> String {
    let a = &m.action;
    let datum: serde_json::Value = serde_json::from_str(&a.datum.to_json()).expect("datum json");
    let mut lines = Vec::new();
    let header = Header { kind: "module".into(), label: m.label.clone(), datum, nu: a.nu.0.clone(), dim: a.dim() };
    lines.push(serde_json::to_string(&header).expect("header"));
    for (k, (w, d)) in a.weights.iter().zip(&a.degrees).enumerate() {
        let b = Basis { kind: "basis".into(), index: k, word: Word::new(w.clone()).compact(), degree: *d };
        lines.push(serde_json::to_string(&b).expect("basis"));
    }
    for (gen, mats) in [("y", &a.y), ("phi", &a.phi)] {
        for (r, g) in mats.iter().enumerate() {
            let rows = g.to_dense().iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
            let rec = Matrix { kind: "matrix".into(), gen: gen.into(), r, rows };
            lines.push(serde_json::to_string(&rec).expect("matrix"));
        }
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

/// Parses a module file. The relation check is not run here.
pub fn read_module(text: &str) -> Result<GradedModule, AlgebraError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (n0, first) = lines.next().ok_or_else(|| AlgebraError::Parse("empty module file".into()))?;
    let header: Header = serde_json::from_str(first).map_err(|e| parse_err(n0, e))?;
    if header.kind != "module" {
        return Err(parse_err(n0, "expected a module header"));
    }
    let datum = Arc::new(CartanDatum::from_json(&header.datum.to_string())?);
    if header.nu.len() != datum.rank() {
        return Err(parse_err(n0, "nu has the wrong length"));
    }
    let nu = RootVector(header.nu);
    let d = nu.height();
    let n = header.dim;
    let mut weights = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    let mut y = vec![None; d];
    let mut phi = vec![None; d.saturating_sub(1)];
    for (ln, line) in lines {
        let kind: serde_json::Value = serde_json::from_str(line).map_err(|e| parse_err(ln, e))?;
        match kind.get("kind").and_then(|k| k.as_str()) {
            Some("basis") => {
                let b: Basis = serde_json::from_str(line).map_err(|e| parse_err(ln, e))?;
                if b.index != weights.len() {
                    return Err(parse_err(ln, "basis records out of order"));
                }
                let w: Word = b.word.parse()?;
                if w.len() != d {
                    return Err(parse_err(ln, "basis word has the wrong length"));
                }
                weights.push(w.0);
                degrees.push(b.degree);
            }
            Some("matrix") => {
                let m: Matrix = serde_json::from_str(line).map_err(|e| parse_err(ln, e))?;
                let rows = m
                    .rows
                    .iter()
                    .map(|row| row.iter().map(|x| x.parse::<BigRational>().map_err(|e| parse_err(ln, e))).collect())
                    .collect::<Result<Vec<Vec<_>>, _>>()?;
                if rows.len() != n {
                    return Err(parse_err(ln, "matrix has the wrong size"));
                }
                let mat = SparseMatrix::from_dense(&rows)?;
                let slot = match m.gen.as_str() {
                    "y" => y.get_mut(m.r),
                    "phi" => phi.get_mut(m.r),
                    _ => None,
                }
                .ok_or_else(|| parse_err(ln, format!("unknown generator {}_{}", m.gen, m.r)))?;
                if slot.is_some() {
                    return Err(parse_err(ln, "duplicate matrix"));
                }
                *slot = Some(mat);
            }
            _ => return Err(parse_err(ln, "unknown record kind")),
        }
    }
    if weights.len() != n {
        return Err(AlgebraError::Parse(format!("expected {n} basis records, found {}", weights.len())));
    }
    let missing = || AlgebraError::Parse("missing generator matrix".into());
    let y = y.into_iter().map(|m| m.ok_or_else(missing)).collect::<Result<Vec<_>, _>>()?;
    let phi = phi.into_iter().map(|m| m.ok_or_else(missing)).collect::<Result<Vec<_>, _>>()?;
    Ok(GradedModule { action: ModuleAction { datum, nu, weights, degrees, y, phi }, label: header.label })
}
