//! Text formats for H- and V-representations.
//!
//! ```text
//! H-representation
//! linearity 1 3
//! begin
//! 3 3 rational
//! 0 1 0
//! 0 0 1
//! -1 1 1
//! end
//! ```
//!
//! Each H row `b a1 ... ad` means `b + a·x >= 0` (`= 0` for rows listed in
//! `linearity`, 1-based). V rows are `1 x1 ... xd` for vertices and
//! `0 z1 ... zd` for rays. Lines starting with `#` are comments; two of
//! them are structured: `# recipe: <json>` and `# labels: l1 l2 ...`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::repr::{HPolyhedron, HRow, VPolyhedron};
use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyFile {
    H(HPolyhedron),
    V(VPolyhedron),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub body: PolyFile,
    pub recipe: Option<String>,
    pub labels: Option<Vec<String>>,
}

fn perr(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut recipe = None;
    let mut labels: Option<Vec<String>> = None;
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(c) = line.strip_prefix('#') {
            let c = c.trim();
            if let Some(r) = c.strip_prefix("recipe:") {
                recipe = Some(r.trim().to_string());
            } else if let Some(l) = c.strip_prefix("labels:") {
                labels = Some(l.split_whitespace().map(str::to_string).collect());
            }
            continue;
        }
        if line.is_empty() || line.starts_with('*') {
            continue;
        }
        lines.push((no + 1, line));
    }

    let mut it = lines.into_iter();
    let kind = loop {
        match it.next() {
            Some((_, "H-representation")) => break 'H',
            Some((_, "V-representation")) => break 'V',
            Some(_) => continue,
            None => return Err(Error::Parse("missing H-representation or V-representation".into())),
        }
    };

    let mut linearity = BTreeSet::new();
    loop {
        let (no, line) = it.next().ok_or_else(|| Error::Parse("missing 'begin'".into()))?;
        if line == "begin" {
            break;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("linearity") if kind == 'H' => {
                let k: usize =
                    tok.next().and_then(|t| t.parse().ok()).ok_or_else(|| perr(no, "bad linearity count"))?;
                let idx: Vec<usize> = tok
                    .map(|t| t.parse::<usize>().map_err(|_| perr(no, "bad linearity index")))
                    .collect::<Result<_>>()?;
                if idx.len() != k || idx.contains(&0) {
                    return Err(perr(no, "linearity list does not match its count"));
                }
                linearity.extend(idx.into_iter().map(|i| i - 1));
            }
            _ => return Err(perr(no, format!("unexpected '{line}' before 'begin'"))),
        }
    }

    let (no, header) = it.next().ok_or_else(|| Error::Parse("missing size line".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || !matches!(toks[2], "rational" | "integer") {
        return Err(perr(no, "expected 'm d+1 rational'"));
    }
    let m: usize = toks[0].parse().map_err(|_| perr(no, "bad row count"))?;
    let cols: usize = toks[1].parse().map_err(|_| perr(no, "bad column count"))?;
    if cols == 0 {
        return Err(perr(no, "column count must be at least 1"));
    }
    let d = cols - 1;

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for _ in 0..m {
        let (no, line) = it.next().ok_or_else(|| Error::Parse(format!("expected {m} rows")))?;
        let vals: Vec<Rational> =
            line.split_whitespace().map(|t| parse_rational(t).map_err(|e| perr(no, e))).collect::<Result<_>>()?;
        if vals.len() != cols {
            return Err(perr(no, format!("expected {cols} entries, found {}", vals.len())));
        }
        rows.push(vals);
    }
    match it.next() {
        Some((_, "end")) => {}
        Some((no, l)) => return Err(perr(no, format!("expected 'end', found '{l}'"))),
        None => return Err(Error::Parse("missing 'end'".into())),
    }
    if linearity.iter().any(|&i| i >= m) {
        return Err(Error::Parse("linearity index out of range".into()));
    }

    let body = if kind == 'H' {
        PolyFile::H(HPolyhedron::with_linearity(d, rows.iter().map(|r| HRow::from_homogeneous(r)).collect(), linearity))
    } else {
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in rows {
            if r[0].is_one() {
                vertices.push(r[1..].to_vec());
            } else if r[0].is_zero() {
                rays.push(r[1..].to_vec());
            } else {
                return Err(Error::Parse("V rows must start with 1 (vertex) or 0 (ray)".into()));
            }
        }
        PolyFile::V(VPolyhedron::new(d, vertices, rays))
    };
    if let (Some(l), PolyFile::V(v)) = (&labels, &body) {
        if l.len() != v.vertices.len() {
            return Err(Error::Parse("labels comment must name every vertex".into()));
        }
    }
    Ok(Document { body, recipe, labels })
}

fn push_row(out: &mut String, lead: &Rational, rest: &[Rational]) {
    let _ = write!(out, "{lead}");
    for x in rest {
        let _ = write!(out, " {x}");
    }
    out.push('\n');
}

fn push_comments(out: &mut String, comments: &[String]) {
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
}

pub fn write_h(h: &HPolyhedron, comments: &[String]) -> String {
    let mut out = String::new();
    push_comments(&mut out, comments);
    out.push_str("H-representation\n");
    if !h.linearity.is_empty() {
        let idx: Vec<String> = h.linearity.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(out, "linearity {} {}", idx.len(), idx.join(" "));
    }
    out.push_str("begin\n");
    let _ = writeln!(out, "{} {} rational", h.len(), h.dim + 1);
    for r in &h.rows {
        push_row(&mut out, &r.b, &r.a);
    }
    out.push_str("end\n");
    out
}

pub fn write_v(v: &VPolyhedron, labels: Option<&[String]>, comments: &[String]) -> String {
    let mut out = String::new();
    push_comments(&mut out, comments);
    if let Some(l) = labels {
        let _ = writeln!(out, "# labels: {}", l.join(" "));
    }
    out.push_str("V-representation\nbegin\n");
    let _ = writeln!(out, "{} {} rational", v.vertices.len() + v.rays.len(), v.dim + 1);
    let one = Rational::one();
    let zero = Rational::zero();
    for p in &v.vertices {
        push_row(&mut out, &one, p);
    }
    for r in &v.rays {
        push_row(&mut out, &zero, r);
    }
    out.push_str("end\n");
    out
}
