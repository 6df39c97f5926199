//! Turning command-line strings into elements and rationals.

use std::path::Path;

use anyhow::{bail, Context, Result};
use num_rational::BigRational;
use serde_json::Value;
use thompson_core::families::{builtin, Builtin};
use thompson_core::{Dyadic, Error, TreePair, VElement};

pub fn parse_error(pos: usize, msg: impl Into<String>) -> anyhow::Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
    .into()
}

/// `p/q` or an integer.
pub fn rational(text: &str) -> Result<BigRational> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|e| parse_error(0, format!("bad rational '{text}': {e}")))
}

/// Comma-separated rationals.
pub fn rationals(text: &str) -> Result<Vec<BigRational>> {
    text.split(',').map(rational).collect()
}

pub fn dyadic(text: &str) -> Result<Dyadic> {
    Ok(text.parse::<Dyadic>()?)
}

fn from_json(v: &Value, bound: u32) -> Result<VElement> {
    match v {
        Value::String(s) => element_text(s, bound),
        Value::Object(_) => {
            let pair: TreePair = serde_json::from_value(v.clone())
                .map_err(|e| parse_error(0, format!("bad element object: {e}")))?;
            Ok(pair.reduce())
        }
        other => Err(parse_error(
            0,
            format!("expected an element, found {other}"),
        )),
    }
}

/// A literal `RANGE/DOMAIN~[perm]` or a builtin name (`x0`, `swap13`, `k:2`, …).
fn element_text(text: &str, bound: u32) -> Result<VElement> {
    let text = text.trim();
    if !text.contains('/') {
        match builtin(text, bound)? {
            Builtin::Element(e) => return Ok(e),
            Builtin::Tree(t) => bail!(Error::Precondition(format!(
                "'{text}' names the tree {t}, not an element"
            ))),
        }
    }
    Ok(TreePair::parse_literal(text)?.reduce())
}

/// An element given inline, by builtin name, or as a file holding a literal
/// or a JSON element.
pub fn element(arg: &str, bound: u32) -> Result<VElement> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let trimmed = text.trim();
        if trimmed.starts_with('{') || trimmed.starts_with('"') {
            let v: Value = serde_json::from_str(trimmed)
                .map_err(|e| parse_error(e.column(), format!("bad JSON in {arg}: {e}")))?;
            return from_json(&v, bound);
        }
        return element_text(trimmed, bound);
    }
    element_text(arg, bound)
}

/// A list of elements: a JSON array, or one element per line (blank lines
/// and `#` comments skipped).
pub fn element_list(path: &str, bound: u32) -> Result<Vec<VElement>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let v: Value = serde_json::from_str(trimmed)
            .map_err(|e| parse_error(e.column(), format!("bad JSON in {path}: {e}")))?;
        let Value::Array(items) = v else {
            unreachable!()
        };
        return items.iter().map(|x| from_json(x, bound)).collect();
    }
    trimmed
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| element_text(l, bound))
        .collect()
}
