//! Text grammars for norm specs, vectors and Gram matrix files.
//!
//! ```text
//! lp:<p>                 p a decimal >= 1, or "inf"
//! wlp:<p>:<w1,...,wn>
//! gram:<path>            n rows of n whitespace-separated reals, '#' comments
//! gram:identity<n>       built-in n×n identity
//! ```

use std::path::Path;

use super::{NormSpec, Vector};
use crate::error::{Error, Result};

pub fn parse_norm_spec(text: &str) -> Result<NormSpec> {
    let text = text.trim();
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("norm spec `{text}` has no `kind:` prefix")))?;
    match kind {
        "lp" => Ok(NormSpec::lp(parse_p(rest)?)),
        "wlp" => {
            let (p, weights) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("`{text}` should read wlp:<p>:<w1,...>")))?;
            Ok(NormSpec::weighted(parse_p(p)?, parse_list(weights)?))
        }
        "gram" => {
            if let Some(n) = rest.strip_prefix("identity") {
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad identity size in `{text}`")))?;
                if n == 0 {
                    return Err(Error::Parse("identity size must be positive".into()));
                }
                return Ok(NormSpec::gram_identity(n));
            }
            read_gram_file(rest)
        }
        other => Err(Error::Parse(format!("unknown norm kind `{other}`"))),
    }
}

fn parse_p(text: &str) -> Result<f64> {
    let text = text.trim();
    if text.eq_ignore_ascii_case("inf") {
        return Ok(f64::INFINITY);
    }
    let p: f64 = text
        .parse()
        .map_err(|_| Error::Parse(format!("`{text}` is not a valid exponent")))?;
    if p.is_infinite() {
        return Err(Error::Parse("write the max norm as `inf`".into()));
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidP(p));
    }
    Ok(p)
}

fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .map_err(|_| Error::Parse(format!("`{t}` is not a number")))
        })
        .collect()
}

/// Parses `"0.75,0.75"`.
pub fn parse_vector(text: &str) -> Result<Vector> {
    if text.trim().is_empty() {
        return Err(Error::EmptyVector);
    }
    Vector::new(parse_list(text)?)
}

pub fn read_gram_file(path: impl AsRef<Path>) -> Result<NormSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_gram_matrix(&text).map(NormSpec::gram)
}

/// Rows of whitespace-separated reals; blank lines and `#` lines are skipped.
/// Only the row lengths are checked here, squareness is left to validation.
pub fn parse_gram_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("`{t}` is not a number")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("gram matrix file has no rows".into()));
    }
    Ok(rows)
}
