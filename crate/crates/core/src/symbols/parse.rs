//! Plain-text symbol literals.
//!
//! Scalar entries are sums of terms `c * z1^a1 * zbar1^b1 * ... * |z|^-k`,
//! with the `|z|` power implied by the exponents (validated when written
//! out). Matrices use row-major bracket syntax `[[...,...],[...,...]]`.
//! Complex coefficients are written `(a+bi)` or as plain reals.

use num_complex::Complex64;

use super::{BoundarySymbol, ScalarSymbol};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

/// Parse a symbol literal: a bracketed matrix or a bare scalar expression.
pub fn parse_symbol(n: usize, text: &str) -> Result<BoundarySymbol> {
    let t = text.trim();
    if t.starts_with('[') {
        let rows = split_rows(t)?;
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in &rows {
            let cells = split_top_level(row, ',');
            if cells.len() != size {
                return Err(Error::Parse(format!(
                    "matrix is not square: {size} rows but a row with {} entries",
                    cells.len()
                )));
            }
            for cell in cells {
                entries.push(parse_scalar_symbol(n, &cell)?);
            }
        }
        Ok(BoundarySymbol::from_entries(n, size, entries))
    } else {
        Ok(BoundarySymbol::scalar(parse_scalar_symbol(n, t)?))
    }
}

/// Parse a scalar symbol expression.
pub fn parse_scalar_symbol(n: usize, text: &str) -> Result<ScalarSymbol> {
    let mut out = ScalarSymbol::zero(n);
    for (sign, term) in split_terms(text) {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let (mut coeff, alpha, beta) = parse_term(n, term)?;
        if sign < 0 {
            coeff = -coeff;
        }
        out = out.add(&ScalarSymbol::monomial(n, alpha, beta, coeff));
    }
    Ok(out)
}

fn parse_term(n: usize, term: &str) -> Result<(Complex64, MultiIndex, MultiIndex)> {
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut alpha = vec![0u32; n];
    let mut beta = vec![0u32; n];
    let mut stated_norm_pow: Option<u32> = None;
    for factor in split_top_level(term, '*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(Error::Parse(format!("empty factor in term '{term}'")));
        }
        if let Some(rest) = f.strip_prefix("|z|") {
            let rest = rest.trim();
            let exp = rest
                .strip_prefix("^-")
                .or_else(|| rest.strip_prefix("^ -"))
                .ok_or_else(|| Error::Parse(format!("expected |z|^-k, got '{f}'")))?;
            let k: u32 = exp
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad |z| exponent in '{f}'")))?;
            stated_norm_pow = Some(stated_norm_pow.unwrap_or(0) + k);
        } else if let Some(rest) = f.strip_prefix("zbar") {
            let (idx, exp) = parse_var(rest, f)?;
            if idx == 0 || idx > n {
                return Err(Error::Parse(format!(
                    "variable index {idx} out of range 1..={n} in '{f}'"
                )));
            }
            beta[idx - 1] += exp;
        } else if let Some(rest) = f.strip_prefix('z') {
            let (idx, exp) = parse_var(rest, f)?;
            if idx == 0 || idx > n {
                return Err(Error::Parse(format!(
                    "variable index {idx} out of range 1..={n} in '{f}'"
                )));
            }
            alpha[idx - 1] += exp;
        } else {
            coeff *= parse_complex(f)?;
        }
    }
    let degree: u32 = alpha.iter().sum::<u32>() + beta.iter().sum::<u32>();
    if let Some(k) = stated_norm_pow {
        if k != degree {
            return Err(Error::Parse(format!(
                "term '{term}' states |z|^-{k} but the exponents imply |z|^-{degree}"
            )));
        }
    }
    Ok((coeff, MultiIndex::new(alpha), MultiIndex::new(beta)))
}

fn parse_var(rest: &str, whole: &str) -> Result<(usize, u32)> {
    let rest = rest.trim();
    let (idx_str, exp) = match rest.split_once('^') {
        Some((i, e)) => {
            let exp: u32 = e
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in '{whole}'")))?;
            (i.trim(), exp)
        }
        None => (rest, 1),
    };
    let idx: usize = idx_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad variable index in '{whole}'")))?;
    Ok((idx, exp))
}

fn parse_complex(text: &str) -> Result<Complex64> {
    let t = text.trim();
    let inner = if t.starts_with('(') && t.ends_with(')') {
        &t[1..t.len() - 1]
    } else {
        t
    };
    let inner = inner.trim();
    if inner == "i" {
        return Ok(Complex64::new(0.0, 1.0));
    }
    if inner == "-i" {
        return Ok(Complex64::new(0.0, -1.0));
    }
    // pure imaginary "bi", real "a", or "a+bi"/"a-bi"
    if let Some(stripped) = inner.strip_suffix('i') {
        // find the split between real and imaginary parts, if any
        if let Some(pos) = split_sign_position(stripped) {
            let re: f64 = stripped[..pos]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad complex literal '{text}'")))?;
            let ims = stripped[pos..].trim();
            let im: f64 = if ims == "+" {
                1.0
            } else if ims == "-" {
                -1.0
            } else {
                ims.parse()
                    .map_err(|_| Error::Parse(format!("bad complex literal '{text}'")))?
            };
            return Ok(Complex64::new(re, im));
        }
        let imtxt = stripped.trim();
        let im: f64 = if imtxt.is_empty() {
            1.0
        } else {
            imtxt
                .parse()
                .map_err(|_| Error::Parse(format!("bad complex literal '{text}'")))?
        };
        return Ok(Complex64::new(0.0, im));
    }
    inner
        .parse::<f64>()
        .map(|re| Complex64::new(re, 0.0))
        .map_err(|_| Error::Parse(format!("bad coefficient '{text}'")))
}

// Position of the '+'/'-' separating real and imaginary parts, skipping a
// leading sign and exponent signs.
fn split_sign_position(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            return Some(i);
        }
    }
    None
}

// Split an expression into (+1/-1, chunk) at top-level additive operators.
fn split_terms(text: &str) -> Vec<(i32, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = 1;
    let mut prev_significant: Option<char> = None;
    for ch in text.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let unary = matches!(
                    prev_significant,
                    None | Some('^') | Some('e') | Some('E') | Some('*') | Some('+') | Some('-')
                );
                if unary {
                    cur.push(ch);
                } else {
                    out.push((sign, std::mem::take(&mut cur)));
                    sign = if ch == '-' { -1 } else { 1 };
                }
            }
            _ => cur.push(ch),
        }
        if !ch.is_whitespace() {
            prev_significant = Some(ch);
        }
    }
    out.push((sign, cur));
    out.retain(|(_, s)| !s.trim().is_empty());
    // a leading '-' inside the first chunk acts as its sign
    out.iter_mut().for_each(|(sg, s)| {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('-') {
            if !rest
                .trim_start()
                .starts_with(|c: char| c.is_ascii_digit() || c == '.' || c == '(')
            {
                *sg = -*sg;
                *s = rest.to_string();
            }
        }
    });
    out
}

fn split_top_level(text: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(ch);
            }
            c if c == sep && depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    out.push(cur);
    out
}

fn split_rows(text: &str) -> Result<Vec<String>> {
    let t = text.trim();
    if !t.starts_with('[') || !t.ends_with(']') {
        return Err(Error::Parse("matrix literal must be wrapped in [ ]".into()));
    }
    let inner = &t[1..t.len() - 1];
    let rows: Vec<String> = split_top_level(inner, ',')
        .into_iter()
        .map(|r| r.trim().to_string())
        .collect();
    rows.into_iter()
        .map(|r| {
            if r.starts_with('[') && r.ends_with(']') {
                Ok(r[1..r.len() - 1].to_string())
            } else {
                Err(Error::Parse(format!("matrix row '{r}' must be [ ... ]")))
            }
        })
        .collect()
}
