//! Textual literals: scalars, Grassmann numbers like
//! `(1/2+3i) + (2)*x1^x2 + (1i)*X1`, and `{w: ..., eta: ...}` points.
//! Parsers round-trip the canonical `Display` output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grassmann::GrassmannNumber;
use crate::group::SuperPoint;
use crate::scalar::{Backend, GaussRat, Scalar};

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::Parse(format!("bad rational: {s:?}")))
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad float: {s:?}")))
}

/// Split `a`, `a+bi`, `a-bi`, `bi` into real and imaginary source slices; the
/// imaginary slice keeps its sign and drops the trailing `i`.
fn split_complex(s: &str) -> (Option<&str>, Option<&str>) {
    let bytes = s.as_bytes();
    let mut split = None;
    for (i, &c) in bytes.iter().enumerate() {
        if i == 0 || (c != b'+' && c != b'-') {
            continue;
        }
        let prev = bytes[i - 1];
        if matches!(prev, b'e' | b'E' | b'/' | b'+' | b'-') {
            continue; // exponent or sign-of-sign, not a component separator
        }
        split = Some(i);
    }
    match split {
        Some(i) => {
            let (re, im) = s.split_at(i);
            (Some(re), Some(im.strip_suffix('i').unwrap_or(im)))
        }
        None => {
            if let Some(im) = s.strip_suffix('i') {
                (None, Some(im))
            } else {
                (Some(s), None)
            }
        }
    }
}

fn parse_gauss(s: &str) -> Result<GaussRat> {
    let (re, im) = split_complex(s);
    let re = match re {
        Some(r) => parse_rational(r)?,
        None => BigRational::from_integer(BigInt::from(0)),
    };
    let im = match im {
        Some("" | "+") => BigRational::from_integer(BigInt::from(1)),
        Some("-") => BigRational::from_integer(BigInt::from(-1)),
        Some(i) => parse_rational(i)?,
        None => BigRational::from_integer(BigInt::from(0)),
    };
    Ok(GaussRat::new(re, im))
}

/// Parse a scalar literal. Exact backend: `1/2+3/4i`, `-2`, `3i`, or the
/// extension form `(a)+(b)*sqrt(r)`; float backend: decimal components.
pub fn parse_scalar(input: &str, backend: Backend) -> Result<Scalar> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    if let Some(rest) = s.strip_prefix('(') {
        // (a)+(b)*sqrt(r)
        if backend != Backend::Exact {
            return Err(Error::Parse("sqrt extension literals are exact-only".into()));
        }
        let (a_src, rest) = rest
            .split_once(")+(")
            .ok_or_else(|| Error::Parse(format!("bad extension literal: {s:?}")))?;
        let (b_src, rest) = rest
            .split_once(")*sqrt(")
            .ok_or_else(|| Error::Parse(format!("bad extension literal: {s:?}")))?;
        let rad_src = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("bad extension literal: {s:?}")))?;
        let a = parse_gauss(a_src)?;
        let b = parse_gauss(b_src)?;
        let rad = rad_src
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad radicand: {rad_src:?}")))?;
        if rad <= BigInt::from(0) {
            return Err(Error::Parse("radicand must be positive".into()));
        }
        let with_rad = Scalar::sqrt_ext(b, rad);
        return Ok(&Scalar::Exact(a) + &with_rad);
    }
    match backend {
        Backend::Exact => Ok(Scalar::Exact(parse_gauss(s)?)),
        Backend::Float => {
            let (re, im) = split_complex(s);
            let re = match re {
                Some(r) => parse_f64(r)?,
                None => 0.0,
            };
            let im = match im {
                Some("" | "+") => 1.0,
                Some("-") => -1.0,
                Some(i) => parse_f64(i)?,
                None => 0.0,
            };
            Ok(Scalar::Float(Complex64::new(re, im)))
        }
    }
}

/// Split on `+` at parenthesis depth zero.
fn split_terms(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_symbol(sym: &str, n_pairs: usize, backend: Backend) -> Result<GrassmannNumber> {
    let (conj, idx_src) = if let Some(r) = sym.strip_prefix('x') {
        (false, r)
    } else if let Some(r) = sym.strip_prefix('X') {
        (true, r)
    } else {
        return Err(Error::Parse(format!("bad generator symbol: {sym:?}")));
    };
    let j: usize = idx_src
        .parse()
        .map_err(|_| Error::Parse(format!("bad generator index: {sym:?}")))?;
    if j == 0 || j > n_pairs {
        return Err(Error::Parse(format!(
            "generator index {j} out of range 1..={n_pairs}"
        )));
    }
    Ok(if conj {
        GrassmannNumber::conj_generator(j, n_pairs, backend)
    } else {
        GrassmannNumber::generator(j, n_pairs, backend)
    })
}

/// Parse a Grassmann-number literal such as `(1/2+3i) + (2)*x1^x2 + (1i)*X1`.
pub fn parse_grassmann(input: &str, n_pairs: usize, backend: Backend) -> Result<GrassmannNumber> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty grassmann literal".into()));
    }
    let mut acc = GrassmannNumber::zero(n_pairs, backend);
    for term in split_terms(s) {
        let term = term.trim();
        let inner = term
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("term must start with '(': {term:?}")))?;
        // the scalar ends at the matching close paren
        let mut depth = 1usize;
        let mut close = None;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(|| Error::Parse(format!("unbalanced parens: {term:?}")))?;
        let coeff = parse_scalar(&inner[..close], backend)?;
        let tail = inner[close + 1..].trim();
        let mut value = GrassmannNumber::from_scalar(coeff, n_pairs);
        if !tail.is_empty() {
            let syms = tail
                .strip_prefix('*')
                .ok_or_else(|| Error::Parse(format!("expected '*' before symbols: {term:?}")))?;
            for sym in syms.trim().split('^') {
                value = value.try_mul(&parse_symbol(sym.trim(), n_pairs, backend)?)?;
            }
        }
        acc = acc.try_add(&value)?;
    }
    Ok(acc)
}

/// Parse a `{w: <grassmann>, eta: <grassmann>}` document.
pub fn parse_super_point(input: &str, n_pairs: usize, backend: Backend) -> Result<SuperPoint> {
    let s = input.trim();
    let body = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::Parse("point literal must be braced".into()))?;
    let (w_part, eta_part) = body
        .split_once(',')
        .ok_or_else(|| Error::Parse("point literal needs two fields".into()))?;
    let w_src = w_part
        .trim()
        .strip_prefix("w:")
        .ok_or_else(|| Error::Parse("first field must be w".into()))?;
    let eta_src = eta_part
        .trim()
        .strip_prefix("eta:")
        .ok_or_else(|| Error::Parse("second field must be eta".into()))?;
    SuperPoint::new(
        parse_grassmann(w_src, n_pairs, backend)?,
        parse_grassmann(eta_src, n_pairs, backend)?,
    )
}

pub fn format_super_point(p: &SuperPoint) -> String {
    format!("{{w: {}, eta: {}}}", p.w, p.eta)
}
