use super::{ExponentVector, GfTerm, ShortGf};
use crate::error::{Error, Result};
use crate::num::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed};
use std::fmt;
use std::str::FromStr;

impl fmt::Display for ShortGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gf nvars={} index={}", self.nvars, self.index_bound)?;
        for t in &self.terms {
            let dens: Vec<String> = t.denominators.iter().map(join).collect();
            writeln!(
                f,
                "term c={}/{} a={} b={}",
                t.coeff.numer(),
                t.coeff.denom(),
                join(&t.numerator),
                dens.join(";")
            )?;
        }
        Ok(())
    }
}

fn join(v: &ExponentVector) -> String {
    v.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Canonical decimal integer: optional `-`, no leading zeros, no `-0`.
fn parse_int(s: &str, line: usize) -> Result<Int> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|c| c.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && !(s.starts_with('-') && digits == "0");
    if !canonical {
        return Err(err(line, format!("bad integer `{s}`")));
    }
    Int::from_str(s).map_err(|_| err(line, format!("bad integer `{s}`")))
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    let v = parse_int(s, line)?;
    usize::try_from(v).map_err(|_| err(line, format!("bad count `{s}`")))
}

fn parse_vec(s: &str, n: usize, line: usize) -> Result<ExponentVector> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(err(line, format!("expected {n} entries, got {}", parts.len())));
    }
    Ok(ExponentVector(parts.iter().map(|p| parse_int(p, line)).collect::<Result<_>>()?))
}

fn field<'a>(tok: Option<&'a str>, key: &str, line: usize) -> Result<&'a str> {
    let tok = tok.ok_or_else(|| err(line, format!("missing `{key}=`")))?;
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| err(line, format!("expected `{key}=`, got `{tok}`")))
}

/// Parse the GF text format. Only the canonical spelling written by `Display` is accepted,
/// so `parse_gf(s)?.to_string() == s` for every accepted `s` ending in a newline.
pub fn parse_gf(text: &str) -> Result<ShortGf> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let mut toks = header.split(' ');
    if toks.next() != Some("gf") {
        return Err(err(1, "expected `gf` header"));
    }
    let nvars = parse_usize(field(toks.next(), "nvars", 1)?, 1)?;
    let index = parse_usize(field(toks.next(), "index", 1)?, 1)?;
    if toks.next().is_some() {
        return Err(err(1, "trailing tokens in header"));
    }
    if nvars == 0 {
        return Err(err(1, "nvars must be positive"));
    }
    let mut terms = Vec::new();
    for (ln, l) in lines {
        let mut toks = l.split(' ');
        if toks.next() != Some("term") {
            return Err(err(ln, "expected `term`"));
        }
        let c = field(toks.next(), "c", ln)?;
        let (p, q) = c.split_once('/').ok_or_else(|| err(ln, "coefficient must be p/q"))?;
        let p = parse_int(p, ln)?;
        let q = parse_int(q, ln)?;
        if !q.is_positive() || !p.gcd(&q).is_one() {
            return Err(err(ln, "coefficient must be reduced with positive denominator"));
        }
        let a = parse_vec(field(toks.next(), "a", ln)?, nvars, ln)?;
        let b = field(toks.next(), "b", ln)?;
        let dens = if b.is_empty() {
            Vec::new()
        } else {
            b.split(';').map(|v| parse_vec(v, nvars, ln)).collect::<Result<Vec<_>>>()?
        };
        if toks.next().is_some() {
            return Err(err(ln, "trailing tokens"));
        }
        if dens.iter().any(|d| d.is_zero()) {
            return Err(err(ln, "zero denominator vector"));
        }
        if dens.len() > index {
            return Err(err(ln, "denominator count exceeds declared index"));
        }
        terms.push(GfTerm::new(Rat::new_raw(p, q), a, dens));
    }
    ShortGf::with_bound(nvars, index, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = "gf nvars=2 index=2\nterm c=-3/2 a=0,5 b=1,0;0,-1\nterm c=1/1 a=-7,0 b=\n";
        let f = parse_gf(s).unwrap();
        assert_eq!(f.to_string(), s);
        assert_eq!(f.terms.len(), 2);
    }

    #[test]
    fn empty_gf() {
        let s = "gf nvars=1 index=0\n";
        assert_eq!(parse_gf(s).unwrap().to_string(), s);
    }

    #[test]
    fn rejects_noncanonical() {
        for s in [
            "gf nvars=1 index=1\nterm c=2/4 a=0 b=1\n",
            "gf nvars=1 index=1\nterm c=1/1 a=00 b=1\n",
            "gf nvars=1 index=1\nterm c=1/1 a=0 b=0\n",
            "gf nvars=1 index=0\nterm c=1/1 a=0 b=1\n",
            "gf nvars=1 index=1\nterm c=1/1 a=0,1 b=\n",
            "gf nvars=1  index=1\n",
            "gf nvars=0 index=0\n",
            "",
        ] {
            assert!(parse_gf(s).is_err(), "{s:?}");
        }
    }
}
