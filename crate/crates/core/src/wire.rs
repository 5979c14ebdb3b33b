//! Text encoding of polynomials and rational functions.
//!
//! A polynomial is written as its coefficients separated by commas, lowest
//! T-degree first. Each coefficient is the integer code `Σ d_i p^i` of a field
//! element written in base p, most significant digit first, so a coefficient
//! is exactly its F_p-coordinate vector read from the top. Over F_2 the string
//! `0,1,1` is T + T²; over F_4 = F_2[s]/(s²+s+1) the string `10,1` is s + T.
//! The zero polynomial is `0`. A rational function is `num/den`, or just
//! `num` when the denominator is 1.

use crate::algebra::{Fe, Gf, RatFn, RatFnField};
use crate::error::{Error, Result};
use crate::field::PolyT;

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub fn format_coeff(p: u32, c: Fe) -> String {
    if c.0 == 0 {
        return "0".into();
    }
    let mut v = c.0;
    let mut out = Vec::new();
    while v > 0 {
        out.push(DIGITS[(v % p) as usize]);
        v /= p;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

pub fn format_poly(p: u32, f: &[Fe]) -> String {
    if f.is_empty() {
        return "0".into();
    }
    f.iter()
        .map(|&c| format_coeff(p, c))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn format_ratfn(p: u32, x: &RatFn) -> String {
    if x.den.len() == 1 {
        format_poly(p, &x.num)
    } else {
        format!("{}/{}", format_poly(p, &x.num), format_poly(p, &x.den))
    }
}

/// Parses a polynomial over `field`; trailing zero coefficients are dropped.
pub fn parse_poly(field: &Gf, s: &str) -> Result<PolyT> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = Vec::new();
    for group in s.split(',') {
        let g = group.trim();
        let code = u32::from_str_radix(g, field.p())
            .map_err(|_| Error::Parse(format!("bad coefficient {g:?} in base {}", field.p())))?;
        if code >= field.size() {
            return Err(Error::Parse(format!(
                "coefficient {g:?} outside a field of {} elements",
                field.size()
            )));
        }
        out.push(Fe(code));
    }
    while out.last() == Some(&Fe(0)) {
        out.pop();
    }
    Ok(out)
}

pub fn parse_ratfn(k: &RatFnField, s: &str) -> Result<RatFn> {
    match s.split_once('/') {
        None => Ok(k.from_poly(&parse_poly(k.gf(), s)?)),
        Some((n, d)) => {
            let num = parse_poly(k.gf(), n)?;
            let den = parse_poly(k.gf(), d)?;
            if den.is_empty() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(k.frac(&num, &den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    #[test]
    fn round_trips() {
        let f2 = Gf::prime(2).unwrap();
        assert_eq!(parse_poly(&f2, "0,1,1").unwrap(), vec![Fe(0), Fe(1), Fe(1)]);
        assert_eq!(format_poly(2, &[Fe(0), Fe(1), Fe(1)]), "0,1,1");
        assert_eq!(parse_poly(&f2, "0").unwrap(), vec![]);
        assert_eq!(format_poly(2, &[]), "0");
        let f4 = Gf::new(2, &[1, 1, 1], 2).unwrap();
        assert_eq!(parse_poly(&f4, "10,1").unwrap(), vec![Fe(2), Fe(1)]);
        assert_eq!(format_poly(2, &[Fe(3), Fe(0), Fe(1)]), "11,0,1");
        assert!(parse_poly(&f4, "100").is_err());
        assert!(parse_poly(&f2, "2").is_err());
        let k = RatFnField::new(f2);
        let x = parse_ratfn(&k, "1/0,1").unwrap();
        assert_eq!(format_ratfn(2, &x), "1/0,1");
        assert_eq!(parse_ratfn(&k, "0,1/0,1").unwrap(), k.one());
    }
}
