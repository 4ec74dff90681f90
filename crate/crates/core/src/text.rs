//! Text forms of polynomials: hex (`0x25`) and symbolic (`x^5+x^2+1`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    /// `0x` followed by upper-case hex digits of the coefficient pattern.
    #[default]
    Hex,
    /// Terms `x^k`, `x`, `1` joined by `+`, highest exponent first.
    Symbolic,
}

fn parse_error(text: &str, reason: impl Into<String>) -> Error {
    Error::Parse { text: text.to_owned(), reason: reason.into() }
}

/// Parses either text form. Whitespace around terms is ignored.
pub fn parse<W: Word>(text: &str) -> Result<Poly<W>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(parse_error(text, "empty input"));
    }
    if let Some(digits) = trimmed.strip_prefix("0x").or_else(|| trimmed.strip_prefix("0X")) {
        parse_hex(text, digits)
    } else {
        parse_symbolic(text, trimmed)
    }
}

fn parse_hex<W: Word>(text: &str, digits: &str) -> Result<Poly<W>> {
    if digits.is_empty() {
        return Err(parse_error(text, "no hex digits after 0x"));
    }
    let mut bits = W::zero();
    for c in digits.chars() {
        let v = c.to_digit(16).ok_or_else(|| parse_error(text, format!("invalid hex digit {c:?}")))?;
        if bits.leading_zeros() < 4 {
            return Err(parse_error(text, format!("does not fit in {} bits", W::BITS)));
        }
        bits = (bits << 4) | W::from_u64(v as u64);
    }
    Ok(Poly::from_bits(bits))
}

fn parse_symbolic<W: Word>(text: &str, body: &str) -> Result<Poly<W>> {
    if body == "0" {
        return Ok(Poly::zero());
    }
    let mut acc = Poly::<W>::zero();
    for term in body.split('+') {
        let term = term.trim();
        let exp = match term {
            "" => return Err(parse_error(text, "empty term")),
            "1" => 0,
            "x" => 1,
            _ => {
                let digits =
                    term.strip_prefix("x^").ok_or_else(|| parse_error(text, format!("unrecognised term {term:?}")))?;
                digits.parse::<u32>().map_err(|_| parse_error(text, format!("bad exponent in {term:?}")))?
            }
        };
        if exp >= W::BITS {
            return Err(parse_error(text, format!("exponent {exp} does not fit in {} bits", W::BITS)));
        }
        if acc.coeff(exp) {
            return Err(parse_error(text, format!("repeated term x^{exp}")));
        }
        acc += Poly::monomial(exp)?;
    }
    Ok(acc)
}

pub fn format<W: Word>(f: Poly<W>, style: Style) -> String {
    match style {
        Style::Hex => format!("{:#X}", f.bits()).replacen("0X", "0x", 1),
        Style::Symbolic => {
            if f.is_zero() {
                return "0".to_owned();
            }
            let mut exps: Vec<u32> = f.exponents().collect();
            exps.reverse();
            exps.iter()
                .map(|&k| match k {
                    0 => "1".to_owned(),
                    1 => "x".to_owned(),
                    _ => format!("x^{k}"),
                })
                .collect::<Vec<_>>()
                .join("+")
        }
    }
}

impl<W: Word> FromStr for Poly<W> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Symbolic form; `{:x}`/`{:X}` give the hex form.
impl<W: Word> fmt::Display for Poly<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(*self, Style::Symbolic))
    }
}

impl<W: Word> fmt::UpperHex for Poly<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::UpperHex::fmt(&self.bits(), f)
    }
}

impl<W: Word> fmt::LowerHex for Poly<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.bits(), f)
    }
}
