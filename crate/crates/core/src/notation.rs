//! Text encodings for ring elements and generator blocks.
//!
//! * `r1`: the symbols `0 1 u 3` for `R_1` (`3` stands for `1+u`).
//! * `hex`: one hex digit per element of `R_2`; the digit's bits `abcd`
//!   are the coefficients of `uv, v, u, 1`.
//! * `generic`: a `+`- or `,`-separated list of monomials such as
//!   `1+u1+u1u2`, for any `k`.
//!
//! A generator is a list of blocks separated by `|`, optionally wrapped in
//! parentheses: `(1u|30|u3)`. In `r1` and `hex` each character of a block is
//! one coefficient, lowest degree first; in `generic` the coefficients of a
//! block are separated by `;`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{basis_len, check_k, RingElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Notation {
    R1,
    Hex,
    Generic,
}

impl Notation {
    /// `r1` for `k = 1`, `hex` for `k = 2`, `generic` otherwise.
    pub fn default_for(k: u32) -> Notation {
        match k {
            1 => Notation::R1,
            2 => Notation::Hex,
            _ => Notation::Generic,
        }
    }

    fn check(self, k: u32) -> Result<()> {
        check_k(k)?;
        match (self, k) {
            (Notation::R1, 1) | (Notation::Hex, 2) | (Notation::Generic, _) => Ok(()),
            (n, k) => Err(Error::parse(format!("notation {n} cannot encode R_{k}"))),
        }
    }
}

impl fmt::Display for Notation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Notation::R1 => "r1",
            Notation::Hex => "hex",
            Notation::Generic => "generic",
        })
    }
}

impl FromStr for Notation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r1" | "r1-symbols" | "symbols" => Ok(Notation::R1),
            "hex" => Ok(Notation::Hex),
            "generic" => Ok(Notation::Generic),
            other => Err(Error::parse(format!("unknown notation '{other}'"))),
        }
    }
}

fn parse_r1_symbol(c: char) -> Result<RingElement> {
    let coeffs = match c {
        '0' => 0,
        '1' => 1,
        'u' | 'U' | '2' => 2,
        '3' => 3,
        other => return Err(Error::parse(format!("invalid R_1 symbol '{other}'"))),
    };
    Ok(RingElement::from_raw(1, coeffs))
}

fn parse_hex_digit(c: char) -> Result<RingElement> {
    let d = c
        .to_digit(16)
        .ok_or_else(|| Error::parse(format!("invalid hex digit '{c}'")))?;
    Ok(RingElement::from_raw(2, d as u64))
}

/// Parses one monomial (`1`, `u1u3`, and for `k <= 2` also `u`, `v`, `uv`).
fn parse_monomial(text: &str, k: u32) -> Result<usize> {
    let t = text.trim();
    if t == "1" {
        return Ok(0);
    }
    if k <= 2 {
        let alias = match t {
            "u" => Some(1),
            "v" if k == 2 => Some(2),
            "uv" | "vu" if k == 2 => Some(3),
            _ => None,
        };
        if let Some(i) = alias {
            return Ok(i);
        }
    }
    let mut index = 0usize;
    let mut rest = t;
    if rest.is_empty() {
        return Err(Error::parse("empty monomial"));
    }
    while !rest.is_empty() {
        let Some(after) = rest.strip_prefix('u') else {
            return Err(Error::parse(format!("invalid monomial '{t}'")));
        };
        let digits: String = after.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(Error::parse(format!("invalid monomial '{t}'")));
        }
        let i: u32 = digits
            .parse()
            .map_err(|_| Error::parse(format!("invalid monomial '{t}'")))?;
        if i == 0 || i > k {
            return Err(Error::parse(format!(
                "variable u{i} does not exist in R_{k}"
            )));
        }
        let bit = 1usize << (i - 1);
        if index & bit != 0 {
            return Err(Error::parse(format!("repeated variable in monomial '{t}'")));
        }
        index |= bit;
        rest = &after[digits.len()..];
    }
    Ok(index)
}

fn parse_generic(text: &str, k: u32) -> Result<RingElement> {
    let t = text.trim();
    if t == "0" {
        return Ok(RingElement::zero(k));
    }
    let mut coeffs = 0u64;
    for term in t.split(['+', ',']) {
        coeffs ^= 1 << parse_monomial(term, k)?;
    }
    RingElement::new(k, coeffs)
}

pub fn parse_element(text: &str, k: u32, notation: Notation) -> Result<RingElement> {
    notation.check(k)?;
    let t = text.trim();
    match notation {
        Notation::R1 | Notation::Hex => {
            let mut chars = t.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::parse(format!(
                    "expected a single {notation} symbol, got '{t}'"
                )));
            };
            if notation == Notation::R1 {
                parse_r1_symbol(c)
            } else {
                parse_hex_digit(c)
            }
        }
        Notation::Generic => parse_generic(t, k),
    }
}

fn monomial_name(index: usize) -> String {
    if index == 0 {
        return "1".to_string();
    }
    (0..usize::BITS)
        .filter(|b| index >> b & 1 == 1)
        .map(|b| format!("u{}", b + 1))
        .collect()
}

/// `1+u1+u1u2` style, monomials by increasing index; `0` for zero.
pub fn format_generic(a: &RingElement) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    (0..basis_len(a.k()))
        .filter(|&i| a.coeff(i))
        .map(monomial_name)
        .collect::<Vec<_>>()
        .join("+")
}

pub fn format_element(a: &RingElement, notation: Notation) -> Result<String> {
    notation.check(a.k())?;
    Ok(match notation {
        Notation::R1 => ["0", "1", "u", "3"][a.coeffs() as usize].to_string(),
        Notation::Hex => format!("{:x}", a.coeffs()),
        Notation::Generic => format_generic(a),
    })
}

pub fn parse_block(text: &str, k: u32, notation: Notation) -> Result<Vec<RingElement>> {
    notation.check(k)?;
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::parse("empty generator block"));
    }
    match notation {
        Notation::R1 => t.chars().map(parse_r1_symbol).collect(),
        Notation::Hex => t.chars().map(parse_hex_digit).collect(),
        Notation::Generic => t.split(';').map(|e| parse_generic(e, k)).collect(),
    }
}

pub fn format_block(block: &[RingElement], notation: Notation) -> Result<String> {
    let parts = block
        .iter()
        .map(|a| format_element(a, notation))
        .collect::<Result<Vec<_>>>()?;
    Ok(match notation {
        Notation::Generic => parts.join(";"),
        _ => parts.concat(),
    })
}

/// Parses `(b1|b2|…)` into its coefficient blocks. All blocks must share a length.
pub fn parse_generator(text: &str, k: u32, notation: Notation) -> Result<Vec<Vec<RingElement>>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t);
    let blocks = inner
        .split('|')
        .map(|b| parse_block(b, k, notation))
        .collect::<Result<Vec<_>>>()?;
    let m = blocks[0].len();
    if blocks.iter().any(|b| b.len() != m) {
        return Err(Error::parse(format!("blocks of unequal length in '{t}'")));
    }
    Ok(blocks)
}

pub fn format_generator(blocks: &[Vec<RingElement>], notation: Notation) -> Result<String> {
    let parts = blocks
        .iter()
        .map(|b| format_block(b, notation))
        .collect::<Result<Vec<_>>>()?;
    Ok(format!("({})", parts.join("|")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_examples() {
        let b = parse_element("b", 2, Notation::Hex).unwrap();
        assert_eq!(format_generic(&b), "1+u1+u1u2");
        let seven = parse_element("7", 2, Notation::Hex).unwrap();
        assert_eq!(format_generic(&seven), "1+u1+u2");
        assert_eq!(parse_element("F", 2, Notation::Hex).unwrap().coeffs(), 15);
    }

    #[test]
    fn r1_examples() {
        let three = parse_element("3", 1, Notation::R1).unwrap();
        assert_eq!(three, parse_element("1+u", 1, Notation::Generic).unwrap());
        assert_eq!(format_element(&three, Notation::R1).unwrap(), "3");
        assert_eq!(parse_element("u", 1, Notation::R1).unwrap().coeffs(), 2);
    }

    #[test]
    fn generic_parsing() {
        let a = parse_element("1+u1+u1u2", 2, Notation::Generic).unwrap();
        assert_eq!(a.coeffs(), 0b1011);
        assert_eq!(
            parse_element("u, v", 2, Notation::Generic)
                .unwrap()
                .coeffs(),
            6
        );
        assert_eq!(
            parse_element("uv+u2u1", 2, Notation::Generic)
                .unwrap()
                .coeffs(),
            0
        );
        assert_eq!(
            parse_element("u3", 3, Notation::Generic).unwrap().coeffs(),
            16
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_element("g", 2, Notation::Hex).is_err());
        assert!(parse_element("2", 2, Notation::R1).is_err());
        assert!(parse_element("b", 1, Notation::Hex).is_err());
        assert!(parse_element("ab", 2, Notation::Hex).is_err());
        assert!(parse_element("u3", 2, Notation::Generic).is_err());
        assert!(parse_element("u1u1", 2, Notation::Generic).is_err());
        assert!(parse_element("x", 2, Notation::Generic).is_err());
        assert!(parse_generator("(01|1)", 1, Notation::R1).is_err());
    }

    #[test]
    fn every_element_round_trips() {
        for k in 1..=3 {
            for n in [Notation::R1, Notation::Hex, Notation::Generic] {
                if n.check(k).is_err() {
                    continue;
                }
                for a in RingElement::all(k) {
                    let s = format_element(&a, n).unwrap();
                    assert_eq!(parse_element(&s, k, n).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn generator_strings() {
        let g = parse_generator("(1u|30|u3)", 1, Notation::R1).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[0][1].coeffs(), 2);
        assert_eq!(g[1][0].coeffs(), 3);
        assert_eq!(format_generator(&g, Notation::R1).unwrap(), "(1u|30|u3)");
        let h = parse_generator("5F|57", 2, Notation::Hex).unwrap();
        assert_eq!(format_generator(&h, Notation::Hex).unwrap(), "(5f|57)");
        let gen = parse_generator("(1+u1;0|u2;u1u2u3)", 3, Notation::Generic).unwrap();
        assert_eq!(
            format_generator(&gen, Notation::Generic).unwrap(),
            "(1+u1;0|u2;u1u2u3)"
        );
    }
}
