//! Shared text encoding for ring elements: a signed sum of integer multiples
//! of basis units, e.g. `7+2i`, `-3i`, `1+i+j+k`, `2k`. Zero terms are
//! omitted and a unit coefficient of ±1 is written as the bare unit.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Parses `s` into one coefficient for the real part followed by one per
/// entry of `units`.
pub(crate) fn parse_coeffs(s: &str, units: &[char]) -> Result<Vec<BigInt>> {
    let err = || Error::Parse(format!("bad ring element {s:?}"));
    let s = s.trim();
    if s.is_empty() {
        return Err(err());
    }
    let bytes: Vec<char> = s.chars().collect();
    let mut coeffs = vec![BigInt::zero(); units.len() + 1];
    let mut pos = 0;
    while pos < bytes.len() {
        let mut negative = false;
        match bytes[pos] {
            '+' => pos += 1,
            '-' => {
                negative = true;
                pos += 1;
            }
            _ if pos > 0 => return Err(err()),
            _ => {}
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let magnitude = if pos > start {
            let digits: String = bytes[start..pos].iter().collect();
            digits.parse::<BigInt>().map_err(|_| err())?
        } else {
            BigInt::one()
        };
        let slot = match bytes.get(pos) {
            Some(c) if units.contains(c) => {
                pos += 1;
                1 + units.iter().position(|u| u == c).unwrap()
            }
            _ if pos == start => return Err(err()),
            _ => 0,
        };
        coeffs[slot] += if negative { -magnitude } else { magnitude };
    }
    Ok(coeffs)
}

pub(crate) fn format_coeffs(coeffs: &[BigInt], units: &[&str]) -> String {
    let mut out = String::new();
    for (slot, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        if slot == 0 {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(units[slot - 1]);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parses_gaussian_forms() {
        let u = ['i'];
        assert_eq!(parse_coeffs("7+2i", &u).unwrap(), ints(&[7, 2]));
        assert_eq!(parse_coeffs("-3i", &u).unwrap(), ints(&[0, -3]));
        assert_eq!(parse_coeffs("i", &u).unwrap(), ints(&[0, 1]));
        assert_eq!(parse_coeffs("3-i", &u).unwrap(), ints(&[3, -1]));
        assert_eq!(parse_coeffs("-5", &u).unwrap(), ints(&[-5, 0]));
    }

    #[test]
    fn rejects_garbage() {
        let u = ['i'];
        for bad in ["", "+", "1+", "2x", "1++i", "i3", "-+1"] {
            assert!(parse_coeffs(bad, &u).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_without_zero_terms() {
        let u = ["i", "j", "k"];
        assert_eq!(format_coeffs(&ints(&[1, 1, 1, 1]), &u), "1+i+j+k");
        assert_eq!(format_coeffs(&ints(&[0, 0, 0, 2]), &u), "2k");
        assert_eq!(format_coeffs(&ints(&[0, 0, 0, -1]), &u), "-k");
        assert_eq!(format_coeffs(&ints(&[0, 0, 0, 0]), &u), "0");
        assert_eq!(format_coeffs(&ints(&[-2, 0, 3, 0]), &u), "-2+3j");
    }
}
