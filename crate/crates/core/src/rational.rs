//! Exact rational values for targets, average distances, and deviations.
//!
//! Comparisons against user targets must be exact, so no floating point
//! anywhere: values are `i128` ratios, parsed from `p/q`, integer, or
//! plain decimal forms, and rendered back as decimals by long division.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Largest numerator/denominator magnitude accepted from input. Keeps
/// every cross-multiplication against distance sums inside `i128`.
const MAX_INPUT_MAGNITUDE: i128 = 10_000_000_000_000_000_000;

/// Parses `p/q`, an integer, or a decimal such as `1.25` into an exact
/// rational. Numerator and denominator magnitudes are capped at `10^19`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_owned());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let checked = |p: i128, q: i128| -> Result<Rational> {
        if q == 0 || p.abs() > MAX_INPUT_MAGNITUDE || q.abs() > MAX_INPUT_MAGNITUDE {
            Err(bad())
        } else {
            Ok(Ratio::new(p, q))
        }
    };
    if let Some((num, den)) = s.split_once('/') {
        let p: i128 = num.trim().parse().map_err(|_| bad())?;
        let q: i128 = den.trim().parse().map_err(|_| bad())?;
        return checked(p, q);
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if frac_part.len() > 18 {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let whole: i128 = if int_part == "-" || int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let frac: i128 = frac_part.parse().map_err(|_| bad())?;
        let scale: i128 = 10i128.pow(frac_part.len() as u32);
        let magnitude = whole
            .unsigned_abs()
            .checked_mul(scale as u128)
            .and_then(|m| m.checked_add(frac as u128))
            .ok_or_else(bad)? as i128;
        let signed = if negative || whole < 0 { -magnitude } else { magnitude };
        return checked(signed, scale);
    }
    let v: i128 = s.parse().map_err(|_| bad())?;
    checked(v, 1)
}

/// Renders a rational as a decimal with at most `sig` significant digits.
/// Terminating expansions print exactly (trailing zeros trimmed); others
/// round half-up on the last kept digit.
pub fn format_decimal(value: &Rational, sig: usize) -> String {
    assert!(sig > 0);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let p = value.numer().unsigned_abs();
    let q = value.denom().unsigned_abs();

    let int_part = p / q;
    let mut rem = p % q;
    let int_str = int_part.to_string();
    let mut digits: Vec<u8> = Vec::new();
    let mut sig_used = if int_part == 0 { 0 } else { int_str.len() };
    let mut leading_zeros_pending = int_part == 0;

    // Long division, one decimal digit at a time. Leading fractional
    // zeros of a value < 1 do not count toward significance.
    while rem != 0 && sig_used < sig {
        rem *= 10;
        let d = (rem / q) as u8;
        rem %= q;
        digits.push(d);
        if leading_zeros_pending && d == 0 {
            continue;
        }
        leading_zeros_pending = false;
        sig_used += 1;
    }

    if rem != 0 {
        // Rounding: inspect one more digit, carry through the kept ones.
        let next = (rem * 10 / q) as u8;
        if next >= 5 {
            let mut i = digits.len();
            let mut carry = true;
            while carry && i > 0 {
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    carry = false;
                }
            }
            if carry {
                let bumped = (int_part + 1).to_string();
                return render(negative, &bumped, &trim(digits));
            }
        }
    }

    render(negative, &int_str, &trim(digits))
}

fn trim(mut digits: Vec<u8>) -> Vec<u8> {
    while digits.last() == Some(&0) {
        digits.pop();
    }
    digits
}

fn render(negative: bool, int_str: &str, digits: &[u8]) -> String {
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(int_str);
    if !digits.is_empty() {
        out.push('.');
        for &d in digits {
            out.push((b'0' + d) as char);
        }
    }
    out
}
