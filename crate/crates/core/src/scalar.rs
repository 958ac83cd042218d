//! Ratio arithmetic generic over the numeric type that carries fractions.
//!
//! Hit counts and supports are always `u64`; only the derived fractions
//! (success ratios, confidences) vary in representation. [`Scalar`] is
//! blanket-implemented for every num-traits numeric type, which covers
//! `f32`/`f64` as well as [`crate::Exact`] rationals.

use std::cmp::Ordering;

use num_traits::{FromPrimitive, Num, ToPrimitive};
use thiserror::Error;

use crate::Exact;

/// Numeric type able to represent a ratio of two counts.
pub trait Scalar: Clone + PartialEq + PartialOrd {
    /// Builds `numer / denom`. `denom` must be nonzero and both counts
    /// must be representable in the target type.
    fn from_count_ratio(numer: u64, denom: u64) -> Self;

    /// Nearest `f64`, for display and tolerance checks.
    fn approx_f64(&self) -> f64;
}

impl<T> Scalar for T
where
    T: Num + FromPrimitive + ToPrimitive + PartialOrd + Clone,
{
    fn from_count_ratio(numer: u64, denom: u64) -> Self {
        debug_assert!(denom != 0, "ratio denominator must be nonzero");
        let n = T::from_u64(numer).expect("count not representable in scalar type");
        let d = T::from_u64(denom).expect("count not representable in scalar type");
        n / d
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Maximum significant digits used when printing ratios.
pub const RATIO_SIG_DIGITS: u32 = 8;

/// Renders `numer / denom` (a ratio in `[0, 1]`) as a decimal string with
/// up to [`RATIO_SIG_DIGITS`] significant digits.
pub fn format_ratio(numer: u64, denom: u64) -> String {
    format_ratio_sig(numer, denom, RATIO_SIG_DIGITS)
}

/// Exact decimal rendering of `numer / denom` with up to `sig` significant
/// digits. Rounds half-to-even and drops trailing zeros, so `13/20` prints
/// as `0.65` while `27/31` prints as `0.87096774`.
///
/// Works by long division on the integer counts; no float is involved.
/// Only ratios in `[0, 1]` are supported, which is all the report ever
/// prints.
pub fn format_ratio_sig(numer: u64, denom: u64, sig: u32) -> String {
    assert!(denom != 0, "ratio denominator must be nonzero");
    assert!(numer <= denom, "ratio {numer}/{denom} outside [0, 1]");
    assert!(sig >= 1, "at least one significant digit required");

    if numer == 0 {
        return "0".to_string();
    }
    if numer == denom {
        return "1".to_string();
    }

    let denom_wide = u128::from(denom);
    let mut rem = u128::from(numer);
    let mut digits: Vec<u8> = Vec::with_capacity(sig as usize);
    let mut leading_zeros = 0u32;

    // Skip zeros between the decimal point and the first significant
    // digit; they do not count toward `sig`.
    loop {
        rem *= 10;
        let digit = (rem / denom_wide) as u8;
        rem %= denom_wide;
        if digit == 0 {
            leading_zeros += 1;
        } else {
            digits.push(digit);
            break;
        }
    }

    while (digits.len() as u32) < sig && rem != 0 {
        rem *= 10;
        digits.push((rem / denom_wide) as u8);
        rem %= denom_wide;
    }

    // Round half-to-even on the remaining tail.
    let round_up = match (rem * 2).cmp(&denom_wide) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => digits.last().is_some_and(|d| d % 2 == 1),
    };
    if round_up {
        let mut idx = digits.len();
        loop {
            if idx == 0 {
                // Carry past the leading digit: 0.0099.. -> 0.01,
                // 0.99.. -> 1.
                if leading_zeros == 0 {
                    return "1".to_string();
                }
                leading_zeros -= 1;
                digits.insert(0, 1);
                break;
            }
            idx -= 1;
            if digits[idx] == 9 {
                digits[idx] = 0;
            } else {
                digits[idx] += 1;
                break;
            }
        }
    }

    while digits.last() == Some(&0) {
        digits.pop();
    }

    let mut out = String::with_capacity(2 + leading_zeros as usize + digits.len());
    out.push_str("0.");
    for _ in 0..leading_zeros {
        out.push('0');
    }
    for d in digits {
        out.push((b'0' + d) as char);
    }
    out
}

/// Error parsing a decimal literal into an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid decimal {text:?}: {reason}")]
pub struct DecimalParseError {
    pub text: String,
    pub reason: &'static str,
}

/// Parses a non-negative decimal literal (`"1"`, `"0.5"`, `".25"`) into
/// an exact rational, so thresholds given on the command line compare
/// exactly: `0.8` really is `4/5`.
pub fn parse_decimal(text: &str) -> Result<Exact, DecimalParseError> {
    let err = |reason| DecimalParseError {
        text: text.to_string(),
        reason,
    };

    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(err("expected only digits and an optional point"));
    }
    if frac_part.len() > 18 {
        return Err(err("more than 18 fractional digits"));
    }

    let mut numer: u128 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer
            .checked_mul(10)
            .and_then(|n| n.checked_add(u128::from(b - b'0')))
            .ok_or_else(|| err("value too large"))?;
    }
    let denom = 10u128.pow(frac_part.len() as u32);
    if numer > u128::from(u64::MAX) {
        return Err(err("value too large"));
    }
    Ok(Exact::new(numer as u64, denom as u64))
}
