//! Exact fractions for supports, confidences and thresholds.
//!
//! Counts stay integers all the way through; a threshold given as `f64` is
//! read as the decimal it prints as (`0.2` means 1/5, not the nearest
//! binary double), so boundary comparisons like "support over 0.2" behave
//! the way they read.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Exact ratio of two counts.
pub type Fraction = Ratio<u64>;

/// Largest number of fractional decimal digits a threshold may carry.
const MAX_DECIMALS: u32 = 19;

/// A threshold in `(0, 1]`, held exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Threshold {
    value: Fraction,
    raw: f64,
}

impl Threshold {
    /// Parses a fraction in `(0, 1]`. `what` names the parameter in errors.
    pub fn new(raw: f64, what: &str) -> Result<Self> {
        if !raw.is_finite() || raw <= 0.0 || raw > 1.0 {
            return Err(Error::Config(format!("{what} must be in (0, 1], got {raw}")));
        }
        let value = decimal_fraction(raw).ok_or_else(|| {
            Error::Config(format!(
                "{what} {raw} needs more than {MAX_DECIMALS} decimal places"
            ))
        })?;
        Ok(Threshold { value, raw })
    }

    pub fn as_fraction(&self) -> Fraction {
        self.value
    }

    pub fn as_f64(&self) -> f64 {
        self.raw
    }

    /// `count / total >= self`
    pub fn is_met_by(&self, count: u64, total: u64) -> bool {
        total > 0 && Fraction::new(count, total) >= self.value
    }

    /// `count / total > self`
    pub fn is_exceeded_by(&self, count: u64, total: u64) -> bool {
        total > 0 && Fraction::new(count, total) > self.value
    }

    /// Smallest count `c` with `c / total >= self`.
    pub fn min_count(&self, total: u64) -> u64 {
        let num = *self.value.numer() as u128 * total as u128;
        let den = *self.value.denom() as u128;
        num.div_ceil(den) as u64
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.raw)
    }
}

fn decimal_fraction(raw: f64) -> Option<Fraction> {
    // `Display` for f64 prints the shortest round-tripping decimal, never
    // in exponent form.
    let text = raw.to_string();
    let (int_part, frac_part) = text.split_once('.').unwrap_or((&text, ""));
    let decimals = frac_part.len() as u32;
    if decimals > MAX_DECIMALS {
        return None;
    }
    let den = 10u64.checked_pow(decimals)?;
    let digits = format!("{int_part}{frac_part}");
    let num: u64 = digits.parse().ok()?;
    Some(Fraction::new(num, den))
}

/// Renders a fraction with six decimal places.
pub fn format_decimal(value: Fraction) -> String {
    format!("{:.6}", to_f64(value))
}

pub fn to_f64(value: Fraction) -> f64 {
    *value.numer() as f64 / *value.denom() as f64
}
