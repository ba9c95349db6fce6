//! Exact rational arithmetic helpers.
//!
//! Every probability in this crate is a [`Rational`] (arbitrary-precision,
//! always in lowest terms). Floating point appears only at the edges: the
//! log-space diagnostics in [`crate::belief`] and the decimal rendering used
//! by front ends. Both conversions live here so the rest of the crate never
//! touches `f64` directly.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, the crate's probability type.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor used pervasively in tests and fixtures.
///
/// Panics if `denom == 0`.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// True iff `r` lies in the closed unit interval.
pub fn is_probability(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// Parses a non-negative decimal literal (`"3"`, `"0.25"`) into an exact
/// rational. Returns `None` on anything else; fraction syntax `a/b` is
/// assembled by callers from separate integer tokens.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Rational::new(numer, denom))
}

/// Natural log of a non-negative rational, exact about the edge cases:
/// `ln(0) = -inf`, and a positive input never produces `-inf` no matter how
/// small, because the log is taken digit-wise (`ln n - ln d`) instead of
/// converting to `f64` first.
pub fn rational_ln(r: &Rational) -> f64 {
    assert!(!r.is_negative(), "rational_ln: negative argument {r}");
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_biguint(r.numer().magnitude()) - ln_biguint(r.denom().magnitude())
}

/// `ln` of a positive big integer via its top 53 bits plus a power-of-two
/// correction; accurate to within a few ulps regardless of magnitude.
fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        (x.to_u64().expect("fits in u64") as f64).ln()
    } else {
        let shift = bits - 53;
        let top = (x >> shift).to_u64().expect("53 bits fit in u64") as f64;
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Nearest-`f64` conversion with a log-space fallback for operands whose
/// numerator or denominator overflows `f64` range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64()
        && v.is_finite()
    {
        return v;
    }
    let magnitude = rational_ln(&r.abs()).exp();
    if r.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// Renders a non-negative rational as a decimal rounded (half-up) to
/// `sig_digits` significant digits, trailing zeros trimmed. The boolean is
/// true iff the decimal is exactly `r`.
pub fn decimal_string(r: &Rational, sig_digits: usize) -> (String, bool) {
    assert!(sig_digits >= 1, "need at least one significant digit");
    assert!(!r.is_negative(), "decimal_string: negative argument {r}");
    if r.is_zero() {
        return ("0".to_owned(), true);
    }

    let int_part = r.to_integer();
    let int_digits = if int_part.is_zero() {
        0
    } else {
        int_part.to_string().len()
    };
    let decimals = if int_digits >= sig_digits {
        0
    } else if int_digits > 0 {
        sig_digits - int_digits
    } else {
        // Count zeros between the point and the first significant digit.
        let ten = Rational::from_integer(BigInt::from(10));
        let mut zeros = 0usize;
        let mut scaled = r * &ten;
        while scaled < Rational::one() {
            zeros += 1;
            scaled *= &ten;
        }
        zeros + sig_digits
    };

    let scale = BigInt::from(10u32).pow(decimals as u32);
    let scaled = r * Rational::from_integer(scale);
    let exact = scaled.is_integer();
    // Round half up: floor((2n + d) / 2d); operands are non-negative, so
    // truncating division is floor division.
    let rounded: BigInt = (scaled.numer() * 2u32 + scaled.denom()) / (scaled.denom() * 2u32);

    let mut digits = rounded.to_string();
    let text = if decimals == 0 {
        digits
    } else {
        if digits.len() <= decimals {
            digits = format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits);
        }
        let point = digits.len() - decimals;
        let mut s = format!("{}.{}", &digits[..point], &digits[point..]);
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
        s
    };
    (text, exact)
}
