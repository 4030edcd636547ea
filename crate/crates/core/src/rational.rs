//! Exact rational scalars and their textual forms.
//!
//! Literals are accepted as integers (`-3`), fractions (`7/6`) or decimals
//! (`-2.5`, converted exactly). Output is always the canonical `n` or `n/d`
//! form so that emitted certificates are stable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n`, `n/d` or a decimal literal, with an optional leading sign.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let bad = || Error::Literal(text.to_string());
    let s = text.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s.strip_prefix('+').unwrap_or(s).trim_start()),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let value = if let Some((num, den)) = body.split_once('/') {
        let num = parse_unsigned_decimal(num.trim()).ok_or_else(bad)?;
        let den = parse_unsigned_decimal(den.trim()).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(bad());
        }
        num / den
    } else {
        parse_unsigned_decimal(body).ok_or_else(bad)?
    };
    Ok(if neg { -value } else { value })
}

fn parse_unsigned_decimal(s: &str) -> Option<Rational> {
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
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(Rational::new(numer, denom))
}

/// Canonical `n` or `n/d` string.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// The rational with the smallest denominator (then smallest magnitude)
/// strictly inside the open interval `(lo, hi)`. `hi = None` means `+∞`.
pub fn simplest_between(lo: &Rational, hi: Option<&Rational>) -> Rational {
    if let Some(h) = hi {
        debug_assert!(lo < h);
        if !h.is_positive() {
            let neg_lo = -lo;
            return -simplest_between(&-h, Some(&neg_lo));
        }
        if lo.is_negative() {
            return Rational::zero();
        }
    } else if lo.is_negative() {
        return Rational::zero();
    }
    // 0 <= lo < hi
    let fl = lo.floor();
    let next = &fl + Rational::one();
    match hi {
        None => next,
        Some(h) if &next < h => next,
        Some(h) => {
            // lo and hi share the integer part `fl`; continue on the reciprocals.
            let lo_frac = lo - &fl;
            let hi_frac = h - &fl;
            let inner_lo = hi_frac.recip();
            let inner = if lo_frac.is_zero() {
                simplest_between(&inner_lo, None)
            } else {
                let inner_hi = lo_frac.recip();
                simplest_between(&inner_lo, Some(&inner_hi))
            };
            fl + inner.recip()
        }
    }
}

/// Least common multiple of the denominators of `qs`.
pub(crate) fn denom_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Greatest common divisor of the numerators of `qs` (zero if all are zero).
pub(crate) fn numer_gcd<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literals() {
        assert_eq!(parse_rational("-2.5").unwrap(), frac(-5, 2));
        assert_eq!(parse_rational("7/6").unwrap(), frac(7, 6));
        assert_eq!(parse_rational("- 1/3").unwrap(), frac(-1, 3));
        assert_eq!(parse_rational("1.50").unwrap(), frac(3, 2));
        assert_eq!(parse_rational(".5").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("42").unwrap(), rat(42));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("-").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&frac(-10, 4)), "-5/2");
        assert_eq!(format_rational(&rat(0)), "0");
        assert_eq!(format_rational(&frac(19, 12)), "19/12");
    }

    #[test]
    fn simplest_examples() {
        assert_eq!(simplest_between(&frac(-3, 2), Some(&frac(3, 2))), rat(0));
        assert_eq!(simplest_between(&frac(141, 100), Some(&rat(2))), frac(3, 2));
        assert_eq!(simplest_between(&rat(1), Some(&rat(2))), frac(3, 2));
        assert_eq!(simplest_between(&rat(2), None), rat(3));
        assert_eq!(simplest_between(&rat(-5), Some(&rat(-4))), frac(-9, 2));
        assert_eq!(simplest_between(&frac(1, 3), Some(&frac(1, 2))), frac(2, 5));
    }

    proptest! {
        #[test]
        fn format_parse_roundtrip(n in -10_000i64..10_000, d in 1i64..500) {
            let q = frac(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }

        #[test]
        fn simplest_is_strictly_inside(a in -300i64..300, b in -300i64..300, d in 1i64..40, e in 1i64..40) {
            let (x, y) = (frac(a, d), frac(b, e));
            prop_assume!(x != y);
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            let r = simplest_between(&lo, Some(&hi));
            prop_assert!(lo < r && r < hi);
        }
    }
}
