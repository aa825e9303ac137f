//! Exact rational helpers shared by every engine.

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational used for weights, payoffs and probabilities.
pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("rational literal {0:?} does not fit in 64-bit numerator/denominator")]
    Overflow(String),
}

/// Parses `"p/q"`, an integer `"p"`, or an exact decimal such as `"0.92"`
/// or `"1e-6"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    parse_big_rational(text).and_then(|big| {
        to_small(&big).ok_or_else(|| ParseRationalError::Overflow(text.to_string()))
    })
}

/// Same grammar as [`parse_rational`] without the 64-bit limit.
pub fn parse_big_rational(text: &str) -> Result<BigRational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(text.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| malformed())?;
        let den: BigInt = den.trim().parse().map_err(|_| malformed())?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(text.to_string()));
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| malformed())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(malformed());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().map_err(|_| malformed())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

pub fn to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn to_small(r: &BigRational) -> Option<Rational> {
    Some(Rational::new(r.numer().to_i64()?, r.denom().to_i64()?))
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn big_to_f64(r: &BigRational) -> f64 {
    // numerator and denominator may exceed f64 range separately
    let (n, d) = (r.numer(), r.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// Rounds to two decimals the way the published tables do.
pub fn round2(r: &Rational) -> f64 {
    (to_f64(r) * 100.0).round() / 100.0
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i64 {
    values
        .into_iter()
        .fold(1i64, |acc, v| num_integer::lcm(acc, *v.denom()))
}

/// Formats `a·v0 + b·v1` as `2v0+13v1`, or `1/2*v0-v1` for fractional
/// coefficients, dropping zero terms.
pub fn fmt_affine_v(a: &Rational, b: &Rational) -> String {
    let term = |c: &Rational, name: &str| -> Option<String> {
        if c.is_zero() {
            None
        } else if c.is_one() {
            Some(name.to_string())
        } else if (-*c).is_one() {
            Some(format!("-{name}"))
        } else if c.is_integer() {
            Some(format!("{}{name}", c.to_integer()))
        } else {
            Some(format!("{}*{name}", fmt_rational(c)))
        }
    };
    match (term(a, "v0"), term(b, "v1")) {
        (None, None) => "0".to_string(),
        (Some(x), None) | (None, Some(x)) => x,
        (Some(x), Some(y)) => {
            if b.is_negative() {
                format!("{x}{y}")
            } else {
                format!("{x}+{y}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("1/26").unwrap(), Rational::new(1, 26));
        assert_eq!(parse_rational(" 3 ").unwrap(), Rational::from_integer(3));
        assert_eq!(parse_rational("0.92").unwrap(), Rational::new(23, 25));
        assert_eq!(parse_rational("1e-6").unwrap(), Rational::new(1, 1_000_000));
        assert_eq!(parse_rational("3.01").unwrap(), Rational::new(301, 100));
        assert_eq!(parse_rational("-2/4").unwrap(), Rational::new(-1, 2));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_rational(""), Err(ParseRationalError::Empty)));
        assert!(matches!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("a/b"), Err(ParseRationalError::Malformed(_))));
        assert!(matches!(parse_rational("1.2.3"), Err(ParseRationalError::Malformed(_))));
        assert!(matches!(parse_rational("."), Err(ParseRationalError::Malformed(_))));
    }

    #[test]
    fn affine_formatting() {
        let r = Rational::from_integer;
        assert_eq!(fmt_affine_v(&r(2), &r(1)), "2v0+v1");
        assert_eq!(fmt_affine_v(&r(-3), &r(-2)), "-3v0-2v1");
        assert_eq!(fmt_affine_v(&r(0), &r(5)), "5v1");
        assert_eq!(fmt_affine_v(&r(0), &r(0)), "0");
        assert_eq!(fmt_affine_v(&Rational::new(1, 2), &r(-1)), "1/2*v0-v1");
    }
}
