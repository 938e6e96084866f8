//! Exact rationals and their textual forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"num/den"`, always with an explicit denominator.
pub fn format_fraction(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Compact form: integers print without a denominator.
pub fn format_compact(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format_fraction(x)
    }
}

/// Parses `"7"`, `"-3/4"`, `"1.25"` or `"1e-12"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim().replace('\u{2212}', "-");
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = parse_int(n)?;
        let d: BigInt = parse_int(d)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?;
            (&s[..pos], exp)
        }
        None => (s.as_str(), 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(Error::Parse(format!("no digits in `{s}`")));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("invalid number `{s}`")));
    }
    let all: BigInt = format!("0{whole}{frac}").parse().expect("digits only");
    let scale = exponent - frac.len() as i64;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    t.parse()
        .map_err(|_| Error::Parse(format!("invalid integer `{}`", s.trim())))
}

/// Decimal string with exactly `digits` places after the point, rounded to
/// nearest with ties away from zero.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x.abs() * Rational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let rounded = if r.clone() * 2 >= *scaled.denom() {
        q + BigInt::one()
    } else {
        q
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if x.is_negative() && !rounded_is_zero(&int_part, &frac_part) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

fn rounded_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

/// Nearest `f64`, via a 40-digit decimal expansion.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64()
        .unwrap_or_else(|| to_decimal(x, 40).parse().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("6/8").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse_rational("1e-3").unwrap(), ratio(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), int(250));
        assert_eq!(parse_rational("−1/2").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(to_decimal(&ratio(2, 3), 3), "0.667");
        assert_eq!(to_decimal(&ratio(1, 8), 2), "0.13");
        assert_eq!(to_decimal(&ratio(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal(&ratio(-1, 1000), 2), "0.00");
        assert_eq!(to_decimal(&ratio(5, 2), 0), "3");
        assert_eq!(to_decimal(&int(3), 4), "3.0000");
    }

    #[test]
    fn fraction_rendering() {
        assert_eq!(format_fraction(&int(2)), "2/1");
        assert_eq!(format_compact(&int(2)), "2");
        assert_eq!(format_compact(&ratio(-3, 6)), "-1/2");
    }
}
