//! Exact rational scalars and the extended slope value `Q ∪ {+∞}`.

use std::fmt;
use std::str::FromStr;

use num::bigint::{BigInt, Sign};
use num::{BigRational, Integer, Signed, Zero};

use crate::error::{Error, Result};

/// The only scalar type used by the library.
pub type Rational = BigRational;

/// Shorthand constructor for `num / den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"0.26"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational literal".to_string()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim())
            .map_err(|_| Error::Parse(format!("bad numerator in `{t}`")))?;
        let d = BigInt::from_str(d.trim())
            .map_err(|_| Error::Parse(format!("bad denominator in `{t}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{t}`")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let digits: String = whole.trim_start_matches(['-', '+']).to_string() + frac;
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal literal `{t}`")));
        }
        let n = BigInt::from_str(&digits).expect("digits checked");
        let d = num::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if negative { -r } else { r });
    }
    BigInt::from_str(t)
        .map(Rational::from_integer)
        .map_err(|_| Error::Parse(format!("bad rational literal `{t}`")))
}

/// Canonical text form: lowest terms, positive denominator, `p/q` or bare `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    // BigRational is always kept reduced with a positive denominator.
    r.to_string()
}

/// Decimal approximation with `digits` significant digits, computed by exact long division.
///
/// The last digit is rounded half away from zero.
pub fn approx_decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let negative = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();

    // Find the decimal exponent e with 10^e <= |r| < 10^(e+1).
    let ten = BigInt::from(10);
    let mut exp: i64 = 0;
    {
        let mut n = num.clone();
        let mut d = den.clone();
        while n >= &d * &ten {
            d *= &ten;
            exp += 1;
        }
        while n < d {
            n *= &ten;
            exp -= 1;
        }
    }
    // scaled = round(|r| * 10^(digits - 1 - exp))
    let shift = digits as i64 - 1 - exp;
    let (sn, sd) = if shift >= 0 {
        (num * num::pow(ten.clone(), shift as usize), den)
    } else {
        (num, den * num::pow(ten.clone(), (-shift) as usize))
    };
    let (q, rem) = sn.div_rem(&sd);
    let mut mantissa = if &rem * 2 >= sd { q + 1 } else { q };
    if mantissa.to_string().len() > digits {
        // rounding carried into a new digit (e.g. 9.99 -> 10.0)
        mantissa /= &ten;
        exp += 1;
    }
    let mut m = mantissa.to_string();
    while m.len() < digits {
        m.push('0');
    }
    let text = if exp >= 0 && (exp as usize) < digits {
        let point = exp as usize + 1;
        let (a, b) = m.split_at(point);
        let b = b.trim_end_matches('0');
        if b.is_empty() {
            a.to_string()
        } else {
            format!("{a}.{b}")
        }
    } else if exp < 0 && exp > -7 {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("0.{zeros}{}", m.trim_end_matches('0'))
    } else {
        let (a, b) = m.split_at(1);
        let b = b.trim_end_matches('0');
        if b.is_empty() {
            format!("{a}e{exp}")
        } else {
            format!("{a}.{b}e{exp}")
        }
    };
    if negative {
        format!("-{text}")
    } else {
        text
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// A slope value in `Q ∪ {+∞}`; division by zero is read as `+∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl Slope {
    pub fn from_fraction(numerator: Rational, denominator: &Rational) -> Slope {
        if denominator.is_zero() {
            Slope::Infinite
        } else {
            Slope::Finite(numerator / denominator)
        }
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Slope::Finite(r) => Some(r),
            Slope::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Slope::Infinite)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{r}"),
            Slope::Infinite => write!(f, "+inf"),
        }
    }
}

/// Compares `a` against `sqrt(b)` for `b >= 0` without leaving the rationals.
pub(crate) fn cmp_with_sqrt(a: &Rational, b: &Rational) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    debug_assert!(!b.is_negative());
    if a.is_negative() {
        return if b.is_zero() && a.is_zero() {
            Ordering::Equal
        } else {
            Ordering::Less
        };
    }
    (a * a).cmp(b)
}
