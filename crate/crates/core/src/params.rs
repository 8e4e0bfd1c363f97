//! Deformation parameters `(q, s)` of the generic Podleś sphere.
//!
//! Both parameters are exact rationals so the symbolic layer never rounds;
//! the operator layer reads the `f64` images.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest denominator kept when a decimal is converted to a rational.
pub const MAX_DECIMAL_DENOMINATOR: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    q: Rational,
    s: Rational,
}

impl Params {
    /// Requires `0 < q < 1` and `s > 0`; `s = 0` (the standard sphere) is rejected.
    pub fn new(q: Rational, s: Rational) -> Result<Self> {
        if !(q.is_positive() && q < Rational::one()) {
            return Err(Error::InvalidParams(format!(
                "q = {q} must lie strictly between 0 and 1"
            )));
        }
        if !s.is_positive() {
            return Err(Error::InvalidParams(format!(
                "s = {s} must be strictly positive (the standard sphere s = 0 is excluded)"
            )));
        }
        Ok(Self { q, s })
    }

    /// Convenience constructor from small integer fractions, e.g. `Params::from_fracs((1, 2), (2, 3))`.
    pub fn from_fracs(q: (i64, i64), s: (i64, i64)) -> Result<Self> {
        if q.1 == 0 || s.1 == 0 {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        Self::new(ratio(q.0, q.1), ratio(s.0, s.1))
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn qf(&self) -> f64 {
        to_f64(&self.q)
    }

    pub fn sf(&self) -> f64 {
        to_f64(&self.s)
    }

    /// Same `q`, different `s`.
    pub fn with_s(&self, s: Rational) -> Result<Self> {
        Self::new(self.q.clone(), s)
    }

    /// `q^e` for any integer exponent.
    pub fn q_pow(&self, e: i64) -> Rational {
        rational_pow(&self.q, e)
    }

    pub fn s_pow(&self, e: i64) -> Rational {
        rational_pow(&self.s, e)
    }

    /// `q^{n(n-1)/2}`. The exponent is an integer for every `n`, so no roots appear.
    pub fn q_triangular(&self, n: i64) -> Rational {
        let e = n * (n - 1);
        debug_assert!(e % 2 == 0, "n(n-1) is always even");
        self.q_pow(e / 2)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q = {}, s = {}", self.q, self.s)
    }
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_pow(x: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let e32 = i32::try_from(e).expect("exponent fits in i32");
    Pow::pow(x, e32)
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// A rational parsed from user text, remembering whether a decimal was converted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedRational {
    pub value: Rational,
    /// Set when the input was a decimal; holds the original text.
    pub converted_from: Option<String>,
}

impl FromStr for ParsedRational {
    type Err = Error;

    /// Accepts `p/r`, integers, and decimals (with optional exponent).
    /// Decimals become the nearest rational with denominator at most 10^6.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Malformed("empty number".into()));
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Malformed(format!("bad numerator in `{t}`")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Malformed(format!("bad denominator in `{t}`")))?;
            if d.is_zero() {
                return Err(Error::Malformed(format!("zero denominator in `{t}`")));
            }
            return Ok(Self {
                value: Rational::new(n, d),
                converted_from: None,
            });
        }
        if let Ok(n) = t.parse::<BigInt>() {
            return Ok(Self {
                value: Rational::from_integer(n),
                converted_from: None,
            });
        }
        let exact =
            parse_decimal(t).ok_or_else(|| Error::Malformed(format!("not a number: `{t}`")))?;
        let value = limit_denominator(&exact, MAX_DECIMAL_DENOMINATOR);
        Ok(Self {
            value,
            converted_from: Some(t.to_string()),
        })
    }
}

fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let digits = digits / BigInt::from(10);
    let scale = exp - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let mut v = Rational::from_integer(digits) * Pow::pow(&ten, scale);
    if neg {
        v = -v;
    }
    Some(v)
}

/// Closest rational to `x` with denominator at most `max_den` (continued-fraction best approximation).
pub fn limit_denominator(x: &Rational, max_den: u64) -> Rational {
    let max_den = BigInt::from(max_den);
    if x.denom() <= &max_den {
        return x.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) =
        (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
        if d.is_zero() {
            break;
        }
    }
    let k = (&max_den - &q0).div_floor(&q1);
    let bound1 = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let bound2 = Rational::new(p1, q1);
    if (&bound2 - x).abs() <= (&bound1 - x).abs() {
        bound2
    } else {
        bound1
    }
}
