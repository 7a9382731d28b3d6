use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{ParseDecimalError, RatInterval, Rational};

/// Parses a signed decimal literal with optional fraction and power-of-ten
/// exponent (`-12`, `0.6263716633`, `2.1701388889e-11`) into the rational it
/// denotes. No rounding happens.
pub fn parse_decimal(text: &str) -> Result<Rational, ParseDecimalError> {
    let err = |position, reason| ParseDecimalError {
        text: text.to_string(),
        position,
        reason,
    };
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let negative = match chars.first() {
        Some('-') => {
            i += 1;
            true
        }
        Some('+') => {
            i += 1;
            false
        }
        _ => false,
    };

    let mut digits = String::new();
    let mut frac_len: i64 = 0;
    let mut seen_point = false;
    let mut mantissa_digits = 0usize;
    while i < chars.len() {
        match chars[i] {
            c @ '0'..='9' => {
                digits.push(c);
                mantissa_digits += 1;
                if seen_point {
                    frac_len += 1;
                }
            }
            '.' if !seen_point => seen_point = true,
            '.' => return Err(err(i, "second decimal point")),
            'e' | 'E' => break,
            _ => return Err(err(i, "unexpected character")),
        }
        i += 1;
    }
    if mantissa_digits == 0 {
        return Err(err(i, "no digits"));
    }

    let mut exponent: i64 = 0;
    if i < chars.len() {
        // chars[i] is the exponent marker
        i += 1;
        let mut exp_negative = false;
        match chars.get(i) {
            Some('-') => {
                exp_negative = true;
                i += 1;
            }
            Some('+') => i += 1,
            _ => {}
        }
        let start = i;
        while i < chars.len() {
            match chars[i] {
                '0'..='9' => i += 1,
                _ => return Err(err(i, "unexpected character in exponent")),
            }
        }
        if start == i {
            return Err(err(i, "empty exponent"));
        }
        let raw: String = chars[start..i].iter().collect();
        exponent = raw
            .parse::<i64>()
            .ok()
            .filter(|e| *e <= 100_000)
            .ok_or_else(|| err(start, "exponent out of range"))?;
        if exp_negative {
            exponent = -exponent;
        }
    }

    let mut numer: BigInt = digits.parse().expect("ascii digits");
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_len;
    let value = Rational::from_integer(numer) * Rational::pow10(scale as i32);
    Ok(value)
}

/// Largest multiple of `10^-digits` that is `<= x`.
pub fn round_down(x: &Rational, digits: u32) -> Rational {
    let scale = BigInt::from(10u32).pow(digits);
    Rational::new((x.numer() * &scale).div_floor(x.denom()), scale)
}

/// Smallest multiple of `10^-digits` that is `>= x`.
pub fn round_up(x: &Rational, digits: u32) -> Rational {
    let scale = BigInt::from(10u32).pow(digits);
    Rational::new((x.numer() * &scale).div_ceil(x.denom()), scale)
}

impl Rational {
    /// Exact decimal expansion when the denominator has no prime factors
    /// other than 2 and 5; `None` otherwise. Trailing zeros are dropped.
    pub fn to_decimal_string(&self) -> Option<String> {
        let mut d = self.denom().clone();
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        let (mut twos, mut fives) = (0u32, 0u32);
        while d.is_even() {
            d /= &two;
            twos += 1;
        }
        while (&d % &five).is_zero() {
            d /= &five;
            fives += 1;
        }
        if !d.is_one() {
            return None;
        }
        let places = twos.max(fives);
        let scaled = self.numer() * BigInt::from(10).pow(places) / self.denom();
        Some(fixed_point(&scaled, places))
    }
}

/// Renders `scaled / 10^places` without trailing fractional zeros.
fn fixed_point(scaled: &BigInt, places: u32) -> String {
    let negative = scaled.is_negative();
    let mut s = scaled.abs().to_string();
    let places = places as usize;
    if s.len() <= places {
        s = "0".repeat(places + 1 - s.len()) + &s;
    }
    let (int_part, frac_part) = s.split_at(s.len() - places);
    let frac_part = frac_part.trim_end_matches('0');
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(int_part);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

fn fixed_point_padded(scaled: &BigInt, places: u32) -> String {
    let negative = scaled.is_negative();
    let mut s = scaled.abs().to_string();
    let places = places as usize;
    if s.len() <= places {
        s = "0".repeat(places + 1 - s.len()) + &s;
    }
    let (int_part, frac_part) = s.split_at(s.len() - places);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Decimal rendering of an interval whose printed endpoints enclose it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalInterval {
    pub lo: String,
    pub hi: String,
}

impl fmt::Display for DecimalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} .. {}", self.lo, self.hi)
    }
}

/// Prints `x` with `digits` fractional digits, rounding the lower endpoint
/// down and the upper endpoint up.
pub fn outward_round(x: &RatInterval, digits: u32) -> DecimalInterval {
    let digits = digits.max(1);
    let scale = Rational::pow10(digits as i32);
    let lo = (x.lo() * &scale).floor();
    let hi = (x.hi() * &scale).ceil();
    DecimalInterval {
        lo: fixed_point_padded(&lo, digits),
        hi: fixed_point_padded(&hi, digits),
    }
}
