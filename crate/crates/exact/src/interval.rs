use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{ExactError, Rational};

/// Strict sign of a quantity known to be nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// Sign of `self^exp`.
    pub fn pow(self, exp: u32) -> Sign {
        if exp % 2 == 0 {
            Sign::Positive
        } else {
            self
        }
    }

    pub fn of(x: &Rational) -> Option<Sign> {
        match x.signum() {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

/// A closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, ExactError> {
        if lo > hi {
            return Err(ExactError::Inverted {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(RatInterval { lo, hi })
    }

    /// Smallest interval containing both values, in either order.
    pub fn spanning(a: Rational, b: Rational) -> Self {
        if a <= b {
            RatInterval { lo: a, hi: b }
        } else {
            RatInterval { lo: b, hi: a }
        }
    }

    pub fn point(x: Rational) -> Self {
        RatInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn into_bounds(self) -> (Rational, Rational) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        Rational::midpoint(&self.lo, &self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &RatInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `self` lies in the open interval `(lo, hi)`.
    pub fn is_strictly_inside(&self, lo: &Rational, hi: &Rational) -> bool {
        lo < &self.lo && &self.hi < hi
    }

    pub fn intersects(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Strict sign of every element, if the interval excludes zero.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        if self.is_point() && other.is_point() {
            return RatInterval::point(&self.lo * &other.lo);
        }
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        hull_of(candidates)
    }

    pub fn scale(&self, c: &Rational) -> RatInterval {
        RatInterval::spanning(&self.lo * c, &self.hi * c)
    }

    pub fn recip(&self) -> Result<RatInterval, ExactError> {
        if self.contains_zero() {
            return Err(ExactError::DivisionByZero { operand: "divisor" });
        }
        Ok(RatInterval {
            lo: self.hi.recip()?,
            hi: self.lo.recip()?,
        })
    }

    pub fn div(&self, other: &RatInterval) -> Result<RatInterval, ExactError> {
        if other.contains_zero() {
            return Err(ExactError::DivisionByZero { operand: "divisor" });
        }
        if self.is_point() && other.is_point() {
            return Ok(RatInterval::point(&self.lo / &other.lo));
        }
        let candidates = [
            &self.lo / &other.lo,
            &self.lo / &other.hi,
            &self.hi / &other.lo,
            &self.hi / &other.hi,
        ];
        Ok(hull_of(candidates))
    }

    /// Exact image of `x ↦ x^exp`. Negative exponents need `0 ∉ self`.
    pub fn pow_int(&self, exp: i32) -> Result<RatInterval, ExactError> {
        if exp < 0 {
            if self.contains_zero() {
                return Err(ExactError::DivisionByZero { operand: "base" });
            }
            return self.pow_int(-exp)?.recip();
        }
        if exp == 0 {
            return Ok(RatInterval::point(Rational::one()));
        }
        let lo_p = self.lo.pow(exp);
        if self.is_point() {
            return Ok(RatInterval::point(lo_p));
        }
        let hi_p = self.hi.pow(exp);
        if exp % 2 == 1 || !self.lo.is_negative() {
            Ok(RatInterval { lo: lo_p, hi: hi_p })
        } else if !self.hi.is_positive() {
            Ok(RatInterval { lo: hi_p, hi: lo_p })
        } else {
            Ok(RatInterval {
                lo: Rational::zero(),
                hi: lo_p.max(hi_p),
            })
        }
    }
}

fn hull_of(candidates: [Rational; 4]) -> RatInterval {
    let mut it = candidates.into_iter();
    let first = it.next().expect("four candidates");
    let (lo, hi) = it.fold((first.clone(), first), |(lo, hi), c| {
        (lo.min(c.clone()), hi.max(c))
    });
    RatInterval { lo, hi }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RatInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [&self.lo, &self.hi].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatInterval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [lo, hi] = <[Rational; 2]>::deserialize(deserializer)?;
        RatInterval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// The arithmetic operations available on intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    PowInt(i32),
}

/// Applies `op`. Binary operations read `y`; `Neg` and `PowInt` ignore it.
pub fn interval_arith(
    op: IntervalOp,
    x: &RatInterval,
    y: Option<&RatInterval>,
) -> Result<RatInterval, ExactError> {
    let rhs = || y.expect("binary interval operation needs a second operand");
    match op {
        IntervalOp::Add => Ok(x.add(rhs())),
        IntervalOp::Sub => Ok(x.sub(rhs())),
        IntervalOp::Mul => Ok(x.mul(rhs())),
        IntervalOp::Div => x.div(rhs()),
        IntervalOp::Neg => Ok(x.neg()),
        IntervalOp::PowInt(n) => x.pow_int(n),
    }
}
