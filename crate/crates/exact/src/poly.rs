use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{ExactError, RatInterval, Rational};

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first. Trailing zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The identity polynomial `t`.
    pub fn var() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        (self.coeffs.len() <= 1).then(|| self.constant_term())
    }

    /// Exact value by Horner's scheme.
    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * t) + c)
    }

    /// Interval Horner enclosure of the range over `t`.
    pub fn eval_interval(&self, t: &RatInterval) -> RatInterval {
        if t.is_point() {
            return RatInterval::point(self.eval(t.lo()));
        }
        self.coeffs
            .iter()
            .rev()
            .fold(RatInterval::point(Rational::zero()), |acc, c| {
                acc.mul(t).add(&RatInterval::point(c.clone()))
            })
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from_integer(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, exp: u32) -> Poly {
        (0..exp).fold(Poly::one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for Poly {
    /// Highest degree first, e.g. `-5t^6+t^5+144`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if negative {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            let mag = c.abs();
            let unit = mag == 1;
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}t^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<Rational>::deserialize(deserializer)?;
        if coeffs.last().is_some_and(Rational::is_zero) {
            return Err(serde::de::Error::custom("trailing zero coefficient"));
        }
        Ok(Poly { coeffs })
    }
}

/// A quotient of polynomials `numer / denom`, not reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub numer: Poly,
    pub denom: Poly,
}

impl RationalFunction {
    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            numer: p,
            denom: Poly::one(),
        }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.denom == other.denom {
            return RationalFunction {
                numer: self.numer.add(&other.numer),
                denom: self.denom.clone(),
            };
        }
        RationalFunction {
            numer: self
                .numer
                .mul(&other.denom)
                .add(&other.numer.mul(&self.denom)),
            denom: self.denom.mul(&other.denom),
        }
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            numer: self.numer.neg(),
            denom: self.denom.clone(),
        }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction {
            numer: self.numer.mul(&other.numer),
            denom: self.denom.mul(&other.denom),
        }
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction, ExactError> {
        if other.numer.is_zero() {
            return Err(ExactError::DivisionByZero { operand: "divisor" });
        }
        Ok(RationalFunction {
            numer: self.numer.mul(&other.denom),
            denom: self.denom.mul(&other.numer),
        })
    }

    pub fn pow(&self, exp: i32) -> Result<RationalFunction, ExactError> {
        let e = exp.unsigned_abs();
        let raised = RationalFunction {
            numer: self.numer.pow(e),
            denom: self.denom.pow(e),
        };
        if exp < 0 {
            RationalFunction::from_poly(Poly::one()).div(&raised)
        } else {
            Ok(raised)
        }
    }

    /// Numerator of the derivative over `denom^2`: `numer'·denom − numer·denom'`.
    pub fn derivative_numerator(&self) -> Poly {
        self.numer
            .derivative()
            .mul(&self.denom)
            .sub(&self.numer.mul(&self.denom.derivative()))
    }

    pub fn derivative(&self) -> RationalFunction {
        RationalFunction {
            numer: self.derivative_numerator(),
            denom: self.denom.mul(&self.denom),
        }
    }

    /// Equality as functions, by cross multiplication.
    pub fn same_function(&self, other: &RationalFunction) -> bool {
        self.numer.mul(&other.denom) == other.numer.mul(&self.denom)
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational, ExactError> {
        self.numer.eval(t).checked_div(&self.denom.eval(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_factored_product() {
        // d/dt (3t+1)^2 (1-t)^6 = 24 (t-1)^5 t (3t+1)
        let p = Poly::from_ints(&[1, 3]).pow(2).mul(&Poly::from_ints(&[1, -1]).pow(6));
        let factored = Poly::from_ints(&[-1, 1])
            .pow(5)
            .mul(&Poly::var())
            .mul(&Poly::from_ints(&[1, 3]))
            .scale(&Rational::from_integer(24));
        assert_eq!(p.derivative(), factored);
    }

    #[test]
    fn interval_horner_contains_point_values() {
        let p = Poly::from_ints(&[144, 736, 1256, 799, 141, 1, -5]);
        let t = RatInterval::new(Rational::zero(), Rational::one()).unwrap();
        let range = p.eval_interval(&t);
        for k in 0..=10 {
            assert!(range.contains(&p.eval(&Rational::new(k, 10))));
        }
        assert!(range.lo().is_positive());
    }

    #[test]
    fn display_highest_degree_first() {
        assert_eq!(Poly::from_ints(&[144, 0, 0, 0, 0, 1, -5]).to_string(), "-5t^6+t^5+144");
        assert_eq!(Poly::from_ints(&[1, -1]).to_string(), "-t+1");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn rational_function_derivative() {
        // (1-t)/t has derivative -1/t^2
        let f = RationalFunction {
            numer: Poly::from_ints(&[1, -1]),
            denom: Poly::var(),
        };
        let expected = RationalFunction {
            numer: Poly::from_ints(&[-1]),
            denom: Poly::var().pow(2),
        };
        assert!(f.derivative().same_function(&expected));
    }
}
