//! Closed-form expressions in one real variable `t`, and the catalogue of
//! named functions the constants are built from.
//!
//! Expressions keep the factored shape of their definitions: `(3t+1)^2` stays
//! a power of a linear factor instead of being expanded. Both the evaluator
//! and the checker walk the same tree, so a certificate node always refers to
//! a position in one of these trees.

use std::fmt;
use std::ops;
use std::str::FromStr;

use planarconst_exact::{Poly, Rational, RationalFunction, Sign};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var,
    Const(Rational),
    Poly(Poly),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
    Sum(Vec<(Sign, Expr)>),
    Log(Box<Expr>),
    Exp(Box<Expr>),
    Sqrt(Box<Expr>),
}

/// The variable `t`.
pub fn t() -> Expr {
    Expr::Var
}

pub fn int(n: i64) -> Expr {
    Expr::Const(Rational::from_integer(n))
}

pub fn frac(n: i64, d: i64) -> Expr {
    Expr::Const(Rational::new(n, d))
}

/// Polynomial with integer coefficients, lowest degree first.
pub fn poly(coeffs: &[i64]) -> Expr {
    Expr::Poly(Poly::from_ints(coeffs))
}

/// `a + b·t`.
pub fn lin(a: i64, b: i64) -> Expr {
    poly(&[a, b])
}

impl Expr {
    pub fn pow(self, n: i32) -> Expr {
        Expr::Pow(Box::new(self), n)
    }

    pub fn log(self) -> Expr {
        Expr::Log(Box::new(self))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    /// True when the expression does not mention `t`.
    pub fn is_var_free(&self) -> bool {
        match self {
            Expr::Var => false,
            Expr::Const(_) => true,
            Expr::Poly(p) => p.as_constant().is_some(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_var_free() && b.is_var_free()
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Log(a) | Expr::Exp(a) | Expr::Sqrt(a) => {
                a.is_var_free()
            }
            Expr::Sum(terms) => terms.iter().all(|(_, e)| e.is_var_free()),
        }
    }

    /// The expression as a quotient of polynomials, or `None` if it contains
    /// `log`, `exp` or `sqrt`. The quotient is not reduced.
    pub fn to_rational_function(&self) -> Option<RationalFunction> {
        let rf = match self {
            Expr::Var => RationalFunction::from_poly(Poly::var()),
            Expr::Const(c) => RationalFunction::from_poly(Poly::constant(c.clone())),
            Expr::Poly(p) => RationalFunction::from_poly(p.clone()),
            Expr::Add(a, b) => a.to_rational_function()?.add(&b.to_rational_function()?),
            Expr::Sub(a, b) => a.to_rational_function()?.sub(&b.to_rational_function()?),
            Expr::Mul(a, b) => a.to_rational_function()?.mul(&b.to_rational_function()?),
            Expr::Div(a, b) => a
                .to_rational_function()?
                .div(&b.to_rational_function()?)
                .ok()?,
            Expr::Neg(a) => a.to_rational_function()?.neg(),
            Expr::Pow(a, n) => a.to_rational_function()?.pow(*n).ok()?,
            Expr::Sum(terms) => {
                let mut acc = RationalFunction::from_poly(Poly::zero());
                for (sign, e) in terms {
                    let term = e.to_rational_function()?;
                    acc = match sign {
                        Sign::Positive => acc.add(&term),
                        Sign::Negative => acc.sub(&term),
                    };
                }
                acc
            }
            Expr::Log(_) | Expr::Exp(_) | Expr::Sqrt(_) => return None,
        };
        Some(rf)
    }

    /// The expression as a polynomial, if it is one.
    pub fn to_poly(&self) -> Option<Poly> {
        let rf = self.to_rational_function()?;
        let d = rf.denom.as_constant()?;
        if d.is_zero() {
            return None;
        }
        Some(rf.numer.scale(&d.recip().ok()?))
    }

    fn prints_parenthesized(&self) -> bool {
        matches!(self, Expr::Poly(p) if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1)
    }

    fn needs_parens_in_product(&self) -> bool {
        matches!(
            self,
            Expr::Add(..) | Expr::Sub(..) | Expr::Sum(_) | Expr::Neg(_) | Expr::Div(..)
        ) || matches!(self, Expr::Const(c) if c.is_negative() || !c.is_integer())
    }
}

macro_rules! expr_binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl ops::$trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

expr_binop!(Add, add, Add);
expr_binop!(Sub, sub, Sub);
expr_binop!(Mul, mul, Mul);
expr_binop!(Div, div, Div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |f: &mut fmt::Formatter<'_>, e: &Expr| {
            if e.needs_parens_in_product() {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Var => write!(f, "t"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Poly(p) => {
                if self.prints_parenthesized() {
                    write!(f, "({p})")
                } else {
                    write!(f, "{p}")
                }
            }
            Expr::Add(a, b) => write!(f, "{a} + {b}"),
            Expr::Sub(a, b) => {
                write!(f, "{a} - ")?;
                factor(f, b)
            }
            Expr::Mul(a, b) => {
                factor(f, a)?;
                write!(f, "*")?;
                factor(f, b)
            }
            Expr::Div(a, b) => {
                factor(f, a)?;
                write!(f, "/")?;
                match **b {
                    Expr::Mul(..) => write!(f, "({b})"),
                    _ => factor(f, b),
                }
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                factor(f, a)
            }
            Expr::Pow(a, n) => {
                match **a {
                    Expr::Var | Expr::Poly(_) => write!(f, "{a}")?,
                    _ => write!(f, "({a})")?,
                }
                write!(f, "^{n}")
            }
            Expr::Sum(terms) => {
                for (i, (sign, e)) in terms.iter().enumerate() {
                    match (i, sign) {
                        (0, Sign::Positive) => {}
                        (0, Sign::Negative) => write!(f, "-")?,
                        (_, Sign::Positive) => write!(f, " + ")?,
                        (_, Sign::Negative) => write!(f, " - ")?,
                    }
                    factor(f, e)?;
                }
                Ok(())
            }
            Expr::Log(a) | Expr::Exp(a) | Expr::Sqrt(a) => {
                let name = match self {
                    Expr::Log(_) => "log",
                    Expr::Exp(_) => "exp",
                    _ => "sqrt",
                };
                if a.prints_parenthesized() {
                    write!(f, "{name}{a}")
                } else {
                    write!(f, "{name}({a})")
                }
            }
        }
    }
}

/// Named functions of `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionId {
    H1,
    H2,
    Y,
    DyNumPoly,
    Xi,
    B0,
    /// 1-based index into the seven signed terms of `B0`.
    B0Summand(u8),
    B2,
    /// 1-based index into the four signed terms of `B2`.
    B2Summand(u8),
    A,
    /// 1-based index into the three terms of `A`.
    ASummand(u8),
    R,
}

const B0_SIGNS: [Sign; 7] = [
    Sign::Positive,
    Sign::Negative,
    Sign::Negative,
    Sign::Positive,
    Sign::Negative,
    Sign::Negative,
    Sign::Negative,
];
const B2_SIGNS: [Sign; 4] = [Sign::Positive, Sign::Negative, Sign::Positive, Sign::Positive];
const A_SIGNS: [Sign; 3] = [Sign::Positive, Sign::Positive, Sign::Positive];

impl FunctionId {
    pub fn all() -> Vec<FunctionId> {
        let mut ids = vec![FunctionId::H1, FunctionId::H2, FunctionId::Y, FunctionId::DyNumPoly];
        ids.push(FunctionId::Xi);
        ids.push(FunctionId::B0);
        ids.extend((1..=7).map(FunctionId::B0Summand));
        ids.push(FunctionId::B2);
        ids.extend((1..=4).map(FunctionId::B2Summand));
        ids.push(FunctionId::A);
        ids.extend((1..=3).map(FunctionId::ASummand));
        ids.push(FunctionId::R);
        ids
    }

    /// Signed terms for the three functions defined as sums.
    pub fn summands(self) -> Option<Vec<(Sign, FunctionId)>> {
        let (signs, make): (&[Sign], fn(u8) -> FunctionId) = match self {
            FunctionId::B0 => (&B0_SIGNS, FunctionId::B0Summand),
            FunctionId::B2 => (&B2_SIGNS, FunctionId::B2Summand),
            FunctionId::A => (&A_SIGNS, FunctionId::ASummand),
            _ => return None,
        };
        Some(
            signs
                .iter()
                .enumerate()
                .map(|(i, s)| (*s, make(i as u8 + 1)))
                .collect(),
        )
    }

    pub fn name(self) -> String {
        match self {
            FunctionId::H1 => "h1".into(),
            FunctionId::H2 => "h2".into(),
            FunctionId::Y => "Y".into(),
            FunctionId::DyNumPoly => "dY_num_poly".into(),
            FunctionId::Xi => "xi".into(),
            FunctionId::B0 => "B0".into(),
            FunctionId::B0Summand(i) => format!("B0_summand_{i}"),
            FunctionId::B2 => "B2".into(),
            FunctionId::B2Summand(i) => format!("B2_summand_{i}"),
            FunctionId::A => "A".into(),
            FunctionId::ASummand(i) => format!("A_summand_{i}"),
            FunctionId::R => "r".into(),
        }
    }

    /// The defining expression. Panics on an out-of-range summand index.
    pub fn expr(self) -> Expr {
        match self {
            FunctionId::H1 => h1(),
            FunctionId::H2 => h2(),
            FunctionId::Y => int(-1) + h1() * h2().exp(),
            FunctionId::DyNumPoly => poly(&[144, 736, 1256, 799, 141, 1, -5]),
            FunctionId::Xi => (lin(1, 3) * lin(1, -1).pow(3)) / (int(16) * t().pow(3)),
            FunctionId::B0 | FunctionId::B2 | FunctionId::A => Expr::Sum(
                self.summands()
                    .expect("sum-defined function")
                    .into_iter()
                    .map(|(s, id)| (s, id.expr()))
                    .collect(),
            ),
            FunctionId::B0Summand(i) => b0_term(i),
            FunctionId::B2Summand(i) => b2_term(i),
            FunctionId::ASummand(i) => a_term(i),
            FunctionId::R => {
                frac(1, 16)
                    * lin(1, 3).sqrt()
                    * (t().pow(-1) - int(1)).pow(3)
                    * FunctionId::A.expr().exp()
            }
        }
    }
}

fn h1() -> Expr {
    lin(1, 2) / (lin(1, 3) * lin(1, -1))
}

fn h2() -> Expr {
    -((t().pow(2) * lin(1, -1) * poly(&[18, 36, 5]))
        / (int(2) * lin(3, 1) * lin(1, 2) * lin(1, 3).pow(2)))
}

fn quartic_q() -> Expr {
    poly(&[6, -160, -217, 698, 185])
}

fn b0_term(i: u8) -> Expr {
    match i {
        1 => (lin(-1, 3).pow(2) * lin(1, 1).pow(6) * lin(1, 1).log()) / (int(512) * t().pow(6)),
        2 => (poly(&[-1, 0, 6, -16, 3]) * lin(1, 3).log()) / (int(32) * t().pow(3)),
        3 => {
            (lin(1, 3).pow(2) * lin(1, -1).pow(6) * lin(1, 2).log()) / (int(1024) * t().pow(6))
        }
        4 => frac(1, 4) * lin(3, 1).log(),
        5 => frac(1, 2) * t().log(),
        6 => frac(3, 8) * int(16).log(),
        7 => {
            (poly(&[6, -172, 205, 1436, 972, 920, 217]) * lin(1, -1).pow(2))
                / (int(2048) * t().pow(4) * lin(1, 3) * lin(3, 1))
        }
        _ => panic!("B0 has seven summands, not {i}"),
    }
}

fn b2_term(i: u8) -> Expr {
    match i {
        1 => {
            (lin(1, -1).pow(3) * lin(-1, 3) * lin(1, 3) * lin(1, 1).pow(3) * lin(1, 1).log())
                / (int(256) * t().pow(6))
        }
        2 => (lin(1, -1).pow(3) * lin(1, 3) * lin(1, 3).log()) / (int(32) * t().pow(3)),
        3 => {
            (lin(1, 3).pow(2) * lin(1, -1).pow(6) * lin(1, 2).log()) / (int(512) * t().pow(6))
        }
        4 => {
            (lin(-1, 1).pow(4) * quartic_q()) / (int(1024) * t().pow(4) * lin(1, 3) * lin(3, 1))
        }
        _ => panic!("B2 has four summands, not {i}"),
    }
}

fn a_term(i: u8) -> Expr {
    match i {
        1 => (lin(-1, 3) * lin(1, 1).pow(3) * lin(1, 1).log()) / (int(16) * t().pow(3)),
        2 => (lin(1, 3) * lin(1, -1).pow(3) * lin(1, 2).log()) / (int(32) * t().pow(3)),
        3 => (lin(1, -1) * quartic_q()) / (int(64) * t() * lin(1, 3).pow(2) * lin(3, 1)),
        _ => panic!("A has three summands, not {i}"),
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown function {0:?}")]
pub struct UnknownFunction(pub String);

impl FromStr for FunctionId {
    type Err = UnknownFunction;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FunctionId::all()
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownFunction(s.to_string()))
    }
}

impl Serialize for FunctionId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for FunctionId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h1_at_one_half_is_eight_fifths() {
        let rf = FunctionId::H1.expr().to_rational_function().unwrap();
        assert_eq!(rf.eval(&Rational::new(1, 2)).unwrap(), Rational::new(8, 5));
    }

    #[test]
    fn names_round_trip() {
        for id in FunctionId::all() {
            assert_eq!(id.name().parse::<FunctionId>().unwrap(), id);
        }
        assert!("B0_summand_8".parse::<FunctionId>().is_err());
    }

    #[test]
    fn sum_functions_expand_to_their_summands() {
        match FunctionId::B0.expr() {
            Expr::Sum(terms) => {
                assert_eq!(terms.len(), 7);
                assert_eq!(terms[1].0, Sign::Negative);
                assert_eq!(terms[1].1, FunctionId::B0Summand(2).expr());
            }
            other => panic!("unexpected shape {other}"),
        }
    }

    #[test]
    fn transcendental_expressions_are_not_rational() {
        assert!(FunctionId::Y.expr().to_rational_function().is_none());
        assert!(FunctionId::Xi.expr().to_rational_function().is_some());
        assert!(FunctionId::B0Summand(6).expr().is_var_free());
    }

    #[test]
    fn display_keeps_factored_shape() {
        assert_eq!(FunctionId::H1.expr().to_string(), "(2t+1)/((3t+1)*(-t+1))");
        assert_eq!(FunctionId::B0Summand(4).expr().to_string(), "(1/4)*log(t+3)");
    }
}
