use planarconst_cert::evidence::{
    DerivativeSign, Direction, FactoredSign, MonotoneArgument, MonotoneEvidence, SignedFactor,
};
use planarconst_cert::Expr;
use planarconst_exact::{Poly, RatInterval, Rational, RationalFunction, Sign};

use super::sign::poly_sign;
use crate::error::{Error, Result};

/// A derivative written as `constant · Π factor^exponent`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub label: &'static str,
    pub constant: Rational,
    pub factors: Vec<(Poly, i32)>,
}

impl Factorization {
    fn new(label: &'static str, constant: Rational, factors: &[(&[i64], i32)]) -> Self {
        Factorization {
            label,
            constant,
            factors: factors
                .iter()
                .map(|(c, e)| (Poly::from_ints(c), *e))
                .collect(),
        }
    }

    pub fn expand(&self) -> RationalFunction {
        let mut numer = Poly::constant(self.constant.clone());
        let mut denom = Poly::one();
        for (p, e) in &self.factors {
            if *e > 0 {
                numer = numer.mul(&p.pow(*e as u32));
            } else {
                denom = denom.mul(&p.pow(e.unsigned_abs()));
            }
        }
        RationalFunction { numer, denom }
    }
}

const T_MINUS_1: &[i64] = &[-1, 1];
const T: &[i64] = &[0, 1];
const T_PLUS_1: &[i64] = &[1, 1];

/// Hand-factored derivatives of the rational pieces met while bounding the
/// constants. A derivative with no entry here is certified from its
/// expanded numerator instead.
pub fn known_factorizations() -> Vec<Factorization> {
    let int = Rational::from_integer;
    vec![
        Factorization::new(
            "((3t+1)^2 (1-t)^6)'",
            int(24),
            &[(T_MINUS_1, 5), (T, 1), (&[1, 3], 1)],
        ),
        Factorization::new(
            "((1-t)^3 (3t-1)(3t+1)(t+1)^3)'",
            int(-24),
            &[(T_MINUS_1, 2), (T, 1), (T_PLUS_1, 2), (&[-1, 0, 3], 1)],
        ),
        Factorization::new("((1-t)^3 (3t+1))'", int(-12), &[(T_MINUS_1, 2), (T, 1)]),
        Factorization::new(
            "(P6 (1-t)^2)'",
            int(2),
            &[(T_MINUS_1, 1), (&[92, -463, -1744, 1646, 616, 2569, 868], 1)],
        ),
        Factorization::new(
            "((t-1)^4 Q)'",
            int(2),
            &[(T_MINUS_1, 3), (&[92, -183, -1698, 2073, 740], 1)],
        ),
        Factorization::new("((3t-1)(t+1)^3)'", int(12), &[(T, 1), (T_PLUS_1, 2)]),
        Factorization::new(
            "((1-t) Q)'",
            int(1),
            &[(&[-166, -114, 2745, -2052, -925], 1)],
        ),
        Factorization::new(
            "(3t^4-16t^3+6t^2-1)'",
            int(12),
            &[(T, 1), (&[1, -4, 1], 1)],
        ),
        Factorization::new(
            "xi'",
            Rational::new(-3, 16),
            &[(T_MINUS_1, 2), (T_PLUS_1, 2), (T, -4)],
        ),
        Factorization::new(
            "Y' exp(-h2)",
            int(3),
            &[
                (T, 2),
                (&[144, 736, 1256, 799, 141, 1, -5], 1),
                (&[1, 2], -1),
                (&[1, 3], -4),
                (&[-3, 2, 1], -2),
            ],
        ),
    ]
}

fn lookup(target: &RationalFunction) -> Option<Factorization> {
    known_factorizations()
        .into_iter()
        .find(|f| f.expand().same_function(target))
}

fn factored_sign(f: &Factorization, interval: &RatInterval, max_depth: u32) -> Result<(FactoredSign, Sign)> {
    let mut sign = Sign::of(&f.constant).expect("table constants are nonzero");
    let mut factors = Vec::with_capacity(f.factors.len());
    for (p, e) in &f.factors {
        let ev = poly_sign(p, interval, max_depth)?;
        sign = sign.times(ev.sign.pow(e.unsigned_abs()));
        factors.push(SignedFactor {
            exponent: *e,
            sign: ev,
        });
    }
    Ok((
        FactoredSign {
            constant: f.constant.clone(),
            factors,
        },
        sign,
    ))
}

/// Sign of a rational function given only as `numer/denom`, with both
/// polynomials certified separately.
fn quotient_sign(rf: &RationalFunction, interval: &RatInterval, max_depth: u32) -> Result<(FactoredSign, Sign)> {
    let f = Factorization {
        label: "quotient",
        constant: Rational::one(),
        factors: vec![(rf.numer.clone(), 1), (rf.denom.clone(), -1)],
    };
    factored_sign(&f, interval, max_depth)
}

/// `c + p·exp(q)` split into `p` and `q`.
fn scaled_exp_parts(expr: &Expr) -> Option<(&Expr, &Expr)> {
    let product = match expr {
        Expr::Add(c, rest) if c.is_var_free() => rest,
        other => other,
    };
    match product {
        Expr::Mul(p, e) => match &**e {
            Expr::Exp(q) => Some((p, q)),
            _ => None,
        },
        _ => None,
    }
}

/// Finds a strict monotonicity argument for `expr` on `interval`.
pub fn certify_monotone(expr: &Expr, interval: &RatInterval, max_depth: u32) -> Result<MonotoneEvidence> {
    let done = |direction, argument| MonotoneEvidence {
        direction,
        interval: interval.clone(),
        argument,
    };
    if expr.is_var_free() {
        return Ok(done(Direction::Increasing, MonotoneArgument::Constant));
    }
    if let Some(rf) = expr.to_rational_function() {
        let denominator = poly_sign(&rf.denom, interval, max_depth)?;
        let (derivative, sign) = match lookup(&rf.derivative()) {
            Some(f) => {
                let (fs, s) = factored_sign(&f, interval, max_depth)?;
                (DerivativeSign::Factored(fs), s)
            }
            None => {
                let ev = poly_sign(&rf.derivative_numerator(), interval, max_depth)?;
                let s = ev.sign;
                (DerivativeSign::Direct(ev), s)
            }
        };
        return Ok(done(
            Direction::from_sign(sign),
            MonotoneArgument::RationalDerivative {
                denominator,
                derivative,
            },
        ));
    }
    match expr {
        Expr::Log(c) | Expr::Exp(c) | Expr::Sqrt(c) => {
            let inner = certify_monotone(c, interval, max_depth)?;
            return Ok(done(
                inner.direction,
                MonotoneArgument::Increasing {
                    inner: Box::new(inner),
                },
            ));
        }
        _ => {}
    }
    if let Some((p, q)) = scaled_exp_parts(expr) {
        if let (Some(p), Some(q)) = (p.to_rational_function(), q.to_rational_function()) {
            let scale_denominator = poly_sign(&p.denom, interval, max_depth)?;
            let exponent_denominator = poly_sign(&q.denom, interval, max_depth)?;
            let f = p.derivative().add(&p.mul(&q.derivative()));
            let (derivative, sign) = match lookup(&f) {
                Some(fz) => factored_sign(&fz, interval, max_depth)?,
                None => quotient_sign(&f, interval, max_depth)?,
            };
            return Ok(done(
                Direction::from_sign(sign),
                MonotoneArgument::ScaledExp {
                    scale_denominator,
                    exponent_denominator,
                    derivative,
                },
            ));
        }
    }
    Err(Error::NotMonotone {
        expr: expr.to_string(),
    })
}
