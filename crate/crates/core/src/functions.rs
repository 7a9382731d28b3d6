//! Naive interval evaluation of catalogue expressions, producing replayable
//! enclosure trees.

use planarconst_cert::evidence::{Node, PointEvidence, Via};
use planarconst_cert::{Expr, FunctionId};
use planarconst_exact::{parse_decimal, RatInterval, Rational, Sign};

use crate::error::{Error, Result};
use crate::transcendental::{
    default_budget, exp_point_reduced, log_enclosure, sqrt_enclosure,
};

/// Highest Taylor degree reached by [`Evaluator::escalate`].
pub const MAX_EXP_DEGREE: u32 = 40;

/// Precision knobs for transcendental point enclosures.
///
/// `exp` uses `exp_degree_positive` for positive arguments and
/// `exp_degree_negative` otherwise; `log` and `sqrt` aim for `width_budget`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluator {
    pub width_budget: Rational,
    pub exp_degree_positive: u32,
    pub exp_degree_negative: u32,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator {
            width_budget: default_budget(),
            exp_degree_positive: 12,
            exp_degree_negative: 6,
        }
    }
}

impl Evaluator {
    /// Encloses `f` over `t`.
    pub fn eval(&self, f: FunctionId, t: &RatInterval) -> Result<Node> {
        self.eval_expr(&f.expr(), t)
    }

    /// Encloses `expr` over `t` by structural interval arithmetic.
    pub fn eval_expr(&self, expr: &Expr, t: &RatInterval) -> Result<Node> {
        match expr {
            Expr::Var => Ok(Node::leaf(t.clone())),
            Expr::Const(c) => Ok(Node::leaf(RatInterval::point(c.clone()))),
            Expr::Poly(p) => Ok(Node::leaf(p.eval_interval(t))),
            _ => {
                let children = operands(expr)
                    .into_iter()
                    .map(|e| self.eval_expr(e, t))
                    .collect::<Result<Vec<_>>>()?;
                self.assemble(expr, children)
            }
        }
    }

    /// Builds the node for `expr` from already enclosed operands, in the
    /// order given by [`operands`].
    pub fn assemble(&self, expr: &Expr, mut children: Vec<Node>) -> Result<Node> {
        let value = match expr {
            Expr::Var | Expr::Const(_) | Expr::Poly(_) => {
                unreachable!("leaves have no operands")
            }
            Expr::Add(..) => children[0].value.add(&children[1].value),
            Expr::Sub(..) => children[0].value.sub(&children[1].value),
            Expr::Mul(..) => children[0].value.mul(&children[1].value),
            Expr::Div(_, b) => {
                if children[1].value.contains_zero() {
                    return Err(Error::Pole {
                        factor: vanishing_factor(b, &children[1]),
                    });
                }
                children[0].value.div(&children[1].value)?
            }
            Expr::Neg(_) => children[0].value.neg(),
            Expr::Pow(a, n) => {
                if *n < 0 && children[0].value.contains_zero() {
                    return Err(Error::Pole {
                        factor: vanishing_factor(a, &children[0]),
                    });
                }
                children[0].value.pow_int(*n)?
            }
            Expr::Sum(terms) => terms.iter().zip(&children).fold(
                RatInterval::point(Rational::zero()),
                |acc, ((sign, _), c)| match sign {
                    Sign::Positive => acc.add(&c.value),
                    Sign::Negative => acc.sub(&c.value),
                },
            ),
            Expr::Log(_) | Expr::Exp(_) | Expr::Sqrt(_) => {
                let child = children.pop().expect("one operand");
                return self.transcendental(expr, child);
            }
        };
        Ok(Node {
            value,
            via: Via::Arith { children },
        })
    }

    fn transcendental(&self, expr: &Expr, child: Node) -> Result<Node> {
        let at = |x: &Rational| self.point(expr, x);
        let at_lo = at(child.value.lo())?;
        let at_hi = if child.value.is_point() {
            at_lo.clone()
        } else {
            at(child.value.hi())?
        };
        let value = RatInterval::new(
            at_lo.enclosure().lo().clone(),
            at_hi.enclosure().hi().clone(),
        )?;
        Ok(Node {
            value,
            via: Via::Transcendental {
                child: Box::new(child),
                at_lo,
                at_hi,
            },
        })
    }

    fn point(&self, expr: &Expr, x: &Rational) -> Result<PointEvidence> {
        Ok(match expr {
            Expr::Exp(_) => PointEvidence::Exp(self.exp_point(x)?),
            Expr::Log(_) => PointEvidence::Log(log_enclosure(x, &self.width_budget)?.1),
            Expr::Sqrt(_) => PointEvidence::Sqrt(sqrt_enclosure(x, &self.width_budget)?.1),
            _ => unreachable!("not a transcendental head"),
        })
    }

    /// `exp(x)` at the degree selected by the sign of `x`.
    pub fn exp_point(&self, x: &Rational) -> Result<planarconst_cert::evidence::ExpPoint> {
        let degree = if x.is_positive() {
            self.exp_degree_positive
        } else {
            self.exp_degree_negative
        };
        exp_point_reduced(x, degree)
    }

    /// Raises both Taylor degrees by 4 and tightens the budget by `10^4`.
    /// Returns `false` once [`MAX_EXP_DEGREE`] would be exceeded.
    pub fn escalate(&mut self) -> bool {
        let top = self.exp_degree_positive.max(self.exp_degree_negative);
        if top + 4 > MAX_EXP_DEGREE {
            return false;
        }
        self.exp_degree_positive += 4;
        self.exp_degree_negative += 4;
        let floor = Rational::pow10(-36);
        self.width_budget = (&self.width_budget * &Rational::pow10(-4)).max(floor);
        true
    }
}

/// Direct operands of an expression node, in evaluation order.
pub fn operands(expr: &Expr) -> Vec<&Expr> {
    match expr {
        Expr::Var | Expr::Const(_) | Expr::Poly(_) => Vec::new(),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => vec![a, b],
        Expr::Neg(a) | Expr::Pow(a, _) | Expr::Log(a) | Expr::Exp(a) | Expr::Sqrt(a) => vec![a],
        Expr::Sum(terms) => terms.iter().map(|(_, e)| e).collect(),
    }
}

/// The innermost factor of `expr` whose enclosure contains zero.
fn vanishing_factor(expr: &Expr, node: &Node) -> String {
    let Via::Arith { children } = &node.via else {
        return expr.to_string();
    };
    match expr {
        Expr::Mul(a, b) => {
            for (e, n) in [(a, &children[0]), (b, &children[1])] {
                if n.value.contains_zero() {
                    return vanishing_factor(e, n);
                }
            }
            expr.to_string()
        }
        Expr::Div(a, _) | Expr::Pow(a, _) | Expr::Neg(a) => vanishing_factor(a, &children[0]),
        _ => expr.to_string(),
    }
}

/// Exact value of a polynomial expression at a rational point.
pub fn exact_poly_at(expr: &Expr, t: &Rational) -> Result<Rational> {
    match expr.to_poly() {
        Some(p) => Ok(p.eval(t)),
        None => Err(Error::NotPolynomial {
            expr: expr.to_string(),
        }),
    }
}

/// The two points bracketing the root of `Y(t) = 1` used for the
/// sign-change check, `0.6263716632` and `0.6263716634`.
pub fn y_check_points() -> (Rational, Rational) {
    (
        parse_decimal("0.6263716632").expect("literal"),
        parse_decimal("0.6263716634").expect("literal"),
    )
}

/// Enclosures of `Y` at the two check points, with default precision.
pub fn eval_y_check_points() -> Result<(Node, Node)> {
    let ev = Evaluator::default();
    let (lo, hi) = y_check_points();
    Ok((
        ev.eval(FunctionId::Y, &RatInterval::point(lo))?,
        ev.eval(FunctionId::Y, &RatInterval::point(hi))?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use planarconst_cert::check::check_node;
    use planarconst_cert::formula::{lin, t};

    fn pt(s: &str) -> RatInterval {
        RatInterval::point(parse_decimal(s).unwrap())
    }

    #[test]
    fn every_function_replays_on_the_seed() {
        let ev = Evaluator::default();
        let iv = RatInterval::new(
            parse_decimal("0.6263716632").unwrap(),
            parse_decimal("0.6263716634").unwrap(),
        )
        .unwrap();
        for f in FunctionId::all() {
            let node = ev.eval(f, &iv).unwrap();
            check_node(&f.expr(), &iv, &node, &f.name()).unwrap();
        }
    }

    #[test]
    fn y_pole_names_the_factor() {
        let err = Evaluator::default()
            .eval(FunctionId::Y, &RatInterval::point(Rational::one()))
            .unwrap_err();
        assert_eq!(err.to_string(), "pole: (-t+1) vanishes");
    }

    #[test]
    fn log_of_negative_is_a_domain_error() {
        let e = lin(-1, 1).log();
        assert!(matches!(
            Evaluator::default().eval_expr(&e, &pt("0.5")),
            Err(Error::Domain { function: "log", .. })
        ));
    }

    #[test]
    fn h1_is_exact_at_rational_points() {
        let node = Evaluator::default()
            .eval(FunctionId::H1, &pt("0.5"))
            .unwrap();
        assert_eq!(node.value, RatInterval::point(Rational::new(8, 5)));
    }

    #[test]
    fn exact_poly_refuses_transcendentals() {
        assert!(matches!(
            exact_poly_at(&t().log(), &Rational::one()),
            Err(Error::NotPolynomial { .. })
        ));
        let v = exact_poly_at(&FunctionId::DyNumPoly.expr(), &Rational::one()).unwrap();
        assert_eq!(v, Rational::from_integer(144 + 736 + 1256 + 799 + 141 + 1 - 5));
    }

    #[test]
    fn escalation_stops_at_the_cap() {
        let mut ev = Evaluator::default();
        let mut steps = 0;
        while ev.escalate() {
            steps += 1;
        }
        assert_eq!(steps, 7);
        assert_eq!(ev.exp_degree_positive, 40);
    }
}
