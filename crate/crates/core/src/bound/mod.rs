//! Uniform enclosures over an interval, root brackets and signed sums.
//!
//! The decomposer splits an expression at sums, quotients and constant
//! factors, and bounds each rational or `log`/`exp`/`sqrt`-of-rational piece
//! through a monotonicity argument: the piece's range is spanned by its
//! values at the interval endpoints. Pieces whose derivative sign cannot be
//! certified fall back to naive interval evaluation.

mod monotone;
mod root;
mod sign;

use planarconst_cert::check::check_monotone;
use planarconst_cert::evidence::{MonotoneEvidence, Node, Via};
use planarconst_cert::{Expr, FunctionId};
use planarconst_exact::{RatInterval, Rational, Sign};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functions::{operands, Evaluator};

pub use monotone::{certify_monotone, known_factorizations, Factorization};
pub use sign::{poly_sign, DEFAULT_MAX_DEPTH};

/// Bounds expressions uniformly over intervals.
#[derive(Clone, Debug)]
pub struct Prover {
    pub evaluator: Evaluator,
    pub max_depth: u32,
}

impl Default for Prover {
    fn default() -> Self {
        Prover::new(Evaluator::default(), DEFAULT_MAX_DEPTH)
    }
}

impl Prover {
    pub fn new(evaluator: Evaluator, max_depth: u32) -> Self {
        Prover {
            evaluator,
            max_depth,
        }
    }

    /// Encloses `f` over `interval` with the decomposer.
    pub fn uniform_bound(&self, f: FunctionId, interval: &RatInterval) -> Result<Node> {
        self.bound_expr(&f.expr(), interval)
    }

    /// Encloses `expr` over `interval` with the decomposer.
    pub fn bound_expr(&self, expr: &Expr, interval: &RatInterval) -> Result<Node> {
        if interval.is_point() || expr.is_var_free() || matches!(expr, Expr::Var) {
            return self.evaluator.eval_expr(expr, interval);
        }
        match expr {
            Expr::Sum(terms) => {
                let children = terms
                    .par_iter()
                    .map(|(_, e)| self.bound_expr(e, interval))
                    .collect::<Result<Vec<_>>>()?;
                return self.evaluator.assemble(expr, children);
            }
            Expr::Add(..) | Expr::Sub(..) | Expr::Div(..) | Expr::Neg(_) => {
                return self.split(expr, interval)
            }
            Expr::Mul(a, b) if a.is_var_free() || b.is_var_free() => {
                return self.split(expr, interval)
            }
            _ => {}
        }
        let leaf = match expr {
            Expr::Log(c) | Expr::Exp(c) | Expr::Sqrt(c) => c.to_rational_function().is_some(),
            _ => expr.to_rational_function().is_some(),
        };
        if leaf {
            match self.monotone_leaf(expr, interval) {
                Ok(node) => return Ok(node),
                Err(Error::Indeterminate { .. }) if expr.to_rational_function().is_some() => {
                    return self.evaluator.eval_expr(expr, interval)
                }
                Err(Error::Indeterminate { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        self.split(expr, interval)
    }

    fn split(&self, expr: &Expr, interval: &RatInterval) -> Result<Node> {
        let children = operands(expr)
            .into_iter()
            .map(|e| self.bound_expr(e, interval))
            .collect::<Result<Vec<_>>>()?;
        self.evaluator.assemble(expr, children)
    }

    fn monotone_leaf(&self, expr: &Expr, interval: &RatInterval) -> Result<Node> {
        let evidence = certify_monotone(expr, interval, self.max_depth)?;
        self.span_node(expr, interval, evidence)
    }

    fn span_node(
        &self,
        expr: &Expr,
        interval: &RatInterval,
        evidence: MonotoneEvidence,
    ) -> Result<Node> {
        let at_lo = self
            .evaluator
            .eval_expr(expr, &RatInterval::point(interval.lo().clone()))?;
        let at_hi = self
            .evaluator
            .eval_expr(expr, &RatInterval::point(interval.hi().clone()))?;
        Ok(Node {
            value: evidence.direction.span(&at_lo.value, &at_hi.value),
            via: Via::Monotone {
                evidence,
                at_lo: Box::new(at_lo),
                at_hi: Box::new(at_hi),
            },
        })
    }

    /// Encloses `f` over `interval` from a supplied monotonicity argument,
    /// which is replayed before use.
    pub fn monotone_uniform_bound(
        &self,
        f: FunctionId,
        interval: &RatInterval,
        evidence: MonotoneEvidence,
    ) -> Result<Node> {
        let expr = f.expr();
        check_monotone(&expr, &evidence, interval, &f.name()).map_err(Error::Certificate)?;
        self.span_node(&expr, interval, evidence)
    }
}

/// `Σ sign_i · x_i` in exact interval arithmetic.
pub fn aggregate_signed_sum(terms: &[(Sign, RatInterval)]) -> RatInterval {
    terms
        .iter()
        .fold(RatInterval::point(Rational::zero()), |acc, (s, x)| match s {
            Sign::Positive => acc.add(x),
            Sign::Negative => acc.sub(x),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use planarconst_cert::check::check_node;
    use planarconst_exact::parse_decimal;

    fn seed() -> RatInterval {
        RatInterval::new(
            parse_decimal("0.6263716632").unwrap(),
            parse_decimal("0.6263716634").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn decomposed_bounds_replay() {
        let prover = Prover::new(Evaluator::default(), DEFAULT_MAX_DEPTH);
        for f in FunctionId::all() {
            let node = prover.uniform_bound(f, &seed()).unwrap();
            check_node(&f.expr(), &seed(), &node, &f.name()).unwrap();
        }
    }

    #[test]
    fn decomposed_bounds_are_no_wider_than_naive_ones() {
        let prover = Prover::new(Evaluator::default(), DEFAULT_MAX_DEPTH);
        for f in [FunctionId::B0Summand(7), FunctionId::Xi, FunctionId::ASummand(3)] {
            let smart = prover.uniform_bound(f, &seed()).unwrap().value;
            let naive = prover.evaluator.eval(f, &seed()).unwrap().value;
            assert!(smart.width() <= naive.width(), "{f}");
        }
    }

    #[test]
    fn signed_sum() {
        let x = RatInterval::new(Rational::one(), Rational::from_integer(2)).unwrap();
        let s = aggregate_signed_sum(&[(Sign::Positive, x.clone()), (Sign::Negative, x)]);
        assert_eq!(s, RatInterval::new(Rational::from_integer(-1), Rational::one()).unwrap());
    }
}
