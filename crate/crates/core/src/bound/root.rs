use std::cmp::Ordering;

use planarconst_cert::check::check_monotone;
use planarconst_cert::evidence::{Direction, MonotoneEvidence, Node, RootBracket};
use planarconst_cert::{Expr, FunctionId};
use planarconst_exact::{RatInterval, Rational};

use super::Prover;
use crate::error::{Error, Result};
use crate::functions::Evaluator;

/// Which side of the root a point lies on, if its enclosure decides it.
fn side(node: &Node, target: &Rational, direction: Direction) -> Option<Ordering> {
    let below = node.value.hi() < target;
    let above = node.value.lo() > target;
    let o = match (below, above) {
        (true, _) => Ordering::Less,
        (_, true) => Ordering::Greater,
        _ => return None,
    };
    Some(match direction {
        Direction::Increasing => o,
        Direction::Decreasing => o.reverse(),
    })
}

impl Prover {
    /// Bisects `seed` down to width `width_goal` around the unique root of
    /// `f = target`, escalating the Taylor degree when a midpoint enclosure
    /// straddles the target.
    pub fn bracket_root(
        &self,
        f: FunctionId,
        target: &Rational,
        seed: &RatInterval,
        monotonicity: MonotoneEvidence,
        width_goal: &Rational,
    ) -> Result<RootBracket> {
        let expr = f.expr();
        check_monotone(&expr, &monotonicity, seed, &f.name()).map_err(Error::Certificate)?;
        let direction = monotonicity.direction;
        let mut ev = self.evaluator.clone();
        let (mut lo, mut left, l) = decide(&mut ev, &expr, seed.lo(), target, direction)?;
        let (mut hi, mut right, r) = decide(&mut ev, &expr, seed.hi(), target, direction)?;
        if l != Ordering::Less || r != Ordering::Greater {
            return Err(Error::NoSignChange {
                seed: seed.to_string(),
                target: target.to_string(),
            });
        }
        while &(&hi - &lo) > width_goal {
            let mid = Rational::midpoint(&lo, &hi);
            let (m, node, o) = decide(&mut ev, &expr, &mid, target, direction)?;
            if o == Ordering::Less {
                lo = m;
                left = node;
            } else {
                hi = m;
                right = node;
            }
        }
        Ok(RootBracket {
            function: f,
            target: target.clone(),
            seed: seed.clone(),
            monotonicity,
            bracket: RatInterval::new(lo, hi)?,
            left,
            right,
        })
    }
}

fn decide(
    ev: &mut Evaluator,
    expr: &Expr,
    x: &Rational,
    target: &Rational,
    direction: Direction,
) -> Result<(Rational, Node, Ordering)> {
    let point = RatInterval::point(x.clone());
    loop {
        let node = ev.eval_expr(expr, &point)?;
        if let Some(o) = side(&node, target, direction) {
            return Ok((x.clone(), node, o));
        }
        if !ev.escalate() {
            return Err(Error::Precision {
                point: x.to_string(),
                target: target.to_string(),
                degree: ev.exp_degree_positive.max(ev.exp_degree_negative),
            });
        }
    }
}
