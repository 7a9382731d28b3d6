//! Replay of evidence records with exact arithmetic.
//!
//! Every routine here recomputes the recorded values from the recorded
//! inputs and demands exact equality. Nothing is searched for: degrees,
//! series lengths, bisection pieces and brackets all come from the record.

use std::fmt;

use planarconst_exact::{
    round_down, round_up, Poly, RatInterval, Rational, RationalFunction, Sign,
};

use crate::evidence::{
    AtanhSeries, DerivativeSign, Direction, ExpPoint, FactoredSign, LogPoint, MonotoneArgument,
    MonotoneEvidence, Node, PointEvidence, PolySignEvidence, RootBracket, SqrtPoint, Via,
    ENCLOSURE_GRID_DIGITS,
};
use crate::formula::Expr;

/// Why a certificate was rejected, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub path: String,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rejected at {}: {}", self.path, self.reason)
    }
}

impl std::error::Error for Rejection {}

pub type Check<T = ()> = Result<T, Rejection>;

fn reject<T>(path: &str, reason: impl Into<String>) -> Check<T> {
    Err(Rejection {
        path: path.to_string(),
        reason: reason.into(),
    })
}

fn expect_eq<T: PartialEq + fmt::Display>(path: &str, what: &str, found: &T, want: &T) -> Check {
    if found == want {
        Ok(())
    } else {
        reject(path, format!("{what} is {found}, recomputed {want}"))
    }
}

fn grid(raw: &RatInterval) -> RatInterval {
    RatInterval::new(
        round_down(raw.lo(), ENCLOSURE_GRID_DIGITS),
        round_up(raw.hi(), ENCLOSURE_GRID_DIGITS),
    )
    .expect("outward rounding keeps order")
}

fn factorial(k: u32) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i))
}

/// Replays an `exp` record: nested-form Taylor sum, Lagrange bracket,
/// then rounding before and after every squaring.
pub fn check_exp_point(p: &ExpPoint, path: &str) -> Check {
    if p.degree == 0 {
        return reject(path, "Taylor degree must be positive");
    }
    let x = &p.argument * &Rational::pow2(-(p.halvings as i32));
    if !(x > Rational::from_integer(-1) && x < Rational::one()) {
        return reject(path, format!("reduced argument {x} is outside (-1, 1)"));
    }
    let mut partial = Rational::one();
    for i in (1..p.degree).rev() {
        partial = Rational::one() + &(&x * &partial) / &Rational::from_integer(i as i64);
    }
    let lead = &x.pow(p.degree as i32) / &factorial(p.degree);
    let remainder = match x.signum() {
        0 => RatInterval::point(Rational::zero()),
        1 => RatInterval::new(lead.clone(), &lead * &Rational::from_integer(3)).expect("ordered"),
        _ => RatInterval::spanning(&(Rational::one() + &x) * &lead, lead),
    };
    expect_eq(path, "remainder", &p.remainder, &remainder)?;
    let mut value = grid(&RatInterval::point(partial).add(&remainder));
    for _ in 0..p.halvings {
        value = grid(&value.pow_int(2).expect("squaring never divides"));
    }
    expect_eq(path, "exp enclosure", &p.enclosure, &value)
}

fn atanh_series(s: &AtanhSeries, path: &str) -> Check<RatInterval> {
    if s.terms % 2 == 0 {
        return reject(path, "series length must be odd");
    }
    let u = &s.parameter;
    if u.abs() >= Rational::one() {
        return reject(path, "series parameter must lie in (-1, 1)");
    }
    let mut sum = Rational::zero();
    for i in (1..=s.terms).step_by(2) {
        sum = sum + &u.pow(i as i32) / &Rational::from_integer(i as i64);
    }
    sum = sum * Rational::from_integer(2);
    let n2 = s.terms as i32 + 2;
    let tail = &(Rational::from_integer(2) * u.abs().pow(n2))
        / &(Rational::from_integer(n2 as i64) * (Rational::one() - u * u));
    let remainder = match u.signum() {
        0 => RatInterval::point(Rational::zero()),
        1 => RatInterval::new(Rational::zero(), tail).expect("ordered"),
        _ => RatInterval::new(-tail, Rational::zero()).expect("ordered"),
    };
    expect_eq(path, "series remainder", &s.remainder, &remainder)?;
    Ok(RatInterval::point(sum).add(&remainder))
}

/// Replays a `log` record.
pub fn check_log_point(p: &LogPoint, path: &str) -> Check {
    if !p.argument.is_positive() {
        return reject(path, format!("log of non-positive {}", p.argument));
    }
    let y = &p.argument * &Rational::pow2(-p.shift);
    let u = &(&y - &Rational::one()) / &(&y + &Rational::one());
    expect_eq(path, "series parameter", &p.series.parameter, &u)?;
    let mut value = atanh_series(&p.series, path)?;
    match (&p.log2, p.shift) {
        (None, 0) => {}
        (Some(l2), k) if k != 0 => {
            let l2_path = format!("{path}/log2");
            expect_eq(&l2_path, "series parameter", &l2.parameter, &Rational::new(1, 3))?;
            let log2 = atanh_series(l2, &l2_path)?;
            value = value.add(&log2.scale(&Rational::from_integer(k as i64)));
        }
        _ => return reject(path, "log 2 series must be present exactly when shift is nonzero"),
    }
    expect_eq(path, "log enclosure", &p.enclosure, &grid(&value))
}

/// Replays a `sqrt` record from its squared endpoints.
pub fn check_sqrt_point(p: &SqrtPoint, path: &str) -> Check {
    if p.radicand.is_negative() || p.enclosure.lo().is_negative() {
        return reject(path, "square root of a negative quantity");
    }
    let squares = RatInterval::new(
        p.enclosure.lo() * p.enclosure.lo(),
        p.enclosure.hi() * p.enclosure.hi(),
    )
    .expect("squares of ordered non-negatives are ordered");
    expect_eq(path, "squared endpoints", &p.squares, &squares)?;
    if !squares.contains(&p.radicand) {
        return reject(path, "squared endpoints do not bracket the radicand");
    }
    Ok(())
}

fn point_argument(p: &PointEvidence) -> &Rational {
    match p {
        PointEvidence::Exp(e) => &e.argument,
        PointEvidence::Log(e) => &e.argument,
        PointEvidence::Sqrt(e) => &e.radicand,
    }
}

fn check_point(expr: &Expr, p: &PointEvidence, argument: &Rational, path: &str) -> Check {
    expect_eq(path, "argument", point_argument(p), argument)?;
    match (expr, p) {
        (Expr::Exp(_), PointEvidence::Exp(e)) => check_exp_point(e, path),
        (Expr::Log(_), PointEvidence::Log(e)) => check_log_point(e, path),
        (Expr::Sqrt(_), PointEvidence::Sqrt(e)) => check_sqrt_point(e, path),
        _ => reject(path, format!("evidence kind does not match {expr}")),
    }
}

/// Replays a sign certificate and checks it is about `polynomial` on `interval`.
pub fn check_poly_sign(
    ev: &PolySignEvidence,
    polynomial: &Poly,
    interval: &RatInterval,
    path: &str,
) -> Check<Sign> {
    if &ev.polynomial != polynomial {
        return reject(
            path,
            format!("certifies {} instead of {}", ev.polynomial, polynomial),
        );
    }
    expect_eq(path, "interval", &ev.interval, interval)?;
    let (Some(first), Some(last)) = (ev.pieces.first(), ev.pieces.last()) else {
        return reject(path, "no pieces");
    };
    if first.interval.lo() != interval.lo() || last.interval.hi() != interval.hi() {
        return reject(path, "pieces do not reach the interval endpoints");
    }
    for (i, pair) in ev.pieces.windows(2).enumerate() {
        if pair[0].interval.hi() != pair[1].interval.lo() {
            return reject(&format!("{path}/pieces[{}]", i + 1), "gap or overlap");
        }
    }
    for (i, piece) in ev.pieces.iter().enumerate() {
        let piece_path = format!("{path}/pieces[{i}]");
        if piece.interval.is_point() && !interval.is_point() {
            return reject(&piece_path, "degenerate piece");
        }
        let range = polynomial.eval_interval(&piece.interval);
        expect_eq(&piece_path, "range", &piece.range, &range)?;
        if range.sign() != Some(ev.sign) {
            return reject(&piece_path, format!("range {range} is not {:?}", ev.sign));
        }
    }
    Ok(ev.sign)
}

/// Checks that the factored form equals `target` and returns its sign.
pub fn check_factored(
    fs: &FactoredSign,
    target: &RationalFunction,
    interval: &RatInterval,
    path: &str,
) -> Check<Sign> {
    let Some(mut sign) = Sign::of(&fs.constant) else {
        return reject(path, "zero constant factor");
    };
    let mut numer = Poly::constant(fs.constant.clone());
    let mut denom = Poly::one();
    for (i, factor) in fs.factors.iter().enumerate() {
        let fpath = format!("{path}/factors[{i}]");
        let p = &factor.sign.polynomial;
        let s = check_poly_sign(&factor.sign, p, interval, &fpath)?;
        let e = factor.exponent;
        if e == 0 {
            return reject(&fpath, "zero exponent");
        }
        sign = sign.times(s.pow(e.unsigned_abs()));
        if e > 0 {
            numer = numer.mul(&p.pow(e as u32));
        } else {
            denom = denom.mul(&p.pow(e.unsigned_abs()));
        }
    }
    let product = RationalFunction { numer, denom };
    if !product.same_function(target) {
        return reject(path, "factored form does not expand to the derivative");
    }
    Ok(sign)
}

/// Shape `c + p·exp(q)` (or `p·exp(q)`) with rational `p` and `q`.
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

/// Replays a monotonicity argument for `expr` on `interval`.
pub fn check_monotone(
    expr: &Expr,
    ev: &MonotoneEvidence,
    interval: &RatInterval,
    path: &str,
) -> Check {
    expect_eq(path, "interval", &ev.interval, interval)?;
    let sign = match &ev.argument {
        MonotoneArgument::Constant => {
            if !expr.is_var_free() {
                return reject(path, format!("{expr} is not constant"));
            }
            return Ok(());
        }
        MonotoneArgument::RationalDerivative {
            denominator,
            derivative,
        } => {
            let Some(rf) = expr.to_rational_function() else {
                return reject(path, format!("{expr} is not a rational function"));
            };
            check_poly_sign(denominator, &rf.denom, interval, &format!("{path}/denominator"))?;
            let dpath = format!("{path}/derivative");
            match derivative {
                DerivativeSign::Direct(ps) => {
                    check_poly_sign(ps, &rf.derivative_numerator(), interval, &dpath)?
                }
                DerivativeSign::Factored(fs) => {
                    check_factored(fs, &rf.derivative(), interval, &dpath)?
                }
            }
        }
        MonotoneArgument::Increasing { inner } => {
            let child = match expr {
                Expr::Log(c) | Expr::Exp(c) | Expr::Sqrt(c) => c,
                _ => return reject(path, format!("{expr} is not log, exp or sqrt")),
            };
            check_monotone(child, inner, interval, &format!("{path}/inner"))?;
            if inner.direction != ev.direction {
                return reject(path, "direction differs from the inner direction");
            }
            return Ok(());
        }
        MonotoneArgument::ScaledExp {
            scale_denominator,
            exponent_denominator,
            derivative,
        } => {
            let Some((p, q)) = scaled_exp_parts(expr) else {
                return reject(path, format!("{expr} is not of the form c + p*exp(q)"));
            };
            let (Some(p), Some(q)) = (p.to_rational_function(), q.to_rational_function()) else {
                return reject(path, "scale or exponent is not rational");
            };
            check_poly_sign(scale_denominator, &p.denom, interval, &format!("{path}/scale"))?;
            check_poly_sign(
                exponent_denominator,
                &q.denom,
                interval,
                &format!("{path}/exponent"),
            )?;
            let f = p.derivative().add(&p.mul(&q.derivative()));
            check_factored(derivative, &f, interval, &format!("{path}/derivative"))?
        }
    };
    if Direction::from_sign(sign) != ev.direction {
        return reject(path, format!("derivative sign gives {:?}", Direction::from_sign(sign)));
    }
    Ok(())
}

fn child_path(path: &str, segment: impl fmt::Display) -> String {
    format!("{path}/{segment}")
}

/// Replays an enclosure tree for `expr` with `t` ranging over `arg`.
pub fn check_node(expr: &Expr, arg: &RatInterval, node: &Node, path: &str) -> Check {
    match &node.via {
        Via::Monotone {
            evidence,
            at_lo,
            at_hi,
        } => {
            check_monotone(expr, evidence, arg, &child_path(path, "monotone"))?;
            let lo = RatInterval::point(arg.lo().clone());
            let hi = RatInterval::point(arg.hi().clone());
            check_node(expr, &lo, at_lo, &child_path(path, "at_lo"))?;
            check_node(expr, &hi, at_hi, &child_path(path, "at_hi"))?;
            let span = evidence.direction.span(&at_lo.value, &at_hi.value);
            expect_eq(path, "monotone range", &node.value, &span)
        }
        Via::Transcendental {
            child,
            at_lo,
            at_hi,
        } => {
            let (inner, name) = match expr {
                Expr::Log(c) => (c, "log"),
                Expr::Exp(c) => (c, "exp"),
                Expr::Sqrt(c) => (c, "sqrt"),
                _ => return reject(path, format!("{expr} has no transcendental head")),
            };
            let cpath = child_path(path, name);
            check_node(inner, arg, child, &cpath)?;
            check_point(expr, at_lo, child.value.lo(), &child_path(&cpath, "at_lo"))?;
            check_point(expr, at_hi, child.value.hi(), &child_path(&cpath, "at_hi"))?;
            let value = RatInterval::new(
                at_lo.enclosure().lo().clone(),
                at_hi.enclosure().hi().clone(),
            );
            match value {
                Ok(v) => expect_eq(path, "value", &node.value, &v),
                Err(_) => reject(path, "endpoint enclosures are out of order"),
            }
        }
        Via::Arith { children } => check_arith(expr, arg, node, children, path),
    }
}

fn arity(path: &str, children: &[Node], n: usize) -> Check {
    if children.len() == n {
        Ok(())
    } else {
        reject(path, format!("expected {n} children, found {}", children.len()))
    }
}

fn check_arith(
    expr: &Expr,
    arg: &RatInterval,
    node: &Node,
    children: &[Node],
    path: &str,
) -> Check {
    let arith_err = |e: planarconst_exact::ExactError| Rejection {
        path: path.to_string(),
        reason: e.to_string(),
    };
    let value = match expr {
        Expr::Var => {
            arity(path, children, 0)?;
            arg.clone()
        }
        Expr::Const(c) => {
            arity(path, children, 0)?;
            RatInterval::point(c.clone())
        }
        Expr::Poly(p) => {
            arity(path, children, 0)?;
            p.eval_interval(arg)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            arity(path, children, 2)?;
            let op = match expr {
                Expr::Add(..) => "add",
                Expr::Sub(..) => "sub",
                Expr::Mul(..) => "mul",
                _ => "div",
            };
            check_node(a, arg, &children[0], &child_path(path, format!("{op}[0]")))?;
            check_node(b, arg, &children[1], &child_path(path, format!("{op}[1]")))?;
            let (x, y) = (&children[0].value, &children[1].value);
            match expr {
                Expr::Add(..) => x.add(y),
                Expr::Sub(..) => x.sub(y),
                Expr::Mul(..) => x.mul(y),
                _ => x.div(y).map_err(arith_err)?,
            }
        }
        Expr::Neg(a) => {
            arity(path, children, 1)?;
            check_node(a, arg, &children[0], &child_path(path, "neg"))?;
            children[0].value.neg()
        }
        Expr::Pow(a, n) => {
            arity(path, children, 1)?;
            check_node(a, arg, &children[0], &child_path(path, "pow"))?;
            children[0].value.pow_int(*n).map_err(arith_err)?
        }
        Expr::Sum(terms) => {
            arity(path, children, terms.len())?;
            let mut acc = RatInterval::point(Rational::zero());
            for (i, ((sign, e), child)) in terms.iter().zip(children).enumerate() {
                check_node(e, arg, child, &child_path(path, format!("sum[{i}]")))?;
                acc = match sign {
                    Sign::Positive => acc.add(&child.value),
                    Sign::Negative => acc.sub(&child.value),
                };
            }
            acc
        }
        Expr::Log(_) | Expr::Exp(_) | Expr::Sqrt(_) => {
            return reject(path, format!("{expr} needs transcendental evidence"));
        }
    };
    expect_eq(path, "value", &node.value, &value)
}

/// Replays a root bracket and returns the bracket.
pub fn check_root_bracket(rb: &RootBracket, path: &str) -> Check<RatInterval> {
    let expr = rb.function.expr();
    check_monotone(&expr, &rb.monotonicity, &rb.seed, &child_path(path, "monotonicity"))?;
    if !rb.bracket.is_subset_of(&rb.seed) {
        return reject(path, "bracket leaves the seed interval");
    }
    let lo = RatInterval::point(rb.bracket.lo().clone());
    let hi = RatInterval::point(rb.bracket.hi().clone());
    check_node(&expr, &lo, &rb.left, &child_path(path, "left"))?;
    check_node(&expr, &hi, &rb.right, &child_path(path, "right"))?;
    let target = &rb.target;
    let straddles = match rb.monotonicity.direction {
        Direction::Increasing => rb.left.value.hi() < target && target < rb.right.value.lo(),
        Direction::Decreasing => rb.left.value.lo() > target && target > rb.right.value.hi(),
    };
    if !straddles {
        return reject(path, "endpoint enclosures do not strictly straddle the target");
    }
    Ok(rb.bracket.clone())
}
