//! Rigorous enclosures of `exp`, `log` and `sqrt` at rational points.
//!
//! Each constructor returns the enclosure together with the evidence record
//! the checker replays. Transcendental enclosures are rounded outward to
//! multiples of `10^-40`; the rounding is part of the replayed rule.

use planarconst_cert::evidence::{
    AtanhSeries, ExpBound, ExpPoint, LogPoint, SqrtPoint, ENCLOSURE_GRID_DIGITS,
};
use num_integer::Integer;
use planarconst_exact::{round_down, round_up, BigInt, RatInterval, Rational};

use crate::error::{Error, Result};

/// Largest `|x|` accepted by [`exp_point_reduced`].
pub const EXP_REDUCTION_LIMIT: i64 = 1024;

/// Default width budget of one `log` or `sqrt` enclosure.
pub fn default_budget() -> Rational {
    Rational::pow10(-13)
}

fn outward(raw: &RatInterval) -> RatInterval {
    RatInterval::new(
        round_down(raw.lo(), ENCLOSURE_GRID_DIGITS),
        round_up(raw.hi(), ENCLOSURE_GRID_DIGITS),
    )
    .expect("outward rounding keeps order")
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, i| acc * i)
}

/// `Σ_{i<k} x^i/i!` over the common denominator `q^(k-1)·(k-1)!`, with
/// `x = p/q`, by integer Horner on the numerator.
fn taylor_partial(x: &Rational, k: u32) -> Rational {
    let (p, q) = (x.numer(), x.denom());
    let mut acc = BigInt::from(1);
    let mut c = BigInt::from(1);
    let mut q_pow = BigInt::from(1);
    for i in (0..k.saturating_sub(1)).rev() {
        c *= i + 1;
        q_pow *= q;
        acc = acc * p + &c * &q_pow;
    }
    Rational::new(acc, c * q_pow)
}

/// `Σ_{i<degree} x^i/i!` and the bracket of the Lagrange remainder
/// `exp(ξ)·x^degree/degree!`, for `x ∈ (-1, 1)`.
///
/// On `(0, 1)` the factor `exp(ξ)` lies in `(1, 3)`; on `(-1, 0)` it lies in
/// `(1 + x, 1)`, and the parity of `degree` fixes the sign of `x^degree`.
pub fn exp_taylor_bracket(x: &Rational, degree: u32) -> (Rational, RatInterval) {
    let partial = taylor_partial(x, degree);
    let lead = Rational::new(
        x.numer().pow(degree),
        x.denom().pow(degree) * factorial(degree),
    );
    let remainder = if x.is_zero() {
        RatInterval::point(Rational::zero())
    } else if x.is_positive() {
        RatInterval::new(lead.clone(), &lead * &Rational::from_integer(3)).expect("ordered")
    } else {
        RatInterval::spanning(&(Rational::one() + x) * &lead, lead)
    };
    (partial, remainder)
}

fn exp_point_with(x: &Rational, degree: u32, halvings: u32) -> ExpPoint {
    let base = x * &Rational::pow2(-(halvings as i32));
    let (partial, remainder) = exp_taylor_bracket(&base, degree);
    let mut enclosure = outward(&RatInterval::point(partial).add(&remainder));
    for _ in 0..halvings {
        enclosure = outward(&enclosure.pow_int(2).expect("squaring never divides"));
    }
    ExpPoint {
        argument: x.clone(),
        halvings,
        degree,
        remainder,
        enclosure,
    }
}

/// `exp(x)` for `x ∈ (-1, 1)` at the given Taylor degree.
pub fn exp_point(x: &Rational, degree: u32) -> Result<ExpPoint> {
    if degree == 0 {
        return Err(Error::Config("Taylor degree must be positive".into()));
    }
    if x.abs() >= Rational::one() {
        return Err(Error::Domain {
            function: "exp",
            argument: x.to_string(),
            reason: "outside the Taylor window (-1, 1); reduce the argument first",
        });
    }
    Ok(exp_point_with(x, degree, 0))
}

/// `exp(x)` for `|x| ≤ EXP_REDUCTION_LIMIT`, halving the argument into `(-1, 1)` and squaring back.
pub fn exp_point_reduced(x: &Rational, degree: u32) -> Result<ExpPoint> {
    if x.abs() > Rational::from_integer(EXP_REDUCTION_LIMIT) {
        return Err(Error::Domain {
            function: "exp",
            argument: x.to_string(),
            reason: "argument too large to reduce",
        });
    }
    let mut halvings = 0;
    while (x * &Rational::pow2(-halvings)).abs() >= Rational::one() {
        halvings += 1;
    }
    if halvings == 0 {
        return exp_point(x, degree);
    }
    if degree == 0 {
        return Err(Error::Config("Taylor degree must be positive".into()));
    }
    Ok(exp_point_with(x, degree, halvings as u32))
}

/// `exp` over an interval inside `(-1, 1)`: the lower bound at the left end
/// and the upper bound at the right end.
pub fn exp_enclosure(x: &RatInterval, degree: u32) -> Result<(RatInterval, ExpBound)> {
    let at_lo = exp_point(x.lo(), degree)?;
    let at_hi = if x.is_point() {
        at_lo.clone()
    } else {
        exp_point(x.hi(), degree)?
    };
    let value = RatInterval::new(at_lo.enclosure.lo().clone(), at_hi.enclosure.hi().clone())?;
    Ok((value, ExpBound { at_lo, at_hi }))
}

fn atanh_tail(u: &Rational, terms: u32) -> Rational {
    let n2 = terms as i32 + 2;
    &(Rational::from_integer(2) * u.abs().pow(n2))
        / &(Rational::from_integer(n2 as i64) * (Rational::one() - u * u))
}

/// `Σ_{odd i ≤ n} u^i/i` over the common denominator `q^n·M`, with
/// `u = p/q` and `M = lcm(1, 3, …, n)`, by integer Horner in `p²` and `q²`.
fn odd_power_sum(u: &Rational, n: u32) -> Rational {
    let (p, q) = (u.numer(), u.denom());
    let m = (1..=n)
        .step_by(2)
        .fold(BigInt::from(1), |acc, i| acc.lcm(&BigInt::from(i)));
    let (p2, q2) = (p * p, q * q);
    let top = (n - 1) / 2;
    let mut acc = &m / BigInt::from(n);
    let mut q2_pow = BigInt::from(1);
    for j in (0..top).rev() {
        q2_pow *= &q2;
        acc = acc * &p2 + (&m / BigInt::from(2 * j + 1)) * &q2_pow;
    }
    Rational::new(acc * p, q.pow(n) * m)
}

/// `2·Σ_{odd i ≤ terms} u^i/i` plus its tail bracket.
fn atanh_series(u: &Rational, terms: u32) -> (RatInterval, AtanhSeries) {
    let sum = odd_power_sum(u, terms) * Rational::from_integer(2);
    let tail = atanh_tail(u, terms);
    let remainder = match u.signum() {
        0 => RatInterval::point(Rational::zero()),
        1 => RatInterval::new(Rational::zero(), tail).expect("ordered"),
        _ => RatInterval::new(-tail, Rational::zero()).expect("ordered"),
    };
    let value = RatInterval::point(sum).add(&remainder);
    (
        value,
        AtanhSeries {
            parameter: u.clone(),
            terms,
            remainder,
        },
    )
}

/// Smallest odd series length whose tail bound is at most `width`.
fn terms_for(u: &Rational, width: &Rational) -> u32 {
    if u.is_zero() {
        return 1;
    }
    // tail(n) <= width  <=>  |u|^(n+2) <= (n+2)·width·(1-u²)/2
    let u2 = u * u;
    let scale = &(width * &(Rational::one() - &u2)) / &Rational::from_integer(2);
    let mut power = u.abs().pow(3);
    let mut n = 1;
    while power > &scale * &Rational::from_integer(n as i64 + 2) {
        n += 2;
        power = &power * &u2;
    }
    n
}

/// Power-of-two shift `k` with `x·2^-k ∈ [3/4, 3/2)`.
fn log_shift(x: &Rational) -> i32 {
    let bits = |n: &BigInt| n.bits() as i64;
    let mut k = (bits(x.numer()) - bits(x.denom())) as i32;
    let lower = Rational::new(3, 4);
    let upper = Rational::new(3, 2);
    loop {
        let y = x * &Rational::pow2(-k);
        if y >= upper {
            k += 1;
        } else if y < lower {
            k -= 1;
        } else {
            return k;
        }
    }
}

/// `log(x)` from explicit series lengths. `log2_terms` is ignored when no
/// power-of-two shift is needed.
pub fn log_point_with_terms(x: &Rational, terms: u32, log2_terms: u32) -> Result<LogPoint> {
    if !x.is_positive() {
        return Err(Error::Domain {
            function: "log",
            argument: x.to_string(),
            reason: "argument must be positive",
        });
    }
    let shift = log_shift(x);
    let y = x * &Rational::pow2(-shift);
    let u = &(&y - &Rational::one()) / &(&y + &Rational::one());
    let (mut raw, series) = atanh_series(&u, terms | 1);
    let log2 = if shift != 0 {
        let (l2, s2) = atanh_series(&Rational::new(1, 3), log2_terms | 1);
        raw = raw.add(&l2.scale(&Rational::from_integer(shift as i64)));
        Some(s2)
    } else {
        None
    };
    Ok(LogPoint {
        argument: x.clone(),
        shift,
        series,
        log2,
        enclosure: outward(&raw),
    })
}

/// `log(x)` with enclosure width at most `budget`.
pub fn log_enclosure(x: &Rational, budget: &Rational) -> Result<(RatInterval, LogPoint)> {
    let slack = Rational::from_integer(2) * Rational::pow10(-(ENCLOSURE_GRID_DIGITS as i32));
    if budget <= &slack {
        return Err(Error::Config(format!(
            "width budget {budget} is below the rounding grid"
        )));
    }
    if !x.is_positive() {
        return Err(Error::Domain {
            function: "log",
            argument: x.to_string(),
            reason: "argument must be positive",
        });
    }
    let avail = budget - &slack;
    let shift = log_shift(x);
    let y = x * &Rational::pow2(-shift);
    let u = &(&y - &Rational::one()) / &(&y + &Rational::one());
    let (terms, log2_terms) = if shift == 0 {
        (terms_for(&u, &avail), 1)
    } else {
        let half = &avail * &Rational::new(1, 2);
        let per_shift = &half / &Rational::from_integer(shift.unsigned_abs() as i64);
        (terms_for(&u, &half), terms_for(&Rational::new(1, 3), &per_shift))
    };
    let point = log_point_with_terms(x, terms, log2_terms)?;
    Ok((point.enclosure.clone(), point))
}

/// `sqrt(x)` by exact bisection from an integer bracket, width at most `budget`.
pub fn sqrt_enclosure(x: &Rational, budget: &Rational) -> Result<(RatInterval, SqrtPoint)> {
    if x.is_negative() {
        return Err(Error::Domain {
            function: "sqrt",
            argument: x.to_string(),
            reason: "argument must be non-negative",
        });
    }
    if !budget.is_positive() {
        return Err(Error::Config("width budget must be positive".into()));
    }
    let root = Rational::from_integer(x.floor().sqrt());
    let (mut lo, mut hi) = if &(&root * &root) == x {
        (root.clone(), root)
    } else {
        (root.clone(), root + Rational::one())
    };
    while &(&hi - &lo) > budget {
        let mid = Rational::midpoint(&lo, &hi);
        let sq = &mid * &mid;
        if &sq == x {
            lo = mid.clone();
            hi = mid;
        } else if &sq < x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let enclosure = RatInterval::new(lo, hi)?;
    let squares = RatInterval::new(
        enclosure.lo() * enclosure.lo(),
        enclosure.hi() * enclosure.hi(),
    )?;
    Ok((
        enclosure.clone(),
        SqrtPoint {
            radicand: x.clone(),
            enclosure,
            squares,
        },
    ))
}
