//! Evidence records. Every record stores the values it justifies together
//! with the inputs needed to recompute them; the checker recomputes and
//! demands exact equality.

use planarconst_exact::{Poly, RatInterval, Rational, Sign};
use serde::{Deserialize, Serialize};

use crate::formula::FunctionId;

/// Transcendental results are rounded outward to multiples of `10^-ENCLOSURE_GRID_DIGITS`.
pub const ENCLOSURE_GRID_DIGITS: u32 = 40;

/// An enclosure of one expression node over the current argument interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub value: RatInterval,
    pub via: Via,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Via {
    /// Exact interval arithmetic over the children of the expression node.
    /// Leaves (`t`, constants, polynomials) have no children.
    Arith { children: Vec<Node> },
    /// `log`, `exp` or `sqrt` of the child, bounded at both child endpoints.
    Transcendental {
        child: Box<Node>,
        at_lo: PointEvidence,
        at_hi: PointEvidence,
    },
    /// The expression is monotone on the argument interval, so its range is
    /// spanned by its values at the two endpoints.
    Monotone {
        evidence: MonotoneEvidence,
        at_lo: Box<Node>,
        at_hi: Box<Node>,
    },
}

impl Node {
    pub fn leaf(value: RatInterval) -> Node {
        Node {
            value,
            via: Via::Arith {
                children: Vec::new(),
            },
        }
    }

    /// Child nodes in evaluation order, for walking a tree.
    pub fn children(&self) -> Vec<&Node> {
        match &self.via {
            Via::Arith { children } => children.iter().collect(),
            Via::Transcendental { child, .. } => vec![child],
            Via::Monotone { at_lo, at_hi, .. } => vec![at_lo, at_hi],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointEvidence {
    Exp(ExpPoint),
    Log(LogPoint),
    Sqrt(SqrtPoint),
}

impl PointEvidence {
    pub fn enclosure(&self) -> &RatInterval {
        match self {
            PointEvidence::Exp(e) => &e.enclosure,
            PointEvidence::Log(e) => &e.enclosure,
            PointEvidence::Sqrt(e) => &e.enclosure,
        }
    }
}

/// `exp(argument)` from a Taylor polynomial of the given degree at
/// `argument / 2^halvings`, whose Lagrange remainder lies in `remainder`,
/// followed by `halvings` squarings. The enclosure is rounded outward to the
/// grid before the first squaring and after each one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpPoint {
    pub argument: Rational,
    pub halvings: u32,
    pub degree: u32,
    pub remainder: RatInterval,
    pub enclosure: RatInterval,
}

/// `log(argument) = shift·log 2 + log(argument·2^-shift)`, each logarithm
/// from a truncated atanh series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogPoint {
    pub argument: Rational,
    pub shift: i32,
    pub series: AtanhSeries,
    /// Present exactly when `shift != 0`.
    pub log2: Option<AtanhSeries>,
    pub enclosure: RatInterval,
}

/// `log((1+u)/(1-u)) = 2·Σ_{odd i ≤ terms} u^i/i + tail`, `tail ∈ remainder`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtanhSeries {
    pub parameter: Rational,
    pub terms: u32,
    pub remainder: RatInterval,
}

/// `enclosure.lo² ≤ radicand ≤ enclosure.hi²`, with both squares recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtPoint {
    pub radicand: Rational,
    pub enclosure: RatInterval,
    pub squares: RatInterval,
}

/// A polynomial has constant strict sign on `interval`: the pieces tile the
/// interval and the interval-Horner range of every piece excludes zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySignEvidence {
    pub polynomial: Poly,
    pub interval: RatInterval,
    pub sign: Sign,
    pub pieces: Vec<SignPiece>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignPiece {
    pub interval: RatInterval,
    pub range: RatInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn from_sign(sign: Sign) -> Direction {
        match sign {
            Sign::Positive => Direction::Increasing,
            Sign::Negative => Direction::Decreasing,
        }
    }

    /// `[f(lo), f(hi)]` oriented by the direction.
    pub fn span(self, at_lo: &RatInterval, at_hi: &RatInterval) -> RatInterval {
        let (low, high) = match self {
            Direction::Increasing => (at_lo.lo(), at_hi.hi()),
            Direction::Decreasing => (at_hi.lo(), at_lo.hi()),
        };
        RatInterval::spanning(low.clone(), high.clone())
    }
}

/// Strict monotonicity of the expression at the evidence's position on `interval`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneEvidence {
    pub direction: Direction,
    pub interval: RatInterval,
    pub argument: MonotoneArgument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotoneArgument {
    /// The expression does not depend on `t`.
    Constant,
    /// A quotient `n/d` with `d` sign-definite and `(n/d)'` sign-definite.
    RationalDerivative {
        denominator: PolySignEvidence,
        derivative: DerivativeSign,
    },
    /// `log`, `exp` or `sqrt` of a monotone child, with the child's direction.
    Increasing { inner: Box<MonotoneEvidence> },
    /// `c + p·exp(q)` with rational `p`, `q`: the derivative is
    /// `exp(q)·(p' + p·q')` and `p' + p·q'` is given in factored form.
    ScaledExp {
        scale_denominator: PolySignEvidence,
        exponent_denominator: PolySignEvidence,
        derivative: FactoredSign,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeSign {
    /// Sign of the derivative numerator `n'd - nd'`.
    Direct(PolySignEvidence),
    /// A factored form equal to the derivative as a rational function.
    Factored(FactoredSign),
}

/// `constant · Π factor.polynomial^exponent` with each factor's sign certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredSign {
    pub constant: Rational,
    pub factors: Vec<SignedFactor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedFactor {
    pub exponent: i32,
    pub sign: PolySignEvidence,
}

/// A root of `function = target` inside `bracket`, located by strict
/// inequalities at the bracket endpoints and unique by monotonicity on `seed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBracket {
    pub function: FunctionId,
    pub target: Rational,
    pub seed: RatInterval,
    pub monotonicity: MonotoneEvidence,
    pub bracket: RatInterval,
    pub left: Node,
    pub right: Node,
}

/// `exp` over an interval, bounded at its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpBound {
    pub at_lo: ExpPoint,
    pub at_hi: ExpPoint,
}

/// Copies of the referenced enclosures, summed with their signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aggregation {
    pub terms: Vec<RatInterval>,
}
