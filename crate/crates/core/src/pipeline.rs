//! End-to-end computation of `t0`, `nu`, `rho` and `exp(-nu)` with a
//! certificate for every reported interval.

use planarconst_cert::evidence::{Aggregation, ExpBound, Node};
use planarconst_cert::{
    verify, Argument, BoundCertificate, CertificateFile, Claim, ConfigEcho, Evidence, FunctionId,
    SignedName, Subject,
};
use planarconst_exact::{RatInterval, Rational, Sign};

use crate::bound::{certify_monotone, Prover, DEFAULT_MAX_DEPTH};
use crate::error::{Error, Result};
use crate::functions::{y_check_points, Evaluator};

/// Smallest accepted `t0` width goal and transcendental width budget.
pub fn sanity_floor() -> Rational {
    Rational::pow10(-30)
}

/// `[0.6263716632, 0.6263716634]`, the seed for the root of `Y = 1`.
pub fn seed_bracket() -> RatInterval {
    let (lo, hi) = y_check_points();
    RatInterval::new(lo, hi).expect("ordered")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub width_budget: Rational,
    pub t0_width: Rational,
    pub exp_degree_positive: u32,
    pub exp_degree_negative: u32,
    pub max_depth: u32,
}

impl Default for Config {
    fn default() -> Self {
        let ev = Evaluator::default();
        Config {
            width_budget: ev.width_budget,
            t0_width: Rational::pow10(-12),
            exp_degree_positive: ev.exp_degree_positive,
            exp_degree_negative: ev.exp_degree_negative,
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let floor = sanity_floor();
        if self.t0_width < floor {
            return Err(Error::Config(format!(
                "t0 width {} is below the sanity floor 10^-30",
                self.t0_width
            )));
        }
        if self.width_budget < floor {
            return Err(Error::Config(format!(
                "width budget {} is below the sanity floor 10^-30",
                self.width_budget
            )));
        }
        if self.exp_degree_positive == 0 || self.exp_degree_negative == 0 {
            return Err(Error::Config("Taylor degrees must be positive".into()));
        }
        Ok(())
    }

    /// Every width divided by `factor`.
    pub fn tightened(&self, factor: i64) -> Config {
        let f = Rational::from_integer(factor);
        Config {
            width_budget: &self.width_budget / &f,
            t0_width: &self.t0_width / &f,
            ..self.clone()
        }
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            width_budget: self.width_budget.clone(),
            t0_width: self.t0_width.clone(),
            exp_degree_positive: self.exp_degree_positive,
            exp_degree_negative: self.exp_degree_negative,
            max_depth: self.max_depth,
        }
    }

    fn prover(&self) -> Prover {
        Prover::new(
            Evaluator {
                width_budget: self.width_budget.clone(),
                exp_degree_positive: self.exp_degree_positive,
                exp_degree_negative: self.exp_degree_negative,
            },
            self.max_depth,
        )
    }
}

/// Lazily computes the constants, recording one certificate per step in
/// dependency order.
pub struct Pipeline {
    config: Config,
    prover: Prover,
    certificates: Vec<BoundCertificate>,
}

impl Pipeline {
    pub fn new(config: Config) -> Result<Self> {
        config.validate()?;
        Ok(Pipeline {
            prover: config.prover(),
            config,
            certificates: Vec::new(),
        })
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn prover(&self) -> &Prover {
        &self.prover
    }

    fn lookup(&self, name: &str) -> Option<RatInterval> {
        self.certificates
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.claim.enclosure.clone())
    }

    fn lookup_node(&self, name: &str) -> Option<&Node> {
        match &self.certificates.iter().find(|c| c.name == name)?.evidence {
            Evidence::Node(n) => Some(n),
            _ => None,
        }
    }

    fn record(&mut self, name: &str, subject: Subject, enclosure: RatInterval, evidence: Evidence) {
        self.certificates.push(BoundCertificate {
            name: name.to_string(),
            claim: Claim { subject, enclosure },
            evidence,
        });
    }

    fn function_at(&mut self, name: &str, f: FunctionId, argument: Argument, node: Node) -> RatInterval {
        let value = node.value.clone();
        self.record(
            name,
            Subject::Function {
                function: f,
                argument,
            },
            value.clone(),
            Evidence::Node(node),
        );
        value
    }

    /// Enclosures of `Y` at the seed endpoints, named `Y(t-)` and `Y(t+)`.
    pub fn y_check(&mut self) -> Result<(RatInterval, RatInterval)> {
        if let (Some(a), Some(b)) = (self.lookup("Y(t-)"), self.lookup("Y(t+)")) {
            return Ok((a, b));
        }
        let seed = seed_bracket();
        let ev = &self.prover.evaluator;
        let lo = RatInterval::point(seed.lo().clone());
        let hi = RatInterval::point(seed.hi().clone());
        let at_lo = ev.eval(FunctionId::Y, &lo)?;
        let at_hi = ev.eval(FunctionId::Y, &hi)?;
        let a = self.function_at("Y(t-)", FunctionId::Y, Argument::Interval(lo), at_lo);
        let b = self.function_at("Y(t+)", FunctionId::Y, Argument::Interval(hi), at_hi);
        Ok((a, b))
    }

    /// Bracket of the root of `Y(t) = 1`, of width at most the configured goal.
    pub fn t0(&mut self) -> Result<RatInterval> {
        if let Some(v) = self.lookup("t0") {
            return Ok(v);
        }
        self.y_check()?;
        let seed = seed_bracket();
        let target = Rational::one();
        let mono = certify_monotone(&FunctionId::Y.expr(), &seed, self.config.max_depth)?;
        let rb = self.prover.bracket_root(
            FunctionId::Y,
            &target,
            &seed,
            mono,
            &self.config.t0_width,
        )?;
        let bracket = rb.bracket.clone();
        debug_assert!(bracket.is_subset_of(&seed));
        self.record(
            "t0",
            Subject::Root {
                function: FunctionId::Y,
                target,
            },
            bracket.clone(),
            Evidence::RootBracket(rb),
        );
        Ok(bracket)
    }

    fn uniform_on_t0(&mut self, name: &str, f: FunctionId) -> Result<RatInterval> {
        if let Some(v) = self.lookup(name) {
            return Ok(v);
        }
        let t0 = self.t0()?;
        let node = self.prover.uniform_bound(f, &t0)?;
        Ok(self.function_at(name, f, Argument::Named("t0".into()), node))
    }

    /// `R(1) = xi(t0)`, from the monotonicity of `xi` over the `t0` bracket.
    pub fn r1(&mut self) -> Result<RatInterval> {
        if let Some(v) = self.lookup("R1") {
            return Ok(v);
        }
        let t0 = self.t0()?;
        let mono = certify_monotone(&FunctionId::Xi.expr(), &t0, self.config.max_depth)?;
        let node = self.prover.monotone_uniform_bound(FunctionId::Xi, &t0, mono)?;
        Ok(self.function_at("R1", FunctionId::Xi, Argument::Named("t0".into()), node))
    }

    pub fn b0(&mut self) -> Result<RatInterval> {
        self.uniform_on_t0("B0", FunctionId::B0)
    }

    pub fn b2(&mut self) -> Result<RatInterval> {
        self.uniform_on_t0("B2", FunctionId::B2)
    }

    pub fn a(&mut self) -> Result<RatInterval> {
        self.uniform_on_t0("A", FunctionId::A)
    }

    /// `rho = r(t0)`.
    pub fn rho(&mut self) -> Result<RatInterval> {
        self.uniform_on_t0("rho", FunctionId::R)
    }

    /// `nu = R(1) + B0(t0) + B2(t0)`.
    pub fn nu(&mut self) -> Result<RatInterval> {
        if let Some(v) = self.lookup("nu") {
            return Ok(v);
        }
        let parts = [("R1", self.r1()?), ("B0", self.b0()?), ("B2", self.b2()?)];
        let value = parts
            .iter()
            .fold(RatInterval::point(Rational::zero()), |acc, (_, v)| acc.add(v));
        let terms = parts
            .iter()
            .map(|(n, _)| SignedName {
                sign: Sign::Positive,
                name: n.to_string(),
            })
            .collect();
        self.record(
            "nu",
            Subject::Sum { terms },
            value.clone(),
            Evidence::Aggregation(Aggregation {
                terms: parts.into_iter().map(|(_, v)| v).collect(),
            }),
        );
        Ok(value)
    }

    /// `exp(-nu)`, bounded at the endpoints of `-nu`.
    pub fn exp_neg_nu(&mut self) -> Result<RatInterval> {
        if let Some(v) = self.lookup("exp_neg_nu") {
            return Ok(v);
        }
        let x = self.nu()?.neg();
        let ev = &self.prover.evaluator;
        let at_lo = ev.exp_point(x.lo())?;
        let at_hi = ev.exp_point(x.hi())?;
        let value = RatInterval::new(at_lo.enclosure.lo().clone(), at_hi.enclosure.hi().clone())?;
        self.record(
            "exp_neg_nu",
            Subject::Exp {
                sign: Sign::Negative,
                of: "nu".into(),
            },
            value.clone(),
            Evidence::Exp(ExpBound { at_lo, at_hi }),
        );
        Ok(value)
    }

    /// Enclosures of the terms of a sum-defined certificate, in term order.
    pub fn summands(&self, name: &str) -> Option<Vec<RatInterval>> {
        Some(
            self.lookup_node(name)?
                .children()
                .iter()
                .map(|c| c.value.clone())
                .collect(),
        )
    }

    /// The certificate file for everything computed so far.
    pub fn certificate(&self) -> CertificateFile {
        CertificateFile::new(self.config.echo(), self.certificates.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantReport {
    pub t0: RatInterval,
    pub r1: RatInterval,
    pub b0_at_t0: RatInterval,
    pub b2_at_t0: RatInterval,
    pub nu: RatInterval,
    pub a_at_t0: RatInterval,
    pub rho: RatInterval,
    pub exp_neg_nu: RatInterval,
    pub b0_summands: Vec<RatInterval>,
    pub b2_summands: Vec<RatInterval>,
    pub a_summands: Vec<RatInterval>,
    pub certificate: CertificateFile,
}

impl ConstantReport {
    /// Named top-level constants in report order.
    pub fn rows(&self) -> [(&'static str, &RatInterval); 8] {
        [
            ("t0", &self.t0),
            ("R1", &self.r1),
            ("B0", &self.b0_at_t0),
            ("B2", &self.b2_at_t0),
            ("nu", &self.nu),
            ("A", &self.a_at_t0),
            ("rho", &self.rho),
            ("exp_neg_nu", &self.exp_neg_nu),
        ]
    }
}

/// Computes every constant and replays the resulting certificate before
/// returning it.
pub fn compute_all(config: &Config) -> Result<ConstantReport> {
    let mut p = Pipeline::new(config.clone())?;
    let t0 = p.t0()?;
    if !t0.is_subset_of(&seed_bracket()) {
        return Err(Error::Config(format!("t0 bracket {t0} leaves the seed bracket")));
    }
    let nu = p.nu()?;
    let a = p.a()?;
    let rho = p.rho()?;
    let exp_neg_nu = p.exp_neg_nu()?;
    let certificate = p.certificate();
    verify(&certificate).map_err(Error::Certificate)?;
    let sum = |name| p.summands(name).expect("sum certificate present");
    let (b0_summands, b2_summands, a_summands) = (sum("B0"), sum("B2"), sum("A"));
    Ok(ConstantReport {
        r1: p.r1()?,
        b0_at_t0: p.b0()?,
        b2_at_t0: p.b2()?,
        b0_summands,
        b2_summands,
        a_summands,
        t0,
        nu,
        a_at_t0: a,
        rho,
        exp_neg_nu,
        certificate,
    })
}

/// `t0` bracket of width at most `width_goal`, default precision otherwise.
pub fn compute_t0(width_goal: &Rational) -> Result<RatInterval> {
    Pipeline::new(Config {
        t0_width: width_goal.clone(),
        ..Config::default()
    })?
    .t0()
}

pub fn compute_nu() -> Result<RatInterval> {
    Pipeline::new(Config::default())?.nu()
}

pub fn compute_rho() -> Result<RatInterval> {
    Pipeline::new(Config::default())?.rho()
}

pub fn compute_exp_neg_nu() -> Result<RatInterval> {
    Pipeline::new(Config::default())?.exp_neg_nu()
}

