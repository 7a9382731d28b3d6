//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs with a custom harness. Exits nonzero if any criterion outside
//! `KNOWN_UNATTAINABLE` fails, or if a known-unattainable one starts passing.

use std::process::ExitCode;
use std::time::Instant;

use planarconst::bound::Prover;
use planarconst::functions::{y_check_points, Evaluator};
use planarconst::pipeline::seed_bracket;
use planarconst::transcendental::{exp_point, exp_taylor_bracket};
use planarconst::{compute_all, compute_t0, exact_poly_at, Config, ConstantReport};
use planarconst_cert::formula::{int, poly, t};
use planarconst_cert::{verify_bytes, Expr, FunctionId};
use planarconst_exact::{interval_arith, parse_decimal, IntervalOp, RatInterval, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config as RunnerConfig, TestRunner};

/// B0 summand 4 is `log(t+3)/4`; its value at the root already exceeds the
/// stated upper bound `0.32205815165`.
const KNOWN_UNATTAINABLE: &[u32] = &[5];

fn dec(s: &str) -> Rational {
    parse_decimal(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// The open interval `(lo, hi)`.
fn open(lo: &str, hi: &str) -> (Rational, Rational) {
    (dec(lo), dec(hi))
}

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, what: impl Into<String>, ok: bool) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    /// `x ⊂ (lo, hi)`, strictly.
    fn inside(&mut self, what: &str, x: &RatInterval, bounds: (Rational, Rational)) {
        let ok = x.is_strictly_inside(&bounds.0, &bounds.1);
        self.check(
            format!("{what}: {} not inside ({}, {})", show(x), show1(&bounds.0), show1(&bounds.1)),
            ok,
        );
    }

    /// `lo < x < hi` for an exact value.
    fn between(&mut self, what: &str, x: &Rational, bounds: (Rational, Rational)) {
        self.inside(what, &RatInterval::point(x.clone()), bounds);
    }
}

fn show1(x: &Rational) -> String {
    planarconst_exact::round_down(x, 15)
        .to_decimal_string()
        .unwrap_or_else(|| x.to_string())
}

fn show(x: &RatInterval) -> String {
    format!("[{}, {}]", show1(x.lo()), show1(x.hi()))
}

fn pm(center: &str, window: i32) -> (Rational, Rational) {
    let c = dec(center);
    let w = Rational::pow10(-window);
    (&c - &w, &c + &w)
}

fn t_minus() -> Rational {
    y_check_points().0
}

fn t_plus() -> Rational {
    y_check_points().1
}

fn point(x: Rational) -> RatInterval {
    RatInterval::point(x)
}

fn criterion_1(_: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    let start = Instant::now();
    let t0 = compute_t0(&Rational::pow10(-12)).expect("t0");
    let elapsed = start.elapsed();
    o.check(
        format!("t0 {} not within [0.6263716632, 0.6263716634]", show(&t0)),
        t0.is_subset_of(&seed_bracket()),
    );
    o.check(format!("t0 took {elapsed:?}"), elapsed.as_secs_f64() < 5.0);
    o
}

fn criterion_2(report: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    let cert = &report.certificate;
    let at = |name: &str| cert.get(name).expect(name).claim.enclosure.clone();
    let lo = at("Y(t-)");
    let hi = at("Y(t+)");
    o.check(format!("Y(t-) upper {}", show(&lo)), lo.hi() < &dec("0.9999999996"));
    o.check(format!("Y(t+) lower {}", show(&hi)), hi.lo() > &dec("1.00000000009"));
    o
}

fn criterion_3(_: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    let start = Instant::now();
    let ev = Evaluator::default();
    let exact = |f: FunctionId, x: Rational| {
        let v = ev.eval(f, &point(x)).expect("rational evaluation").value;
        assert!(v.is_point(), "{f} is rational");
        v.lo().clone()
    };
    o.between("h1(t-)", &exact(FunctionId::H1, t_minus()), pm("2.0941746325", 10));
    o.between("h1(t+)", &exact(FunctionId::H1, t_plus()), pm("2.0941746335", 10));
    o.between("h2(t-)", &exact(FunctionId::H2, t_minus()), pm("-0.0460123254", 10));
    o.between("h2(t+)", &exact(FunctionId::H2, t_plus()), pm("-0.0460123253", 10));
    o.check("took over 1 s", start.elapsed().as_secs_f64() < 1.0);
    o
}

fn criterion_4(report: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    let ev = Evaluator::default();
    let xi = |x| ev.eval(FunctionId::Xi, &point(x)).expect("xi").value;
    o.inside("xi(t-)", &xi(t_minus()), open("0.03819109771", "0.03819109772"));
    o.inside("xi(t+)", &xi(t_plus()), open("0.03819109762", "0.03819109763"));
    o.inside("R(1)", &report.r1, open("0.0381910976", "0.0381910977"));
    o
}

fn criterion_5(report: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    let published = [
        open("0.22495616614", "0.22495616711"),
        open("-0.28456395530", "-0.28456395528"),
        open("0.00029614190", "0.00029614191"),
        open("0.32205815164", "0.32205815165"),
        open("-0.23390568644", "-0.23390568627"),
        open("1.03972077083", "1.03972077084"),
        open("0.02472734758", "0.02472734762"),
    ];
    for (i, (x, b)) in report.b0_summands.iter().zip(published).enumerate() {
        o.inside(&format!("B0 summand {}", i + 1), x, b);
    }
    o.inside("B0", &report.b0_at_t0, open("0.00073969896", "0.00073970019"));
    let ev = Evaluator::default();
    let b0 = |x| ev.eval(FunctionId::B0, &point(x)).expect("B0").value;
    o.inside("B0(t-)", &b0(t_minus()), open("0.00073969957", "0.00073969958"));
    o.inside("B0(t+)", &b0(t_plus()), open("0.00073969956", "0.00073969957"));
    o
}

fn criterion_6(report: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    let published = [
        open("0.01786492701", "0.01786492706"),
        open("0.02019321732", "0.02019321738"),
        open("0.00059228380", "0.00059228381"),
        open("0.000244575293", "0.000244575295"),
    ];
    for (i, (x, b)) in report.b2_summands.iter().zip(published).enumerate() {
        o.inside(&format!("B2 summand {}", i + 1), x, b);
    }
    o.inside("B2", &report.b2_at_t0, open("-0.001491431277", "-0.001491431155"));
    let ev = Evaluator::default();
    let b2 = |x| ev.eval(FunctionId::B2, &point(x)).expect("B2").value;
    o.inside("B2(t-)", &b2(t_minus()), pm("-0.0014914312", 10));
    o.inside("B2(t+)", &b2(t_plus()), pm("-0.0014914312", 10));
    o
}

fn criterion_7(report: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    let published = [
        open("0.46777725975", "0.46777726082"),
        open("0.01550842571", "0.01550842575"),
        open("0.00640398702", "0.00640398706"),
    ];
    for (i, (x, b)) in report.a_summands.iter().zip(published).enumerate() {
        o.inside(&format!("A summand {}", i + 1), x, b);
    }
    let a = &report.a_at_t0;
    o.inside("A", a, open("0.48968967248", "0.48968967363"));
    let lo = exp_point(a.lo(), 12).expect("exp");
    let hi = exp_point(a.hi(), 12).expect("exp");
    let exp_a = RatInterval::new(lo.enclosure.lo().clone(), hi.enclosure.hi().clone()).unwrap();
    o.inside("exp(A)", &exp_a, open("1.63180974590", "1.63180974778"));
    let factor: Expr = (t().pow(-1) - int(1)).pow(3);
    let cube = Prover::default()
        .bound_expr(&factor, &report.t0)
        .expect("cube factor")
        .value;
    o.inside("(1/t-1)^3", &cube, open("0.21223798428", "0.21223798483"));
    o.inside("r", &report.rho, open("0.03672841251", "0.03672841266"));
    o
}

fn criterion_8(report: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    o.inside("nu", &report.nu, open("0.037439365283", "0.037439366735"));
    let sum = report.r1.add(&report.b0_at_t0).add(&report.b2_at_t0);
    o.check("nu differs from R(1) + B0 + B2", sum == report.nu);
    o
}

fn criterion_9(report: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    o.inside("exp(-nu)", &report.exp_neg_nu, open("0.96325282112", "0.96325282254"));
    let ev = Evaluator::default();
    let lo = ev.exp_point(report.nu.lo()).unwrap();
    let hi = ev.exp_point(report.nu.hi()).unwrap();
    let exp_nu = RatInterval::new(lo.enclosure.lo().clone(), hi.enclosure.hi().clone()).unwrap();
    o.check(
        "exp(nu) * exp(-nu) misses 1",
        exp_nu.mul(&report.exp_neg_nu).contains(&Rational::one()),
    );
    o
}

fn criterion_10(_: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    let (tm, tp) = (t_minus(), t_plus());
    let cases: [(&str, Expr, &Rational, &str); 7] = [
        ("3t^4-16t^3+6t^2-1 at t+", poly(&[-1, 0, 6, -16, 3]), &tp, "-2.1161809442159711262496568523624448554192"),
        ("3t^4-16t^3+6t^2-1 at t-", poly(&[-1, 0, 6, -16, 3]), &tm, "-2.1161809425425888723475949656101944348672"),
        ("32t^3 at t-", poly(&[0, 0, 0, 32]), &tm, "7.864050340179393384432870014976"),
        ("32t^3 at t+", poly(&[0, 0, 0, 32]), &tp, "7.864050347712349427668874499328"),
        ("1744t^2+463t at t-", poly(&[0, 463, 1744]), &tm, "974.25358710372530451456"),
        ("740t^4+2073t^3+92 at t+", poly(&[92, 0, 0, 2073, 740]), &tp, "715.3525597141428299499534408273089356632640"),
        ("-1+3t^2 at t-", poly(&[-1, 0, 3]), &tm, "0.17702438137980270272"),
    ];
    for (what, e, x, want) in cases {
        let v = exact_poly_at(&e, x).expect("polynomial");
        let text = render_like(&v, want);
        o.check(format!("{what}: {text:?}"), text.as_deref() == Some(want));
    }
    let v = exact_poly_at(&poly(&[0, 183, 1698]), &tm).unwrap();
    let want = "780.82181422656832973952";
    o.check("1698t^2+183t at t-", render_like(&v, want).as_deref() == Some(want));
    // Long-decimal evaluations of the Y sign-change certificate.
    let y_bound = |h1: &str, rem: &str, x: &str| {
        let (partial, _) = exp_taylor_bracket(&dec(x), 6);
        Rational::from_integer(-1) + dec(h1) * (dec(rem) + partial)
    };
    let lower = y_bound("2.0941746326", "0.000000000021701388889", "-0.0460123253");
    let want = dec("0.99999999955444082633107383245182705870208185832244853853496068")
        + Rational::new(1, 3) * Rational::pow10(-62);
    o.check("Y(t-) certificate value", lower == want);
    let upper = y_bound("2.0941746334", "0.000000000010850694444", "-0.0460123254");
    o.check(
        "Y(t+) certificate value",
        render_like(&upper, "1.0000000000957417297668951405800480697033915364640304336242832")
            .as_deref()
            == Some("1.0000000000957417297668951405800480697033915364640304336242832"),
    );
    o
}

/// Exact decimal rendering of `v` with as many fraction digits as `like`,
/// or `None` if `v` does not terminate within that many.
fn render_like(v: &Rational, like: &str) -> Option<String> {
    let digits = like.split_once('.').map_or(0, |(_, f)| f.len());
    if &planarconst_exact::round_down(v, digits as u32) != v {
        return None;
    }
    let mut text = v.to_decimal_string()?;
    let have = text.split_once('.').map_or(0, |(_, f)| f.len());
    if have == 0 && digits > 0 {
        text.push('.');
    }
    text.extend(std::iter::repeat('0').take(digits - have));
    Some(text)
}

fn random_interval() -> impl Strategy<Value = RatInterval> {
    (-1000i64..1000, 0i64..500, 1i64..60).prop_map(|(a, w, d)| {
        RatInterval::new(Rational::new(a, d), Rational::new(a + w, d)).unwrap()
    })
}

fn shrink_inside(x: &RatInterval, f: (u8, u8)) -> RatInterval {
    let w = x.width();
    let lo = x.lo() + &(&w * &Rational::new(f.0.min(f.1) as i64, 255));
    let hi = x.lo() + &(&w * &Rational::new(f.0.max(f.1) as i64, 255));
    RatInterval::new(lo, hi).unwrap()
}

fn inclusion_monotonicity(o: &mut Outcome) {
    let mut runner = TestRunner::new(RunnerConfig::with_cases(1000));
    let ops = [IntervalOp::Add, IntervalOp::Sub, IntervalOp::Mul, IntervalOp::Div];
    let strategy = (
        random_interval(),
        random_interval(),
        any::<(u8, u8)>(),
        any::<(u8, u8)>(),
        0usize..5,
        -4i32..5,
    );
    let result = runner.run(&strategy, |(x, y, fx, fy, op, n)| {
        let (xs, ys) = (shrink_inside(&x, fx), shrink_inside(&y, fy));
        if op == 4 {
            if let (Ok(big), Ok(small)) = (x.pow_int(n), xs.pow_int(n)) {
                prop_assert!(small.is_subset_of(&big));
            }
            return Ok(());
        }
        if let Ok(big) = interval_arith(ops[op], &x, Some(&y)) {
            let small = interval_arith(ops[op], &xs, Some(&ys)).expect("sub-intervals stay defined");
            prop_assert!(small.is_subset_of(&big));
        }
        Ok(())
    });
    o.check(format!("inclusion monotonicity: {result:?}"), result.is_ok());
}

fn extension_soundness(o: &mut Outcome) {
    let coarse = Evaluator::default();
    let fine = Evaluator {
        width_budget: Rational::pow10(-20),
        exp_degree_positive: 20,
        exp_degree_negative: 20,
    };
    for f in FunctionId::all() {
        let expr = f.expr();
        let rational = expr.to_rational_function().is_some();
        let mut runner = TestRunner::new(RunnerConfig::with_cases(500));
        let strategy = (50i64..950, 0i64..50, any::<u8>());
        let result = runner.run(&strategy, |(a, w, s)| {
            let iv = RatInterval::new(Rational::new(a, 1000), Rational::new(a + w, 1000)).unwrap();
            let x = iv.lo() + &(&iv.width() * &Rational::new(s as i64, 255));
            let enclosure = coarse.eval_expr(&expr, &iv).expect("interval evaluation").value;
            let reference = fine.eval_expr(&expr, &point(x.clone())).expect("point").value;
            if rational {
                prop_assert!(reference.is_point());
                prop_assert!(enclosure.contains(reference.lo()), "{} misses {}", enclosure, x);
            } else {
                prop_assert!(enclosure.intersects(&reference), "{} misses {}", enclosure, x);
            }
            Ok(())
        });
        o.check(format!("{f}: {result:?}"), result.is_ok());
    }
}

fn taylor_nesting(o: &mut Outcome) {
    let mut runner = TestRunner::new(RunnerConfig::with_cases(300));
    let strategy = (-999i64..1000, 1u32..30);
    let result = runner.run(&strategy, |(n, k)| {
        let x = Rational::new(n, 1000);
        let coarse = exp_point(&x, k).unwrap().enclosure;
        let finer = exp_point(&x, k + 1).unwrap().enclosure;
        prop_assert!(finer.is_subset_of(&coarse), "x={} k={}", x, k);
        Ok(())
    });
    o.check(format!("Taylor nesting: {result:?}"), result.is_ok());
}

/// Byte offsets of digits inside numeric JSON values: bare numbers and
/// strings that spell a rational.
fn numeric_digit_offsets(bytes: &[u8]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'"' => {
                let end = i + 1 + bytes[i + 1..].iter().position(|&b| b == b'"').unwrap();
                let body = &bytes[i + 1..end];
                let is_key = bytes.get(end + 1) == Some(&b':');
                let rational = !body.is_empty()
                    && body.iter().all(|b| b.is_ascii_digit() || *b == b'/' || *b == b'-');
                if rational && !is_key {
                    out.extend((i + 1..end).filter(|&j| bytes[j].is_ascii_digit()));
                }
                i = end + 1;
            }
            b if b.is_ascii_digit() => {
                out.push(i);
                i += 1;
            }
            _ => i += 1,
        }
    }
    out
}

fn tamper_rejection(o: &mut Outcome, report: &ConstantReport) {
    let bytes = report.certificate.to_bytes();
    o.check("pristine certificate rejected", verify_bytes(&bytes).is_ok());
    let offsets = numeric_digit_offsets(&bytes);
    let mut runner = TestRunner::new(RunnerConfig::with_cases(100));
    let strategy = (0..offsets.len(), 1u8..10);
    let result = runner.run(&strategy, |(k, bump)| {
        let mut mutated = bytes.clone();
        let at = offsets[k];
        mutated[at] = b'0' + (mutated[at] - b'0' + bump) % 10;
        prop_assert!(verify_bytes(&mutated).is_err(), "mutation at byte {} accepted", at);
        Ok(())
    });
    o.check(format!("tamper rejection: {result:?}"), result.is_ok());
}

fn criterion_11(report: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    inclusion_monotonicity(&mut o);
    extension_soundness(&mut o);
    taylor_nesting(&mut o);
    tamper_rejection(&mut o, report);
    o
}

fn criterion_12(_: &ConstantReport) -> Outcome {
    let mut o = Outcome::default();
    let a = compute_all(&Config::default()).expect("first run").certificate.to_bytes();
    let b = compute_all(&Config::default()).expect("second run").certificate.to_bytes();
    o.check("certificate bytes differ between runs", a == b);
    o
}

fn main() -> ExitCode {
    let report = compute_all(&Config::default()).expect("default pipeline");
    let criteria: [(u32, &str, fn(&ConstantReport) -> Outcome); 12] = [
        (1, "t0 bracket", criterion_1),
        (2, "Y certificate values", criterion_2),
        (3, "h1/h2 pointwise", criterion_3),
        (4, "xi and R(1)", criterion_4),
        (5, "B0 summands, aggregate, pointwise", criterion_5),
        (6, "B2 summands, aggregate, pointwise", criterion_6),
        (7, "A, exp(A), r", criterion_7),
        (8, "nu", criterion_8),
        (9, "exp(-nu)", criterion_9),
        (10, "exact 40-digit regressions", criterion_10),
        (11, "property suites", criterion_11),
        (12, "determinism", criterion_12),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run(&report);
        let passed = outcome.failures.is_empty();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "{} criterion {id:>2}: {name} ({secs:.2}s)",
            if passed { "PASS" } else { "FAIL" }
        );
        for f in &outcome.failures {
            println!("     - {f}");
        }
        let known = KNOWN_UNATTAINABLE.contains(&id);
        if passed == known {
            unexpected += 1;
            if known {
                println!("     - listed as unattainable but passed");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
