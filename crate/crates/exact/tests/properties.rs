use planarconst_exact::{
    interval_arith, outward_round, parse_decimal, IntervalOp, Poly, RatInterval, Rational,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| Rational::new(n, d))
}

fn interval() -> impl Strategy<Value = RatInterval> {
    (rational(), rational()).prop_map(|(a, b)| RatInterval::spanning(a, b))
}

/// A sub-interval of `x` picked by two fractions of its width.
fn inner(x: &RatInterval, a: u8, b: u8) -> RatInterval {
    let at = |k: u8| x.lo() + &(&x.width() * &Rational::new(k as i64, 255));
    RatInterval::spanning(at(a), at(b))
}

/// A point of `x` picked by a fraction of its width.
fn pick(x: &RatInterval, k: u8) -> Rational {
    x.lo() + &(&x.width() * &Rational::new(k as i64, 255))
}

fn op() -> impl Strategy<Value = IntervalOp> {
    prop_oneof![
        Just(IntervalOp::Add),
        Just(IntervalOp::Sub),
        Just(IntervalOp::Mul),
        Just(IntervalOp::Div),
        Just(IntervalOp::Neg),
        (-5i32..6).prop_map(IntervalOp::PowInt),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn inclusion_monotone(
        op in op(), x in interval(), y in interval(),
        f in any::<(u8, u8, u8, u8)>(),
    ) {
        let (xs, ys) = (inner(&x, f.0, f.1), inner(&y, f.2, f.3));
        if let Ok(big) = interval_arith(op, &x, Some(&y)) {
            let small = interval_arith(op, &xs, Some(&ys)).unwrap();
            prop_assert!(small.is_subset_of(&big), "{:?}: {} not in {}", op, small, big);
        }
    }

    #[test]
    fn point_values_stay_inside(
        op in op(), x in interval(), y in interval(), a in any::<u8>(), b in any::<u8>(),
    ) {
        let (p, q) = (pick(&x, a), pick(&y, b));
        let exact = interval_arith(op, &RatInterval::point(p), Some(&RatInterval::point(q)));
        if let (Ok(big), Ok(v)) = (interval_arith(op, &x, Some(&y)), exact) {
            prop_assert!(v.is_point());
            prop_assert!(big.contains(v.lo()));
        }
    }

    #[test]
    fn field_identities_hold_exactly(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn canonical_text_round_trips(a in rational()) {
        let text = a.to_string();
        prop_assert_eq!(Rational::parse_canonical(&text).unwrap(), a.clone());
        prop_assert_eq!(text.parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn decimal_text_round_trips(n in -10_000_000i64..10_000_000, scale in 0i32..12) {
        let a = Rational::new(n, 1) * Rational::pow10(-scale);
        let text = a.to_decimal_string().unwrap();
        prop_assert_eq!(parse_decimal(&text).unwrap(), a);
    }

    #[test]
    fn outward_rounding_encloses(x in interval(), digits in 1u32..15) {
        let d = outward_round(&x, digits);
        prop_assert!(parse_decimal(&d.lo).unwrap() <= *x.lo());
        prop_assert!(parse_decimal(&d.hi).unwrap() >= *x.hi());
    }

    #[test]
    fn horner_range_contains_values(
        coeffs in prop::collection::vec(-50i64..50, 1..7), x in interval(), k in any::<u8>(),
    ) {
        let p = Poly::from_ints(&coeffs);
        prop_assert!(p.eval_interval(&x).contains(&p.eval(&pick(&x, k))));
    }
}
