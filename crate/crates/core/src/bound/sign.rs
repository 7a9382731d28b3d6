use planarconst_cert::evidence::{PolySignEvidence, SignPiece};
use planarconst_exact::{Poly, RatInterval, Sign};

use crate::error::{Error, Result};

/// Default bisection depth for sign certificates.
pub const DEFAULT_MAX_DEPTH: u32 = 60;

/// Certifies that `p` has constant strict sign on `interval`.
///
/// Pieces whose interval-Horner range still contains zero are bisected, down
/// to `max_depth` levels. A zero or sign change found at an endpoint or a
/// midpoint ends the search at once.
pub fn poly_sign(p: &Poly, interval: &RatInterval, max_depth: u32) -> Result<PolySignEvidence> {
    let fail = |detail: String| Error::Indeterminate {
        polynomial: p.to_string(),
        interval: interval.to_string(),
        detail,
    };
    let sign = match (Sign::of(&p.eval(interval.lo())), Sign::of(&p.eval(interval.hi()))) {
        (Some(a), Some(b)) if a == b => a,
        (None, _) | (_, None) => return Err(fail(": vanishes at an endpoint".into())),
        _ => return Err(fail(": changes sign".into())),
    };
    let mut pieces = Vec::new();
    refine(p, interval.clone(), sign, max_depth, &mut pieces).map_err(fail)?;
    Ok(PolySignEvidence {
        polynomial: p.clone(),
        interval: interval.clone(),
        sign,
        pieces,
    })
}

fn refine(
    p: &Poly,
    iv: RatInterval,
    sign: Sign,
    depth_left: u32,
    out: &mut Vec<SignPiece>,
) -> std::result::Result<(), String> {
    let range = p.eval_interval(&iv);
    if range.sign() == Some(sign) {
        out.push(SignPiece {
            interval: iv,
            range,
        });
        return Ok(());
    }
    if depth_left == 0 {
        return Err(format!(" within the bisection depth (stuck on {iv})"));
    }
    let mid = iv.midpoint();
    if Sign::of(&p.eval(&mid)) != Some(sign) {
        return Err(format!(": sign changes or vanishes at {mid}"));
    }
    let (lo, hi) = iv.into_bounds();
    refine(p, RatInterval::new(lo, mid.clone()).expect("ordered"), sign, depth_left - 1, out)?;
    refine(p, RatInterval::new(mid, hi).expect("ordered"), sign, depth_left - 1, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use planarconst_cert::check::check_poly_sign;
    use planarconst_exact::Rational;

    fn iv(a: i64, b: i64, d: i64) -> RatInterval {
        RatInterval::new(Rational::new(a, d), Rational::new(b, d)).unwrap()
    }

    #[test]
    fn bisects_until_ranges_exclude_zero() {
        // (t - 1/2)^2 + 1/1000 is positive but Horner on [0,1] reaches below zero.
        let p = Poly::from_ints(&[251, -1000, 1000]);
        let interval = iv(0, 1, 1);
        let ev = poly_sign(&p, &interval, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(ev.sign, Sign::Positive);
        assert!(ev.pieces.len() > 1);
        check_poly_sign(&ev, &p, &interval, "p").unwrap();
    }

    #[test]
    fn roots_are_reported() {
        let p = Poly::from_ints(&[-1, 2]);
        assert!(matches!(
            poly_sign(&p, &iv(0, 1, 1), 60),
            Err(Error::Indeterminate { .. })
        ));
        assert!(poly_sign(&p, &iv(1, 2, 2), 60).is_err());
        let q = Poly::from_ints(&[1, -4, 4]);
        assert!(poly_sign(&q, &iv(0, 1, 1), 60).is_err());
    }

    #[test]
    fn point_intervals_take_one_piece() {
        let p = Poly::from_ints(&[-3, 1]);
        let ev = poly_sign(&p, &iv(1, 1, 1), 0).unwrap();
        assert_eq!(ev.sign, Sign::Negative);
        assert_eq!(ev.pieces.len(), 1);
    }
}
