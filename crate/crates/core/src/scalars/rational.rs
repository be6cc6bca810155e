use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, Ring, ScalarError, ScalarRing};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalField;

/// Parses `"p/q"` or `"p"` with an optional leading sign.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ScalarError::parse(s, "empty rational"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let numer = parse_int(num).ok_or_else(|| ScalarError::parse(s, "bad numerator"))?;
    let denom = match den {
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(ScalarError::parse(s, "signed denominator"));
            }
            parse_int(d).ok_or_else(|| ScalarError::parse(s, "bad denominator"))?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ScalarError::parse(s, "zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.trim_start_matches('+').parse().ok()
}

pub(crate) fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Ring for RationalField {
    type Elem = Rational;
    type Center = RationalField;

    fn descriptor(&self) -> ScalarRing {
        ScalarRing::Rational
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Result<Rational, ScalarError> {
        if a.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &Rational) -> bool {
        a.is_one()
    }

    fn is_central(&self, _a: &Rational) -> bool {
        true
    }

    fn center(&self) -> RationalField {
        RationalField
    }

    fn center_dim(&self) -> usize {
        1
    }

    fn center_coords(&self, a: &Rational, out: &mut Vec<Rational>) {
        out.push(a.clone());
    }

    fn from_center_coords(&self, coords: &[Rational]) -> Rational {
        coords[0].clone()
    }

    fn embed_center(&self, c: &Rational) -> Rational {
        c.clone()
    }

    fn parse(&self, s: &str) -> Result<Rational, ScalarError> {
        parse_rational(s)
    }

    fn format(&self, a: &Rational) -> String {
        format_rational(a)
    }
}

impl Field for RationalField {}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn stored_reduced() {
        let r = parse_rational("4/6").unwrap();
        assert_eq!(r.numer(), &BigInt::from(2));
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(parse_rational("-0/5").unwrap(), Rational::zero());
        assert_eq!(parse_rational("3/-4"), Err(ScalarError::parse("3/-4", "signed denominator")));
    }

    #[test]
    fn inverse_of_two_thirds() {
        assert_eq!(RationalField.inv(&q(2, 3)).unwrap(), q(3, 2));
        assert_eq!(RationalField.inv(&q(0, 1)), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn syntax_round_trip() {
        for s in ["0", "7", "-3/4", "12345678901234567890/7"] {
            let v = parse_rational(s).unwrap();
            assert_eq!(format_rational(&v), s);
        }
        for bad in ["", "1/0", "x", "1.5", "--1", "1/", "/2"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
