use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, parse_rational};
use super::{Rational, RationalField, Ring, ScalarError, ScalarRing};

/// `a + bi + cj + dk` with rational components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Quaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_rational(a: Rational) -> Self {
        Quaternion { a, ..Default::default() }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |v: i64| Rational::from_integer(v.into());
        Quaternion::new(r(a), r(b), r(c), r(d))
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Quaternion::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.conj().scale(&self.norm().recip()))
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;

    fn add(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;

    fn sub(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;

    // Hamilton product: i^2 = j^2 = k^2 = ijk = -1
    fn mul(self, o: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_quaternion(self))
    }
}

/// The rational quaternions; the center is the rationals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QuaternionRing;

impl Ring for QuaternionRing {
    type Elem = Quaternion;
    type Center = RationalField;

    fn descriptor(&self) -> ScalarRing {
        ScalarRing::Quaternion
    }

    fn zero(&self) -> Quaternion {
        Quaternion::default()
    }

    fn one(&self) -> Quaternion {
        Quaternion::from_rational(Rational::one())
    }

    fn from_i64(&self, v: i64) -> Quaternion {
        Quaternion::from_rational(Rational::from_integer(v.into()))
    }

    fn add(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a + b
    }

    fn sub(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a - b
    }

    fn neg(&self, a: &Quaternion) -> Quaternion {
        -a
    }

    fn mul(&self, a: &Quaternion, b: &Quaternion) -> Quaternion {
        a * b
    }

    fn inv(&self, a: &Quaternion) -> Result<Quaternion, ScalarError> {
        a.inverse().ok_or(ScalarError::DivisionByZero)
    }

    fn is_zero(&self, a: &Quaternion) -> bool {
        a.is_zero()
    }

    fn is_central(&self, a: &Quaternion) -> bool {
        a.is_real()
    }

    fn center(&self) -> RationalField {
        RationalField
    }

    fn center_dim(&self) -> usize {
        4
    }

    fn center_coords(&self, a: &Quaternion, out: &mut Vec<Rational>) {
        out.extend(a.components().into_iter().cloned());
    }

    fn from_center_coords(&self, coords: &[Rational]) -> Quaternion {
        Quaternion::new(coords[0].clone(), coords[1].clone(), coords[2].clone(), coords[3].clone())
    }

    fn embed_center(&self, c: &Rational) -> Quaternion {
        Quaternion::from_rational(c.clone())
    }

    fn parse(&self, s: &str) -> Result<Quaternion, ScalarError> {
        parse_quaternion(s)
    }

    fn format(&self, a: &Quaternion) -> String {
        format_quaternion(a)
    }
}

/// Parses `a+bi+cj+dk`; zero terms may be omitted and a unit may stand alone
/// (`"1/2+k"`, `"-i"`, `"3j-2/5k"`).
pub fn parse_quaternion(s: &str) -> Result<Quaternion, ScalarError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ScalarError::parse(s, "empty quaternion"));
    }
    let mut parts: [Option<Rational>; 4] = Default::default();
    let bytes = compact.as_bytes();
    let mut start = 0;
    while start < bytes.len() {
        // a term runs up to the next sign that is not the leading one
        let mut end = start + 1;
        while end < bytes.len() && bytes[end] != b'+' && bytes[end] != b'-' {
            end += 1;
        }
        let term = &compact[start..end];
        let (coeff, slot) = match term.as_bytes()[term.len() - 1] {
            b'i' => (&term[..term.len() - 1], 1),
            b'j' => (&term[..term.len() - 1], 2),
            b'k' => (&term[..term.len() - 1], 3),
            _ => (term, 0),
        };
        let value = match coeff {
            "" | "+" if slot > 0 => Rational::one(),
            "-" if slot > 0 => -Rational::one(),
            _ => parse_rational(coeff).map_err(|_| ScalarError::parse(s, format!("bad term {term:?}")))?,
        };
        if parts[slot].replace(value).is_some() {
            return Err(ScalarError::parse(s, format!("repeated component in {term:?}")));
        }
        start = end;
    }
    let [a, b, c, d] = parts.map(Option::unwrap_or_default);
    Ok(Quaternion::new(a, b, c, d))
}

pub(crate) fn format_quaternion(q: &Quaternion) -> String {
    let mut out = String::new();
    for (value, unit) in q.components().into_iter().zip(["", "i", "j", "k"]) {
        if value.is_zero() {
            continue;
        }
        let mut body = if !unit.is_empty() && value.abs_is_one() {
            if value.is_one() {
                String::new()
            } else {
                "-".to_owned()
            }
        } else {
            format_rational(value)
        };
        body.push_str(unit);
        if !out.is_empty() && !body.starts_with('-') {
            out.push('+');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

trait AbsOne {
    fn abs_is_one(&self) -> bool;
}

impl AbsOne for Rational {
    fn abs_is_one(&self) -> bool {
        self.is_one() || (-self).is_one()
    }
}
