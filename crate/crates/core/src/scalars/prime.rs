use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{Field, Ring, ScalarError, ScalarRing};

/// A residue in `[0, p)`. The modulus lives in the [`PrimeField`] context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElem(pub u64);

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// GF(p) for a prime `p` fixed for the whole computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> PrimeFieldElem {
        PrimeFieldElem(v % self.p)
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow_mod(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_mod(acc, base);
            }
            base = self.mul_mod(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = PrimeFieldElem;
    type Center = PrimeField;

    fn descriptor(&self) -> ScalarRing {
        ScalarRing::PrimeField(self.p)
    }

    fn zero(&self) -> PrimeFieldElem {
        PrimeFieldElem(0)
    }

    fn one(&self) -> PrimeFieldElem {
        PrimeFieldElem(1)
    }

    fn from_i64(&self, v: i64) -> PrimeFieldElem {
        PrimeFieldElem((v as i128).rem_euclid(self.p as i128) as u64)
    }

    fn add(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem(((a.0 as u128 + b.0 as u128) % self.p as u128) as u64)
    }

    fn sub(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        if a.0 >= b.0 {
            PrimeFieldElem(a.0 - b.0)
        } else {
            PrimeFieldElem(self.p - (b.0 - a.0))
        }
    }

    fn neg(&self, a: &PrimeFieldElem) -> PrimeFieldElem {
        if a.0 == 0 {
            *a
        } else {
            PrimeFieldElem(self.p - a.0)
        }
    }

    fn mul(&self, a: &PrimeFieldElem, b: &PrimeFieldElem) -> PrimeFieldElem {
        PrimeFieldElem(self.mul_mod(a.0, b.0))
    }

    fn inv(&self, a: &PrimeFieldElem) -> Result<PrimeFieldElem, ScalarError> {
        if a.0 == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(PrimeFieldElem(self.pow_mod(a.0, self.p - 2)))
    }

    fn is_zero(&self, a: &PrimeFieldElem) -> bool {
        a.0 == 0
    }

    fn is_central(&self, _a: &PrimeFieldElem) -> bool {
        true
    }

    fn center(&self) -> PrimeField {
        *self
    }

    fn center_dim(&self) -> usize {
        1
    }

    fn center_coords(&self, a: &PrimeFieldElem, out: &mut Vec<PrimeFieldElem>) {
        out.push(*a);
    }

    fn from_center_coords(&self, coords: &[PrimeFieldElem]) -> PrimeFieldElem {
        coords[0]
    }

    fn embed_center(&self, c: &PrimeFieldElem) -> PrimeFieldElem {
        *c
    }

    fn parse(&self, s: &str) -> Result<PrimeFieldElem, ScalarError> {
        let t = s.trim();
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ScalarError::parse(s, "expected a decimal residue"));
        }
        let v: BigInt =
            t.trim_start_matches('+').parse().map_err(|_| ScalarError::parse(s, "expected a decimal residue"))?;
        let p = BigInt::from(self.p);
        let mut r = v % &p;
        if r.is_negative() {
            r += &p;
        }
        Ok(PrimeFieldElem(r.to_u64().expect("residue below modulus")))
    }

    fn format(&self, a: &PrimeFieldElem) -> String {
        a.0.to_string()
    }
}

impl Field for PrimeField {
    fn elements(&self) -> Option<Box<dyn Iterator<Item = PrimeFieldElem> + '_>> {
        Some(Box::new((0..self.p).map(PrimeFieldElem)))
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
