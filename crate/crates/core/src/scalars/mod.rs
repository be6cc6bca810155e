//! Exact scalar arithmetic over the three supported division rings.
//!
//! Every ring is a small context object implementing [`Ring`]; elements are
//! plain values and all arithmetic goes through the context. This keeps the
//! GF(p) modulus in one place per computation instead of on every element.
//!
//! The center of each ring is exposed as a [`Field`] together with a
//! coordinate map, so spans over the center (algebras, commutants, ideals)
//! can be computed by ordinary Gaussian elimination over that field.

mod prime;
mod quaternion;
mod rational;

use std::fmt;
use std::fmt::Debug;
use std::hash::Hash;
use std::str::FromStr;

pub use prime::{is_prime, PrimeField, PrimeFieldElem};
pub use quaternion::{Quaternion, QuaternionRing};
pub use rational::{parse_rational, Rational, RationalField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar {token:?}: {reason}")]
    Parse { token: String, reason: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

impl ScalarError {
    pub(crate) fn parse(token: &str, reason: impl Into<String>) -> Self {
        ScalarError::Parse { token: token.to_owned(), reason: reason.into() }
    }
}

/// Runtime tag of a scalar ring, as written in family files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarRing {
    Rational,
    PrimeField(u64),
    Quaternion,
}

impl ScalarRing {
    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarRing::PrimeField(p) => *p,
            _ => 0,
        }
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Rational => f.write_str("rational"),
            ScalarRing::PrimeField(p) => write!(f, "gfp:{p}"),
            ScalarRing::Quaternion => f.write_str("quaternion"),
        }
    }
}

impl FromStr for ScalarRing {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "rational" => Ok(ScalarRing::Rational),
            "quaternion" => Ok(ScalarRing::Quaternion),
            other => {
                let Some(digits) = other.strip_prefix("gfp:") else {
                    return Err(ScalarError::parse(other, "expected \"rational\", \"gfp:<p>\" or \"quaternion\""));
                };
                let p: u64 = digits.parse().map_err(|_| ScalarError::parse(other, "modulus is not an integer"))?;
                if !is_prime(p) {
                    return Err(ScalarError::NotPrime(p));
                }
                Ok(ScalarRing::PrimeField(p))
            }
        }
    }
}

/// An exact division ring, given as a context object.
///
/// Matrices over a ring act on the left of the right vector space of columns,
/// so scalars multiply vectors on the right. For the commutative rings this
/// distinction is invisible.
pub trait Ring: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static;
    /// The center, as a field in its own right.
    type Center: Field;

    fn descriptor(&self) -> ScalarRing;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ScalarError>;

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// True iff `a` commutes with every element of the ring.
    fn is_central(&self, a: &Self::Elem) -> bool;

    fn characteristic(&self) -> u64 {
        self.descriptor().characteristic()
    }

    fn center(&self) -> Self::Center;

    /// Dimension of the ring as a vector space over its center.
    fn center_dim(&self) -> usize;

    /// Appends the `center_dim()` center coordinates of `a` to `out`.
    fn center_coords(&self, a: &Self::Elem, out: &mut Vec<<Self::Center as Ring>::Elem>);

    #[allow(clippy::wrong_self_convention)]
    fn from_center_coords(&self, coords: &[<Self::Center as Ring>::Elem]) -> Self::Elem;

    fn embed_center(&self, c: &<Self::Center as Ring>::Elem) -> Self::Elem;

    /// Parses the textual scalar syntax used by family files.
    fn parse(&self, s: &str) -> Result<Self::Elem, ScalarError>;

    fn format(&self, a: &Self::Elem) -> String;

    fn div_right(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ScalarError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// A commutative [`Ring`]; it is its own center.
pub trait Field: Ring<Center = Self> {
    /// All elements, for finite fields.
    fn elements(&self) -> Option<Box<dyn Iterator<Item = Self::Elem> + '_>> {
        None
    }
}
