//! Roots of polynomials lying in the base field.
//!
//! Over GF(p) every residue is tried. Over the rationals the squarefree part
//! is cleared to an integer polynomial with leading coefficient `c`; every
//! rational root then has the form `m / c`. Sturm sequences isolate the real
//! roots into intervals narrower than `1 / c`, and the at most two grid
//! points in each interval are tested exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use crate::scalars::{Field, PrimeField, PrimeFieldElem, Rational, RationalField};

/// Fields whose polynomials can be searched for roots exactly.
pub trait RootSearch: Field {
    /// Distinct roots of `p` in the field, in a fixed deterministic order.
    /// `p` must be nonzero.
    fn distinct_roots(&self, p: &Polynomial<Self::Elem>) -> Vec<Self::Elem>;
}

/// Roots with multiplicity, plus whether they account for the whole degree.
pub fn roots_with_multiplicity<F: RootSearch>(field: &F, p: &Polynomial<F::Elem>) -> (Vec<(F::Elem, usize)>, bool) {
    let degree = p.degree().expect("roots of the zero polynomial");
    let mut rest = p.clone();
    let mut out = Vec::new();
    for r in field.distinct_roots(p) {
        let m = rest.strip_root(field, &r);
        debug_assert!(m > 0);
        out.push((r, m));
    }
    let total: usize = out.iter().map(|(_, m)| m).sum();
    (out, total == degree)
}

impl RootSearch for PrimeField {
    fn distinct_roots(&self, p: &Polynomial<PrimeFieldElem>) -> Vec<PrimeFieldElem> {
        assert!(!p.is_zero());
        (0..self.modulus()).map(PrimeFieldElem).filter(|x| p.eval(self, x).0 == 0).collect()
    }
}

impl RootSearch for RationalField {
    fn distinct_roots(&self, p: &Polynomial<Rational>) -> Vec<Rational> {
        rational_roots(p)
    }
}

/// Distinct rational roots in increasing order.
pub fn rational_roots(p: &Polynomial<Rational>) -> Vec<Rational> {
    let q = RationalField;
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let mut roots = Vec::new();
    let mut f = p.monic(&q);
    if f.coeff(0).is_some_and(Zero::is_zero) {
        roots.push(Rational::zero());
        let shifted = f.coeffs().iter().skip_while(|c| c.is_zero()).cloned().collect();
        f = Polynomial::new(&q, shifted);
    }
    if f.degree() == Some(0) {
        return roots;
    }
    let g = f.gcd(&q, &f.derivative(&q));
    let squarefree = f.div_rem(&q, &g).0;
    let ints = integer_primitive(&squarefree);
    let lead = ints.last().unwrap().abs();
    let poly: Polynomial<Rational> =
        Polynomial::new(&q, ints.iter().map(|c| Rational::from_integer(c.clone())).collect());

    let sturm = sturm_chain(&poly);
    let bound = cauchy_bound(&ints);
    let grid = Rational::from_integer(lead.clone()).recip();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&sturm, &lo) - sign_changes(&sturm, &hi);
        if count == 0 {
            continue;
        }
        if &hi - &lo < grid {
            // candidates m/lead with lo < m/lead <= hi
            let lo_m = (&lo * Rational::from_integer(lead.clone())).floor().to_integer();
            let hi_m = (&hi * Rational::from_integer(lead.clone())).ceil().to_integer();
            let mut m = lo_m;
            while m <= hi_m {
                let cand = Rational::new(m.clone(), lead.clone());
                if cand > lo && cand <= hi && poly.eval(&q, &cand).is_zero() {
                    roots.push(cand);
                }
                m += 1;
            }
            continue;
        }
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Integer multiple of `p` with coprime coefficients and positive leading term.
fn integer_primitive(p: &Polynomial<Rational>) -> Vec<BigInt> {
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> =
        p.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        for c in ints.iter_mut() {
            *c /= &content;
        }
    }
    if ints.last().is_some_and(Signed::is_negative) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

/// Every real root has absolute value strictly below this.
fn cauchy_bound(ints: &[BigInt]) -> Rational {
    let lead = Rational::from_integer(ints.last().unwrap().abs());
    let max = ints[..ints.len() - 1]
        .iter()
        .map(|c| Rational::from_integer(c.abs()) / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    max + Rational::one()
}

fn sturm_chain(p: &Polynomial<Rational>) -> Vec<Polynomial<Rational>> {
    let q = RationalField;
    let mut chain = vec![p.clone(), p.derivative(&q)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&q, &chain[n - 1]);
        if r.is_zero() {
            break;
        }
        let neg = Polynomial::new(&q, r.coeffs().iter().map(|c| -c).collect());
        chain.push(neg);
    }
    chain
}

fn sign_changes(chain: &[Polynomial<Rational>], x: &Rational) -> i64 {
    let q = RationalField;
    let mut last = 0i8;
    let mut changes = 0;
    for p in chain {
        let v = p.eval(&q, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Ring;

    fn qp(c: &[(i64, i64)]) -> Polynomial<Rational> {
        Polynomial::new(&RationalField, c.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect())
    }

    fn from_roots(roots: &[(i64, i64)]) -> Polynomial<Rational> {
        let q = RationalField;
        roots.iter().fold(qp(&[(1, 1)]), |acc, &(n, d)| {
            acc.mul(&q, &Polynomial::linear(&q, &Rational::new(n.into(), d.into())))
        })
    }

    #[test]
    fn finds_rational_roots_among_irrational_ones() {
        // (x - 1/3)^2 (x + 7/2)(x^2 - 2)
        let p = from_roots(&[(1, 3), (1, 3), (-7, 2)]).mul(&RationalField, &qp(&[(-2, 1), (0, 1), (1, 1)]));
        let roots = rational_roots(&p);
        assert_eq!(roots, vec![Rational::new((-7).into(), 2.into()), Rational::new(1.into(), 3.into())]);
        let (with_mult, split) = roots_with_multiplicity(&RationalField, &p);
        assert_eq!(with_mult[1].1, 2);
        assert!(!split);
    }

    #[test]
    fn close_roots_are_separated() {
        let p = from_roots(&[(1000, 1001), (1001, 1002), (0, 1), (-5, 1)]);
        let roots = rational_roots(&p);
        assert_eq!(roots.len(), 4);
        let (_, split) = roots_with_multiplicity(&RationalField, &p);
        assert!(split);
    }

    #[test]
    fn no_rational_roots() {
        assert!(rational_roots(&qp(&[(1, 1), (0, 1), (1, 1)])).is_empty());
        assert!(rational_roots(&qp(&[(5, 1)])).is_empty());
    }

    #[test]
    fn prime_field_exhaustive() {
        let f = PrimeField::new(7).unwrap();
        // x^2 - 2 = (x - 3)(x - 4) mod 7
        let p = Polynomial::new(&f, vec![f.from_i64(-2), f.zero(), f.one()]);
        assert_eq!(f.distinct_roots(&p), vec![PrimeFieldElem(3), PrimeFieldElem(4)]);
    }
}
