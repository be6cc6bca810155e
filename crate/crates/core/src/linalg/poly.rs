//! Dense univariate polynomials with coefficients in a ring context.
//!
//! Coefficients are stored constant term first and kept trimmed, so the zero
//! polynomial has no coefficients.

use super::matrix::Matrix;
use crate::scalars::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Polynomial<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

impl<E: Clone + PartialEq> Polynomial<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, c: E) -> Self {
        Polynomial::new(ring, vec![c])
    }

    /// `x - root`.
    pub fn linear<R: Ring<Elem = E>>(ring: &R, root: &E) -> Self {
        Polynomial::new(ring, vec![ring.neg(root), ring.one()])
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = ring.zero();
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                ring.add(a, b)
            })
            .collect();
        Polynomial::new(ring, coeffs)
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = ring.zero();
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                ring.sub(a, b)
            })
            .collect();
        Polynomial::new(ring, coeffs)
    }

    /// Product with the variable treated as central.
    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = ring.add(&coeffs[i + j], &ring.mul(a, b));
            }
        }
        Polynomial::new(ring, coeffs)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, s: &E) -> Self {
        Polynomial::new(ring, self.coeffs.iter().map(|c| ring.mul(s, c)).collect())
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, e: usize) -> Self {
        (0..e).fold(Polynomial::constant(ring, ring.one()), |acc, _| acc.mul(ring, self))
    }

    /// Horner evaluation at a central point.
    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, x: &E) -> E {
        self.coeffs.iter().rev().fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
    }

    pub fn derivative<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| ring.mul(&ring.from_i64(i as i64), c)).collect();
        Polynomial::new(ring, coeffs)
    }
}

impl<E: Clone + PartialEq> Polynomial<E> {
    /// Euclidean division over a field; panics on a zero divisor.
    pub fn div_rem<F: Field<Elem = E>>(&self, field: &F, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(divisor.leading().unwrap()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(top) = self.degree().filter(|&t| t >= d) else {
            return (Polynomial::zero(), self.clone());
        };
        let mut quot = vec![field.zero(); top - d + 1];
        for shift in (0..=top - d).rev() {
            let c = field.mul(&rem[shift + d], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = field.sub(&rem[shift + i], &field.mul(&c, dc));
            }
            quot[shift] = c;
        }
        (Polynomial::new(field, quot), Polynomial::new(field, rem))
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = field.inv(l).expect("nonzero leading coefficient");
                self.scale(field, &inv)
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(field, &b);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    /// Multiplicity of `root`, dividing it out of `self`.
    pub fn strip_root<F: Field<Elem = E>>(&mut self, field: &F, root: &E) -> usize {
        let lin = Polynomial::linear(field, root);
        let mut mult = 0;
        while !self.is_zero() && field.is_zero(&self.eval(field, root)) {
            *self = self.div_rem(field, &lin).0;
            mult += 1;
        }
        mult
    }
}

/// `det(xI - A)` by Berkowitz's division-free recurrence; monic of degree `n`.
pub fn char_poly<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Polynomial<F::Elem> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    // coefficients highest degree first while accumulating
    let mut p = vec![field.one()];
    for r in 0..n {
        // leading block M = A[..r][..r], row R = A[r][..r], column C = A[..r][r]
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(field.one());
        toeplitz.push(field.neg(a.get(r, r)));
        let mut v: Vec<F::Elem> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for _ in 0..r {
            let rv = (0..r).fold(field.zero(), |acc, j| field.add(&acc, &field.mul(a.get(r, j), &v[j])));
            toeplitz.push(field.neg(&rv));
            v = (0..r)
                .map(|i| (0..r).fold(field.zero(), |acc, j| field.add(&acc, &field.mul(a.get(i, j), &v[j]))))
                .collect();
        }
        let next: Vec<F::Elem> = (0..p.len() + 1)
            .map(|i| {
                (0..p.len())
                    .filter(|&j| j <= i && i - j < toeplitz.len())
                    .fold(field.zero(), |acc, j| field.add(&acc, &field.mul(&toeplitz[i - j], &p[j])))
            })
            .collect();
        p = next;
    }
    p.reverse();
    Polynomial::new(field, p)
}
