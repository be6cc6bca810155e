//! Spectral predicates: eigenvalues in the base field, singleton spectra and
//! central spectra over the quaternions.

use num_traits::Zero;

use super::matrix::{Matrix, MatrixRing};
use super::poly::{char_poly, Polynomial};
use super::roots::{rational_roots, roots_with_multiplicity, RootSearch};
use crate::scalars::{Field, PrimeField, Quaternion, QuaternionRing, Rational, RationalField, Ring};

/// Eigenvalues found in the field, with algebraic multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenvalues<E> {
    pub values: Vec<(E, usize)>,
    /// The characteristic polynomial splits over the field.
    pub split: bool,
}

impl<E> Eigenvalues<E> {
    pub fn first(&self) -> Option<&E> {
        self.values.first().map(|(v, _)| v)
    }
}

pub fn eigenvalues_in_field<F: RootSearch>(field: &F, a: &Matrix<F::Elem>) -> Eigenvalues<F::Elem> {
    let (values, split) = roots_with_multiplicity(field, &char_poly(field, a));
    Eigenvalues { values, split }
}

/// The `λ` with spectrum exactly `{λ}`, if there is one.
///
/// When the characteristic does not divide `n` the only candidate is
/// `trace / n`; otherwise every field element is tried.
pub fn singleton_spectrum<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Option<F::Elem> {
    let n = a.rows();
    if n == 0 {
        return None;
    }
    let p = field.characteristic();
    let shifted_nilpotent = |lambda: &F::Elem| field.is_nilpotent(&field.mat_sub(a, &field.scalar_matrix(n, lambda)));
    if p == 0 || !(n as u64).is_multiple_of(p) {
        let n_inv = field.inv(&field.from_i64(n as i64)).ok()?;
        let lambda = field.mul(&field.trace(a), &n_inv);
        return shifted_nilpotent(&lambda).then_some(lambda);
    }
    let mut elements = field.elements().expect("positive characteristic fields are finite here");
    elements.find(|lambda| shifted_nilpotent(lambda))
}

/// The `4n x 4n` rational matrix of `A` acting on `H^n = Q^{4n}`, each
/// quaternion coordinate block ordered `(1, i, j, k)`.
pub fn realify(a: &Matrix<Quaternion>) -> Matrix<Rational> {
    let units = [QuaternionRing.one(), Quaternion::i(), Quaternion::j(), Quaternion::k()];
    let mut out = RationalField.zeros(4 * a.rows(), 4 * a.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let q = a.get(r, c);
            for (u, unit) in units.iter().enumerate() {
                let image = q * unit;
                for (k, coord) in image.components().into_iter().enumerate() {
                    out.set(4 * r + k, 4 * c + u, coord.clone());
                }
            }
        }
    }
    out
}

/// The central `c` with `(A - cI)^n = 0`, if any.
///
/// Expands `(A - xI)^n` entrywise as polynomials in the central variable,
/// takes the gcd of all their rational coordinate polynomials and confirms
/// each rational root by direct nilpotency.
pub fn central_spectrum_quaternion(a: &Matrix<Quaternion>) -> Option<Rational> {
    let h = QuaternionRing;
    let q = RationalField;
    let n = a.rows();
    if n == 0 {
        return None;
    }
    let shifted: Vec<Polynomial<Quaternion>> = (0..n * n)
        .map(|idx| {
            let (r, c) = (idx / n, idx % n);
            let mut coeffs = vec![a.get(r, c).clone()];
            if r == c {
                coeffs.push(h.from_i64(-1));
            }
            Polynomial::new(&h, coeffs)
        })
        .collect();
    let mut power = shifted.clone();
    for _ in 1..n {
        power = poly_matrix_mul(&h, n, &power, &shifted);
    }
    let mut g = Polynomial::<Rational>::zero();
    for entry in &power {
        for comp in 0..4 {
            let coords = entry.coeffs().iter().map(|c| c.components()[comp].clone()).collect();
            g = g.gcd(&q, &Polynomial::new(&q, coords));
        }
    }
    if g.is_zero() {
        return None;
    }
    rational_roots(&g).into_iter().find(|c| {
        let shifted = h.mat_sub(a, &h.scalar_matrix(n, &h.embed_center(c)));
        h.is_nilpotent(&shifted)
    })
}

fn poly_matrix_mul(
    h: &QuaternionRing,
    n: usize,
    a: &[Polynomial<Quaternion>],
    b: &[Polynomial<Quaternion>],
) -> Vec<Polynomial<Quaternion>> {
    (0..n * n)
        .map(|idx| {
            let (r, c) = (idx / n, idx % n);
            (0..n).fold(Polynomial::zero(), |acc, k| acc.add(h, &a[r * n + k].mul(h, &b[k * n + c])))
        })
        .collect()
}

/// The realified characteristic polynomial is `q^{2n}` for a monic quadratic
/// `q` with no real roots: `A` behaves like `sI + N` for a non-central `s`.
pub fn has_noncentral_scalar_part(a: &Matrix<Quaternion>) -> bool {
    let q = RationalField;
    let n = a.rows();
    if n == 0 {
        return false;
    }
    let f = char_poly(&q, &realify(a));
    let deg = 4 * n;
    let e = 2 * n;
    let e_q = Rational::from_integer(e.into());
    let beta = f.coeff(deg - 1).cloned().unwrap_or_else(Rational::zero) / &e_q;
    let binom = Rational::from_integer((e * (e - 1) / 2).into());
    let gamma = (f.coeff(deg - 2).cloned().unwrap_or_else(Rational::zero) - &binom * &beta * &beta) / &e_q;
    let discriminant = &beta * &beta - Rational::from_integer(4.into()) * &gamma;
    if discriminant >= Rational::zero() {
        return false;
    }
    let quad = Polynomial::new(&q, vec![gamma, beta, q.one()]);
    quad.pow(&q, e) == f
}

/// Ring-specific spectral hooks used by the engine.
pub trait Spectral: Ring {
    /// The central `c` with spectrum `{c}`: for fields the singleton
    /// spectrum, for quaternions the central spectrum.
    fn central_spectrum(&self, a: &Matrix<Self::Elem>) -> Option<Self::Elem>;

    /// Eigenvalues lying in the center.
    fn central_eigenvalues(&self, a: &Matrix<Self::Elem>) -> Eigenvalues<Self::Elem>;

    fn has_noncentral_scalar_part(&self, _a: &Matrix<Self::Elem>) -> bool {
        false
    }
}

impl Spectral for RationalField {
    fn central_spectrum(&self, a: &Matrix<Rational>) -> Option<Rational> {
        singleton_spectrum(self, a)
    }

    fn central_eigenvalues(&self, a: &Matrix<Rational>) -> Eigenvalues<Rational> {
        eigenvalues_in_field(self, a)
    }
}

impl Spectral for PrimeField {
    fn central_spectrum(&self, a: &Matrix<Self::Elem>) -> Option<Self::Elem> {
        singleton_spectrum(self, a)
    }

    fn central_eigenvalues(&self, a: &Matrix<Self::Elem>) -> Eigenvalues<Self::Elem> {
        eigenvalues_in_field(self, a)
    }
}

impl Spectral for QuaternionRing {
    fn central_spectrum(&self, a: &Matrix<Quaternion>) -> Option<Quaternion> {
        central_spectrum_quaternion(a).map(Quaternion::from_rational)
    }

    fn central_eigenvalues(&self, a: &Matrix<Quaternion>) -> Eigenvalues<Quaternion> {
        let real = eigenvalues_in_field(&RationalField, &realify(a));
        let values: Vec<(Quaternion, usize)> =
            real.values.into_iter().map(|(v, m)| (Quaternion::from_rational(v), m / 4)).collect();
        let split = values.iter().map(|(_, m)| m).sum::<usize>() == a.rows();
        Eigenvalues { values, split }
    }

    fn has_noncentral_scalar_part(&self, a: &Matrix<Quaternion>) -> bool {
        has_noncentral_scalar_part(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints<R: Ring>(r: &R, rows: &[&[i64]]) -> Matrix<R::Elem> {
        Matrix::from_rows(rows.iter().map(|x| x.iter().map(|&v| r.from_i64(v)).collect()).collect())
    }

    #[test]
    fn field_eigenvalues() {
        let f = RationalField;
        // companion of x^2 - 3x + 2
        let comp = ints(&f, &[&[0, -2], &[1, 3]]);
        let ev = eigenvalues_in_field(&f, &comp);
        assert_eq!(ev.values, vec![(q(1, 1), 1), (q(2, 1), 1)]);
        assert!(ev.split);
        let rot = ints(&f, &[&[0, -1], &[1, 0]]);
        let ev = eigenvalues_in_field(&f, &rot);
        assert!(ev.values.is_empty() && !ev.split);
        let jordan = ints(&f, &[&[1, 1], &[0, 1]]);
        assert_eq!(eigenvalues_in_field(&f, &jordan).values, vec![(q(1, 1), 2)]);
    }

    #[test]
    fn singleton_spectra() {
        let f = RationalField;
        assert_eq!(singleton_spectrum(&f, &ints(&f, &[&[3, 1], &[0, 3]])), Some(q(3, 1)));
        assert_eq!(singleton_spectrum(&f, &ints(&f, &[&[1, 0], &[0, 2]])), None);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(singleton_spectrum(&f2, &ints(&f2, &[&[1, 1], &[0, 1]])), Some(f2.one()));
        // diag(0, 1) mod 2 has trace 1 but spectrum {0, 1}
        assert_eq!(singleton_spectrum(&f2, &ints(&f2, &[&[0, 0], &[0, 1]])), None);
    }

    #[test]
    fn quaternion_central_spectrum() {
        let h = QuaternionRing;
        let half = Quaternion::from_rational(q(1, 2));
        let a = h.mat_add(&h.scalar_matrix(2, &half), &h.scale_left(&Quaternion::i(), &h.unit_matrix(2, 0, 1)));
        assert_eq!(central_spectrum_quaternion(&a), Some(q(1, 2)));
        assert_eq!(central_spectrum_quaternion(&h.scalar_matrix(2, &Quaternion::i())), None);
        assert_eq!(central_spectrum_quaternion(&h.identity(2)), Some(q(1, 1)));
        assert!(has_noncentral_scalar_part(&h.scalar_matrix(2, &Quaternion::i())));
        assert!(!has_noncentral_scalar_part(&h.identity(2)));
        let d = Matrix::from_rows(vec![vec![h.from_i64(1), h.zero()], vec![h.zero(), h.from_i64(2)]]);
        assert!(!has_noncentral_scalar_part(&d));
        assert_eq!(central_spectrum_quaternion(&d), None);
    }

    #[test]
    fn realification_is_multiplicative() {
        let h = QuaternionRing;
        let a = Matrix::from_rows(vec![
            vec![Quaternion::i(), Quaternion::from_ints(1, 0, 2, 0)],
            vec![Quaternion::k(), Quaternion::from_ints(0, 1, 1, -1)],
        ]);
        let b = Matrix::from_rows(vec![
            vec![Quaternion::j(), Quaternion::from_ints(3, 0, 0, 1)],
            vec![h.one(), Quaternion::from_ints(-1, 2, 0, 0)],
        ]);
        let lhs = realify(&h.mat_mul(&a, &b));
        let rhs = RationalField.mat_mul(&realify(&a), &realify(&b));
        assert_eq!(lhs, rhs);
    }
}
