//! Irreducibility of the semigroup generated by a family.
//!
//! Orbit spans of coordinate vectors and of kernel vectors of algebra
//! elements find most invariant subspaces; over fields the transposed family
//! is tried as well, since `W` is invariant iff its annihilator is invariant
//! under the transposes. Irreducibility is certified when the algebra is all
//! of `M_n`, by a singular algebra element with one-dimensional kernel whose
//! kernel vectors generate the space and the dual space, or over a small
//! prime field by trying every vector.

use crate::closure::{algebra_span, GeneratorSet};
use crate::linalg::{kernel, Matrix, MatrixRing, Spectral, Subspace};
use crate::scalars::Ring;

/// Largest `p^n` for which every vector is tried.
const EXHAUSTIVE_LIMIT: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility<E> {
    /// A nonzero proper invariant subspace.
    Reducible(Subspace<E>),
    Irreducible,
    /// Neither a proper invariant subspace nor a certificate was found.
    Undetermined,
}

impl<E> Irreducibility<E> {
    pub fn is_irreducible(&self) -> Option<bool> {
        match self {
            Irreducibility::Reducible(_) => Some(false),
            Irreducibility::Irreducible => Some(true),
            Irreducibility::Undetermined => None,
        }
    }
}

/// Smallest subspace containing `x` and invariant under `mats`.
pub fn orbit_span<R: Ring>(ring: &R, mats: &[Matrix<R::Elem>], x: &[R::Elem]) -> Subspace<R::Elem> {
    let n = x.len();
    let mut span = Subspace::span(ring, n, [x.to_vec()]);
    let mut queue = span.basis().to_vec();
    while let Some(v) = queue.pop() {
        for g in mats {
            let image = ring.mat_vec(g, &v);
            if !span.contains(ring, &image) {
                span = span.sum(ring, &Subspace::span(ring, n, [image.clone()]));
                queue.push(image);
            }
        }
    }
    span
}

pub fn irreducibility_test<R: Spectral>(ring: &R, gens: &GeneratorSet<R::Elem>) -> Irreducibility<R::Elem> {
    let n = gens.dim();
    if n <= 1 {
        return Irreducibility::Irreducible;
    }
    let mats = gens.matrices();
    let algebra = algebra_span(ring, gens, true);
    let field = ring.center_dim() == 1;
    let transposed: Vec<_> = mats.iter().map(Matrix::transpose).collect();

    let mut seeds: Vec<Vec<R::Elem>> = (0..n).map(|i| unit(ring, n, i)).collect();
    let mut singular = Vec::new();
    for b in &algebra {
        singular.push(b.clone());
        for (lambda, _) in ring.central_eigenvalues(b).values {
            singular.push(ring.mat_sub(b, &ring.scalar_matrix(n, &lambda)));
        }
    }
    for a in &singular {
        seeds.extend(kernel(ring, a).basis().iter().cloned());
    }
    for x in &seeds {
        let orbit = orbit_span(ring, mats, x);
        if !orbit.is_full() {
            return Irreducibility::Reducible(orbit);
        }
    }
    if field {
        let mut dual_seeds: Vec<Vec<R::Elem>> = (0..n).map(|i| unit(ring, n, i)).collect();
        for a in &singular {
            dual_seeds.extend(kernel(ring, &a.transpose()).basis().iter().cloned());
        }
        for y in &dual_seeds {
            let orbit = orbit_span(ring, &transposed, y);
            if !orbit.is_full() {
                return Irreducibility::Reducible(annihilator(ring, &orbit));
            }
        }
    }

    if algebra.len() == n * n * ring.center_dim() {
        return Irreducibility::Irreducible;
    }
    if field {
        // a singular element with a one-dimensional kernel on both sides,
        // whose kernel vectors all generate, rules out every proper subspace
        let certified = singular.iter().any(|a| {
            let right = kernel(ring, a);
            let left = kernel(ring, &a.transpose());
            right.dim() == 1 && left.dim() == 1
        });
        if certified {
            return Irreducibility::Irreducible;
        }
        let p = ring.characteristic();
        if p > 0 && (p as f64).powi(n as i32) <= EXHAUSTIVE_LIMIT as f64 {
            return exhaustive(ring, mats, p, n);
        }
    }
    Irreducibility::Undetermined
}

fn unit<R: Ring>(ring: &R, n: usize, i: usize) -> Vec<R::Elem> {
    (0..n).map(|r| if r == i { ring.one() } else { ring.zero() }).collect()
}

/// `{x : y^T x = 0 for all y in w}`.
fn annihilator<R: Ring>(ring: &R, w: &Subspace<R::Elem>) -> Subspace<R::Elem> {
    kernel(ring, &Matrix::from_rows(w.basis().to_vec()))
}

fn exhaustive<R: Ring>(ring: &R, mats: &[Matrix<R::Elem>], p: u64, n: usize) -> Irreducibility<R::Elem> {
    let total = p.pow(n as u32);
    for code in 1..total {
        let mut c = code;
        let x: Vec<R::Elem> = (0..n)
            .map(|_| {
                let d = c % p;
                c /= p;
                ring.from_i64(d as i64)
            })
            .collect();
        let orbit = orbit_span(ring, mats, &x);
        if !orbit.is_full() {
            return Irreducibility::Reducible(orbit);
        }
    }
    Irreducibility::Irreducible
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, Quaternion, QuaternionRing, RationalField};

    fn ints<R: Ring>(r: &R, rows: &[&[i64]]) -> Matrix<R::Elem> {
        Matrix::from_rows(rows.iter().map(|x| x.iter().map(|&v| r.from_i64(v)).collect()).collect())
    }

    #[test]
    fn examples() {
        let q = RationalField;
        let units = GeneratorSet::new(2, vec![q.unit_matrix(2, 0, 1), q.unit_matrix(2, 1, 0)]).unwrap();
        assert_eq!(irreducibility_test(&q, &units), Irreducibility::Irreducible);
        let id = GeneratorSet::new(2, vec![q.identity(2)]).unwrap();
        assert!(matches!(irreducibility_test(&q, &id), Irreducibility::Reducible(_)));
        let d = GeneratorSet::new(2, vec![ints(&q, &[&[1, 0], &[0, 2]])]).unwrap();
        assert!(matches!(irreducibility_test(&q, &d), Irreducibility::Reducible(_)));
    }

    #[test]
    fn invariant_line_off_the_axes() {
        // span{(1,1)} is invariant although both coordinate orbits are full
        let q = RationalField;
        let all_ones = GeneratorSet::new(2, vec![ints(&q, &[&[1, 1], &[1, 1]])]).unwrap();
        match irreducibility_test(&q, &all_ones) {
            Irreducibility::Reducible(w) => {
                assert_eq!(w.dim(), 1);
                assert!(w.is_invariant(&q, &all_ones.matrices()[0]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rotation_is_irreducible_over_small_field() {
        // x^2 + 1 is irreducible mod 3
        let f = PrimeField::new(3).unwrap();
        let rot = GeneratorSet::new(2, vec![ints(&f, &[&[0, -1], &[1, 0]])]).unwrap();
        assert_eq!(irreducibility_test(&f, &rot), Irreducibility::Irreducible);
        // and splits mod 5
        let f5 = PrimeField::new(5).unwrap();
        let rot5 = GeneratorSet::new(2, vec![ints(&f5, &[&[0, -1], &[1, 0]])]).unwrap();
        assert!(matches!(irreducibility_test(&f5, &rot5), Irreducibility::Reducible(_)));
    }

    #[test]
    fn quaternion_full_algebra() {
        let h = QuaternionRing;
        let g = GeneratorSet::new(
            2,
            vec![
                h.unit_matrix(2, 0, 1),
                h.unit_matrix(2, 1, 0),
                h.scalar_matrix(2, &Quaternion::i()),
                h.scalar_matrix(2, &Quaternion::j()),
            ],
        )
        .unwrap();
        assert_eq!(irreducibility_test(&h, &g), Irreducibility::Irreducible);
    }
}
