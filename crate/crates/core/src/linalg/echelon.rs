//! Gaussian elimination over a division ring.
//!
//! Row operations multiply rows on the left, which preserves the right null
//! space `{x : Ax = 0}`. Column spans are reduced with right multiplications,
//! which preserves the right span of the columns.

use super::matrix::{Matrix, MatrixRing};
use crate::scalars::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<E> {
    pub matrix: Matrix<E>,
    pub pivots: Vec<usize>,
}

impl<E> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row echelon form, pivots normalized to one.
pub fn rref<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Rref<R::Elem> {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&r| !ring.is_zero(m.get(r, col))) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = ring.inv(m.get(row, col)).expect("pivot is nonzero");
        for c in col..m.cols() {
            let v = ring.mul(&inv, m.get(row, c));
            m.set(row, c, v);
        }
        for r in 0..m.rows() {
            if r == row {
                continue;
            }
            let factor = m.get(r, col).clone();
            if ring.is_zero(&factor) {
                continue;
            }
            for c in col..m.cols() {
                let v = ring.sub(m.get(r, c), &ring.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { matrix: m, pivots }
}

pub fn rank<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> usize {
    rref(ring, a).rank()
}

/// Basis of the right null space, one vector per free column, with a one in
/// the free position.
pub fn null_space_vectors<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Vec<Vec<R::Elem>> {
    let red = rref(ring, a);
    let n = a.cols();
    let mut is_pivot = vec![false; n];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![ring.zero(); n];
            v[f] = ring.one();
            for (r, &p) in red.pivots.iter().enumerate() {
                v[p] = ring.neg(red.matrix.get(r, f));
            }
            v
        })
        .collect()
}

/// Some `x` with `Ax = b`, or `None` when the system is inconsistent.
pub fn solve<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &[R::Elem]) -> Option<Vec<R::Elem>> {
    assert_eq!(a.rows(), b.len());
    let aug =
        Matrix::from_fn(a.rows(), a.cols() + 1, |r, c| if c < a.cols() { a.get(r, c).clone() } else { b[r].clone() });
    let red = rref(ring, &aug);
    if red.pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![ring.zero(); a.cols()];
    for (r, &p) in red.pivots.iter().enumerate() {
        x[p] = red.matrix.get(r, a.cols()).clone();
    }
    Some(x)
}

/// Two-sided inverse of a square matrix, if it is invertible.
pub fn inverse<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Option<Matrix<R::Elem>> {
    assert!(a.is_square());
    let n = a.rows();
    let aug = Matrix::from_fn(n, 2 * n, |r, c| {
        if c < n {
            a.get(r, c).clone()
        } else if c - n == r {
            ring.one()
        } else {
            ring.zero()
        }
    });
    let red = rref(ring, &aug);
    if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |r, c| red.matrix.get(r, n + c).clone()))
}

/// Canonical basis of the right span of `vectors`: each vector has a one at
/// its pivot row, zeros above it, and zeros at every other vector's pivot.
/// Vectors come back sorted by pivot row.
pub fn column_echelon<R: Ring>(
    ring: &R,
    dim: usize,
    vectors: impl IntoIterator<Item = Vec<R::Elem>>,
) -> (Vec<Vec<R::Elem>>, Vec<usize>) {
    let mut pending: Vec<Vec<R::Elem>> = vectors
        .into_iter()
        .inspect(|v| assert_eq!(v.len(), dim, "vector has wrong length"))
        .filter(|v| !ring.is_zero_vector(v))
        .collect();
    let mut basis: Vec<Vec<R::Elem>> = Vec::new();
    let mut pivots = Vec::new();
    for row in 0..dim {
        if pending.is_empty() {
            break;
        }
        let Some(idx) = pending.iter().position(|v| !ring.is_zero(&v[row])) else {
            continue;
        };
        let mut pivot = pending.swap_remove(idx);
        let inv = ring.inv(&pivot[row]).expect("pivot is nonzero");
        for x in pivot.iter_mut() {
            *x = ring.mul(x, &inv);
        }
        for other in pending.iter_mut().chain(basis.iter_mut()) {
            let factor = other[row].clone();
            if ring.is_zero(&factor) {
                continue;
            }
            for (x, p) in other.iter_mut().zip(&pivot) {
                *x = ring.sub(x, &ring.mul(p, &factor));
            }
        }
        pending.retain(|v| !ring.is_zero_vector(v));
        basis.push(pivot);
        pivots.push(row);
    }
    (basis, pivots)
}
