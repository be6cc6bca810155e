//! Subspaces of the right column space, in canonical form, and the maps
//! they induce: restrictions, quotients and basis completion.

use std::fmt;

use super::echelon::{column_echelon, null_space_vectors, solve};
use super::matrix::{Matrix, MatrixRing};
use crate::scalars::Ring;

/// A right subspace of `D^n`, stored as its canonical reduced column-echelon
/// basis so that structural equality is subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

/// `A` moves a vector of the subspace outside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotInvariant<E> {
    pub vector: Vec<E>,
}

impl<E: fmt::Debug> fmt::Display for NotInvariant<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subspace is not invariant: {:?} leaves it", self.vector)
    }
}

impl<E: fmt::Debug> std::error::Error for NotInvariant<E> {}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full<R: Ring<Elem = E>>(ring: &R, ambient: usize) -> Self {
        Self::coordinate(ring, ambient, ambient)
    }

    /// `span{e_1, ..., e_k}`.
    pub fn coordinate<R: Ring<Elem = E>>(ring: &R, ambient: usize, k: usize) -> Self {
        let basis =
            (0..k).map(|i| (0..ambient).map(|r| if r == i { ring.one() } else { ring.zero() }).collect()).collect();
        Subspace { ambient, basis, pivots: (0..k).collect() }
    }

    pub fn span<R: Ring<Elem = E>>(ring: &R, ambient: usize, vectors: impl IntoIterator<Item = Vec<E>>) -> Self {
        let (basis, pivots) = column_echelon(ring, ambient, vectors);
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `ambient x dim` matrix whose columns are the canonical basis.
    pub fn basis_matrix(&self) -> Matrix<E> {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coordinates<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Option<Vec<E>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<E> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (b, c) in self.basis.iter().zip(&coords) {
            if ring.is_zero(c) {
                continue;
            }
            for (x, y) in residual.iter_mut().zip(b) {
                *x = ring.sub(x, &ring.mul(y, c));
            }
        }
        ring.is_zero_vector(&residual).then_some(coords)
    }

    pub fn contains<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> bool {
        self.coordinates(ring, v).is_some()
    }

    pub fn contains_subspace<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(ring, v))
    }

    pub fn sum<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span(ring, self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Intersection through the kernel of `[U | -W]`.
    pub fn intersect<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Subspace::zero(self.ambient);
        }
        let stacked = Matrix::from_fn(self.ambient, k + l, |r, c| {
            if c < k {
                self.basis[c][r].clone()
            } else {
                ring.neg(&other.basis[c - k][r])
            }
        });
        let u = self.basis_matrix();
        let vectors = null_space_vectors(ring, &stacked).into_iter().map(|sol| ring.mat_vec(&u, &sol[..k]));
        Subspace::span(ring, self.ambient, vectors)
    }

    /// Image under the columns of `frame` (`ambient' x self.ambient`).
    pub fn image<R: Ring<Elem = E>>(&self, ring: &R, frame: &Matrix<E>) -> Self {
        assert_eq!(frame.cols(), self.ambient);
        Subspace::span(ring, frame.rows(), self.basis.iter().map(|v| ring.mat_vec(frame, v)))
    }

    /// First basis vector moved outside the subspace by `a`.
    pub fn check_invariant<R: Ring<Elem = E>>(&self, ring: &R, a: &Matrix<E>) -> Result<(), NotInvariant<E>> {
        match self.basis.iter().find(|v| !self.contains(ring, &ring.mat_vec(a, v))) {
            Some(v) => Err(NotInvariant { vector: v.clone() }),
            None => Ok(()),
        }
    }

    pub fn is_invariant<R: Ring<Elem = E>>(&self, ring: &R, a: &Matrix<E>) -> bool {
        self.check_invariant(ring, a).is_ok()
    }
}

/// Right null space `{x : Ax = 0}` of a possibly rectangular matrix.
pub fn kernel<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Subspace<R::Elem> {
    Subspace::span(ring, a.cols(), null_space_vectors(ring, a))
}

/// Intersection of the kernels of all `mats`.
pub fn common_kernel<R: Ring>(ring: &R, n: usize, mats: &[Matrix<R::Elem>]) -> Subspace<R::Elem> {
    if mats.is_empty() {
        return Subspace::full(ring, n);
    }
    kernel(ring, &Matrix::vstack(n, mats))
}

/// Invertible `P` whose first `dim U` columns are the basis of `U`, completed
/// by the coordinate vectors at the non-pivot positions.
pub fn extend_to_basis<R: Ring>(ring: &R, u: &Subspace<R::Elem>) -> Matrix<R::Elem> {
    let n = u.ambient_dim();
    let mut cols = u.basis().to_vec();
    for i in (0..n).filter(|i| !u.pivots().contains(i)) {
        cols.push((0..n).map(|r| if r == i { ring.one() } else { ring.zero() }).collect());
    }
    Matrix::from_columns(n, &cols)
}

/// Matrix of `A` restricted to the invariant subspace `U`, in `U`'s
/// canonical basis.
pub fn restrict<R: Ring>(
    ring: &R,
    a: &Matrix<R::Elem>,
    u: &Subspace<R::Elem>,
) -> Result<Matrix<R::Elem>, NotInvariant<R::Elem>> {
    let mut cols = Vec::with_capacity(u.dim());
    for v in u.basis() {
        let image = ring.mat_vec(a, v);
        match u.coordinates(ring, &image) {
            Some(c) => cols.push(c),
            None => return Err(NotInvariant { vector: v.clone() }),
        }
    }
    Ok(Matrix::from_columns(u.dim(), &cols))
}

/// Vectors completing `M`'s basis to one of `N`: the canonical basis vectors
/// of `N` not already in the span of `M` and the vectors kept before them.
pub fn quotient_complement<R: Ring>(ring: &R, m: &Subspace<R::Elem>, n: &Subspace<R::Elem>) -> Vec<Vec<R::Elem>> {
    let mut acc = m.clone();
    let mut kept = Vec::new();
    for v in n.basis() {
        if !acc.contains(ring, v) {
            acc = acc.sum(ring, &Subspace::span(ring, m.ambient_dim(), [v.clone()]));
            kept.push(v.clone());
        }
    }
    kept
}

/// Matrix of `x + M -> Ax + M` on `N / M` in the basis given by
/// [`quotient_complement`].
pub fn quotient<R: Ring>(
    ring: &R,
    a: &Matrix<R::Elem>,
    m: &Subspace<R::Elem>,
    n: &Subspace<R::Elem>,
) -> Result<Matrix<R::Elem>, NotInvariant<R::Elem>> {
    m.check_invariant(ring, a)?;
    n.check_invariant(ring, a)?;
    assert!(n.contains_subspace(ring, m), "quotient requires M inside N");
    let comp = quotient_complement(ring, m, n);
    let mut all = m.basis().to_vec();
    all.extend(comp.iter().cloned());
    let frame = Matrix::from_columns(m.ambient_dim(), &all);
    let k = m.dim();
    let mut cols = Vec::with_capacity(comp.len());
    for v in &comp {
        let image = ring.mat_vec(a, v);
        let coords = solve(ring, &frame, &image).expect("image lies in N");
        cols.push(coords[k..].to_vec());
    }
    Ok(Matrix::from_columns(comp.len(), &cols))
}

/// A complete flag `{0} = V_0 < V_1 < ... < V_n = D^n` with `dim V_j = j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain<E> {
    subspaces: Vec<Subspace<E>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("chain has {found} subspaces, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("subspace {index} has dimension {found}")]
    Dimension { index: usize, found: usize },
    #[error("subspace {index} does not contain its predecessor")]
    NotNested { index: usize },
    #[error("subspace {index} lives in dimension {found}, expected {expected}")]
    Ambient { index: usize, expected: usize, found: usize },
}

impl<E: Clone + PartialEq> Chain<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, subspaces: Vec<Subspace<E>>) -> Result<Self, ChainError> {
        let n = subspaces.len().saturating_sub(1);
        if subspaces.is_empty() {
            return Err(ChainError::Length { expected: 1, found: 0 });
        }
        for (j, s) in subspaces.iter().enumerate() {
            if s.ambient_dim() != n {
                return Err(ChainError::Ambient { index: j, expected: n, found: s.ambient_dim() });
            }
            if s.dim() != j {
                return Err(ChainError::Dimension { index: j, found: s.dim() });
            }
            if j > 0 && !s.contains_subspace(ring, &subspaces[j - 1]) {
                return Err(ChainError::NotNested { index: j });
            }
        }
        Ok(Chain { subspaces })
    }

    /// `span{e_1} < span{e_1, e_2} < ...`.
    pub fn standard<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Chain { subspaces: (0..=n).map(|k| Subspace::coordinate(ring, n, k)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.subspaces.len() - 1
    }

    pub fn subspaces(&self) -> &[Subspace<E>] {
        &self.subspaces
    }

    /// Columns `b_j` with `V_j = span{b_1..b_j}`: a triangularizing basis.
    pub fn adapted_basis<R: Ring<Elem = E>>(&self, ring: &R) -> Matrix<E> {
        let n = self.dim();
        let mut cols: Vec<Vec<E>> = Vec::with_capacity(n);
        for j in 1..=n {
            let prev = &self.subspaces[j - 1];
            let next = self.subspaces[j]
                .basis()
                .iter()
                .find(|v| !prev.contains(ring, v))
                .expect("consecutive subspaces differ")
                .clone();
            cols.push(next);
        }
        Matrix::from_columns(n, &cols)
    }

    /// Image of every subspace under an invertible `P`.
    pub fn transport<R: Ring<Elem = E>>(&self, ring: &R, p: &Matrix<E>) -> Self {
        Chain { subspaces: self.subspaces.iter().map(|s| s.image(ring, p)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Rational, RationalField};

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| RationalField.from_i64(a)).collect()
    }

    fn ints(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| v(r)).collect())
    }

    #[test]
    fn lattice_operations() {
        let q = RationalField;
        let e1 = Subspace::span(&q, 3, [v(&[1, 0, 0])]);
        let e2 = Subspace::span(&q, 3, [v(&[0, 1, 0])]);
        let e12 = Subspace::span(&q, 3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let e23 = Subspace::span(&q, 3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(e1.sum(&q, &e2), e12);
        assert_eq!(e12.intersect(&q, &e23), e2);
        assert_eq!(Subspace::span(&q, 3, [v(&[2, 2, 0]), v(&[1, -1, 0])]), e12);
    }

    #[test]
    fn kernels() {
        let q = RationalField;
        assert_eq!(kernel(&q, &ints(&[&[0, 1], &[0, 0]])), Subspace::span(&q, 2, [v(&[1, 0])]));
        assert!(kernel(&q, &q.identity(2)).is_zero());
    }

    #[test]
    fn basis_extension() {
        let q = RationalField;
        let u = Subspace::span(&q, 2, [v(&[0, 1])]);
        assert_eq!(extend_to_basis(&q, &u), ints(&[&[0, 1], &[1, 0]]));
        assert_eq!(extend_to_basis(&q, &Subspace::zero(2)), q.identity(2));
        let diag = Subspace::span(&q, 2, [v(&[1, 1])]);
        let p = extend_to_basis(&q, &diag);
        assert_eq!(p, ints(&[&[1, 0], &[1, 1]]));
        assert_eq!(crate::linalg::rank(&q, &p), 2);
    }

    #[test]
    fn restriction_and_quotient() {
        let q = RationalField;
        let a = ints(&[&[1, 1, 0], &[0, 2, 1], &[0, 0, 3]]);
        let m = Subspace::coordinate(&q, 3, 1);
        let full = Subspace::full(&q, 3);
        assert_eq!(quotient(&q, &a, &m, &full).unwrap(), ints(&[&[2, 1], &[0, 3]]));
        assert_eq!(restrict(&q, &a, &full).unwrap(), a);
        let e21 = q.unit_matrix(2, 1, 0);
        let err = restrict(&q, &e21, &Subspace::coordinate(&q, 2, 1)).unwrap_err();
        assert_eq!(err.vector, v(&[1, 0]));
    }

    #[test]
    fn chain_validation() {
        let q = RationalField;
        let std = Chain::standard(&q, 3);
        assert!(Chain::new(&q, std.subspaces().to_vec()).is_ok());
        let mut bad = std.subspaces().to_vec();
        bad[2] = Subspace::span(&q, 3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(Chain::new(&q, bad), Err(ChainError::NotNested { index: 2 }));
        assert_eq!(std.adapted_basis(&q), q.identity(3));
    }
}
