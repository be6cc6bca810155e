use std::fmt;

use crate::scalars::Ring;

/// Dense row-major matrix. Square matrices act on the left of column vectors;
/// rectangular ones appear as intermediate systems and bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<_> = self.row(r).iter().collect();
            write!(f, "{row:?}")?;
        }
        f.write_str("]")
    }
}

impl<E> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix buffer has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            assert_eq!(row.len(), n_cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: n_rows, cols: n_cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut E {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn map<F>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<E: Clone> Matrix<E> {
    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<E>]) -> Self {
        Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(cols: usize, parts: &[Matrix<E>]) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Matrix { rows, cols, data }
    }
}

/// Matrix arithmetic through a ring context. Blanket-implemented for every
/// [`Ring`], so `ring.mat_mul(&a, &b)` reads naturally at call sites.
pub trait MatrixRing: Ring {
    fn zeros(&self, rows: usize, cols: usize) -> Matrix<Self::Elem> {
        Matrix::from_fn(rows, cols, |_, _| self.zero())
    }

    fn identity(&self, n: usize) -> Matrix<Self::Elem> {
        self.scalar_matrix(n, &self.one())
    }

    fn scalar_matrix(&self, n: usize, s: &Self::Elem) -> Matrix<Self::Elem> {
        Matrix::from_fn(n, n, |r, c| if r == c { s.clone() } else { self.zero() })
    }

    /// Matrix with a single one at `(r, c)`.
    fn unit_matrix(&self, n: usize, r: usize, c: usize) -> Matrix<Self::Elem> {
        Matrix::from_fn(n, n, |i, j| if (i, j) == (r, c) { self.one() } else { self.zero() })
    }

    fn mat_add(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        Matrix::from_fn(a.rows(), a.cols(), |r, c| self.add(a.get(r, c), b.get(r, c)))
    }

    fn mat_sub(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        Matrix::from_fn(a.rows(), a.cols(), |r, c| self.sub(a.get(r, c), b.get(r, c)))
    }

    fn mat_mul(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        assert_eq!(a.cols(), b.rows(), "dimension mismatch in product");
        let mut out = self.zeros(a.rows(), b.cols());
        for r in 0..a.rows() {
            for k in 0..a.cols() {
                let x = a.get(r, k);
                if self.is_zero(x) {
                    continue;
                }
                for c in 0..b.cols() {
                    let y = b.get(k, c);
                    if self.is_zero(y) {
                        continue;
                    }
                    let acc = out.get_mut(r, c);
                    *acc = self.add(acc, &self.mul(x, y));
                }
            }
        }
        out
    }

    /// `s * A`, the scalar multiplying every entry from the left.
    fn scale_left(&self, s: &Self::Elem, a: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        a.map(|x| self.mul(s, x))
    }

    /// `A * s`, the scalar multiplying every entry from the right.
    fn scale_right(&self, a: &Matrix<Self::Elem>, s: &Self::Elem) -> Matrix<Self::Elem> {
        a.map(|x| self.mul(x, s))
    }

    fn mat_vec(&self, a: &Matrix<Self::Elem>, v: &[Self::Elem]) -> Vec<Self::Elem> {
        assert_eq!(a.cols(), v.len());
        (0..a.rows())
            .map(|r| a.row(r).iter().zip(v).fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y))))
            .collect()
    }

    fn mat_pow(&self, a: &Matrix<Self::Elem>, mut e: usize) -> Matrix<Self::Elem> {
        let mut acc = self.identity(a.rows());
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mat_mul(&base, &base);
            }
        }
        acc
    }

    fn commutator(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        self.mat_sub(&self.mat_mul(a, b), &self.mat_mul(b, a))
    }

    fn is_zero_matrix(&self, a: &Matrix<Self::Elem>) -> bool {
        a.entries().iter().all(|x| self.is_zero(x))
    }

    fn is_zero_vector(&self, v: &[Self::Elem]) -> bool {
        v.iter().all(|x| self.is_zero(x))
    }

    /// `cI` with `c` central; over a right vector space only these act as
    /// scalar transformations.
    fn scalar_value(&self, a: &Matrix<Self::Elem>) -> Option<Self::Elem> {
        if !a.is_square() {
            return None;
        }
        let n = a.rows();
        if n == 0 {
            return Some(self.zero());
        }
        let c = a.get(0, 0);
        if !self.is_central(c) {
            return None;
        }
        for r in 0..n {
            for k in 0..n {
                let x = a.get(r, k);
                let ok = if r == k { x == c } else { self.is_zero(x) };
                if !ok {
                    return None;
                }
            }
        }
        Some(c.clone())
    }

    fn is_scalar(&self, a: &Matrix<Self::Elem>) -> bool {
        self.scalar_value(a).is_some()
    }

    fn trace(&self, a: &Matrix<Self::Elem>) -> Self::Elem {
        (0..a.rows()).fold(self.zero(), |acc, i| self.add(&acc, a.get(i, i)))
    }

    /// `A^n = 0` with `n` the dimension.
    fn is_nilpotent(&self, a: &Matrix<Self::Elem>) -> bool {
        self.is_zero_matrix(&self.mat_pow(a, a.rows()))
    }

    /// `(A - I)^n = 0`.
    fn is_unipotent(&self, a: &Matrix<Self::Elem>) -> bool {
        self.is_nilpotent(&self.mat_sub(a, &self.identity(a.rows())))
    }
}

impl<R: Ring> MatrixRing for R {}
