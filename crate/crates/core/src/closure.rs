//! Generated structures: the multiplicative semigroup, the linear algebra
//! span over the center, the commutant and two-sided ideal spans.

use std::collections::HashMap;
use std::fmt;

use crate::linalg::{null_space_vectors, rref, Matrix, MatrixRing};
use crate::scalars::Ring;

pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("a family needs at least one generator")]
    Empty,
    #[error("generator {index} is {rows}x{cols}, expected {n}x{n}")]
    Shape { index: usize, rows: usize, cols: usize, n: usize },
}

/// A nonempty list of square matrices of one size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet<E> {
    n: usize,
    matrices: Vec<Matrix<E>>,
    labels: Option<Vec<String>>,
}

impl<E: Clone> GeneratorSet<E> {
    pub fn new(n: usize, matrices: Vec<Matrix<E>>) -> Result<Self, FamilyError> {
        if matrices.is_empty() {
            return Err(FamilyError::Empty);
        }
        for (index, m) in matrices.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(FamilyError::Shape { index, rows: m.rows(), cols: m.cols(), n });
            }
        }
        Ok(GeneratorSet { n, matrices, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.matrices.len());
        self.labels = Some(labels);
        self
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[Matrix<E>] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Same labels, new matrices (e.g. after a change of basis).
    pub fn map(&self, f: impl FnMut(&Matrix<E>) -> Matrix<E>) -> Self {
        let matrices: Vec<_> = self.matrices.iter().map(f).collect();
        let n = matrices[0].rows();
        GeneratorSet { n, matrices, labels: self.labels.clone() }
    }
}

/// A product of generators, stored as zero-based indices and printed
/// one-based, e.g. `g1*g2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn generator(i: usize) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn then(&self, i: usize) -> Self {
        let mut w = self.0.clone();
        w.push(i);
        Word(w)
    }

    /// The product of the named generators; the empty word is the identity.
    pub fn evaluate<R: Ring>(&self, ring: &R, gens: &GeneratorSet<R::Elem>) -> Matrix<R::Elem> {
        self.0.iter().fold(ring.identity(gens.dim()), |acc, &i| ring.mat_mul(&acc, &gens.matrices()[i]))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "g{}", i + 1)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "I" {
            return Ok(Word(Vec::new()));
        }
        s.split('*')
            .map(|t| {
                t.trim()
                    .strip_prefix('g')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i > 0)
                    .map(|i| i - 1)
                    .ok_or_else(|| format!("bad word factor {t:?}"))
            })
            .collect::<Result<_, _>>()
            .map(Word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult<E> {
    /// Distinct elements in discovery order.
    pub elements: Vec<Matrix<E>>,
    /// `words[i]` evaluates to `elements[i]`; it is a shortest such word.
    pub words: Vec<Word>,
    /// The element set is closed under multiplication.
    pub complete: bool,
    pub bound: usize,
}

impl<E> ClosureResult<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Breadth-first closure by word length, then generator index, extending
/// words on the right. Stops as soon as a new element would exceed `bound`.
pub fn semigroup_closure<R: Ring>(ring: &R, gens: &GeneratorSet<R::Elem>, bound: usize) -> ClosureResult<R::Elem> {
    breadth_first(ring, gens, bound, |_| false).0
}

/// First closure element, in breadth-first order, satisfying `pred`.
pub fn search_closure<R: Ring>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    bound: usize,
    pred: impl FnMut(&Matrix<R::Elem>) -> bool,
) -> Option<(Matrix<R::Elem>, Word)> {
    let (mut res, hit) = breadth_first(ring, gens, bound, pred);
    hit.map(|i| (res.elements.swap_remove(i), res.words.swap_remove(i)))
}

fn breadth_first<R: Ring>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    bound: usize,
    mut stop: impl FnMut(&Matrix<R::Elem>) -> bool,
) -> (ClosureResult<R::Elem>, Option<usize>) {
    let mut index: HashMap<Matrix<R::Elem>, usize> = HashMap::new();
    let mut res = ClosureResult { elements: Vec::new(), words: Vec::new(), complete: false, bound };

    enum Step {
        Continue,
        Full,
        Hit(usize),
    }
    let mut admit = |res: &mut ClosureResult<R::Elem>, m: Matrix<R::Elem>, w: Word, frontier: &mut Vec<usize>| {
        if index.contains_key(&m) {
            return Step::Continue;
        }
        if res.elements.len() == bound {
            return Step::Full;
        }
        let at = res.elements.len();
        let hit = stop(&m);
        index.insert(m.clone(), at);
        frontier.push(at);
        res.elements.push(m);
        res.words.push(w);
        if hit {
            Step::Hit(at)
        } else {
            Step::Continue
        }
    };

    let mut frontier = Vec::new();
    for (i, g) in gens.matrices().iter().enumerate() {
        match admit(&mut res, g.clone(), Word::generator(i), &mut frontier) {
            Step::Continue => {}
            Step::Full => return (res, None),
            Step::Hit(at) => return (res, Some(at)),
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &e in &frontier {
            for (i, g) in gens.matrices().iter().enumerate() {
                let product = ring.mat_mul(&res.elements[e], g);
                let word = res.words[e].then(i);
                match admit(&mut res, product, word, &mut next) {
                    Step::Continue => {}
                    Step::Full => return (res, None),
                    Step::Hit(at) => return (res, Some(at)),
                }
            }
        }
        frontier = next;
    }
    res.complete = true;
    (res, None)
}

type CenterElem<R> = <<R as Ring>::Center as Ring>::Elem;

/// Coordinates of a matrix over the center, entry by entry.
pub fn matrix_coords<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Vec<CenterElem<R>> {
    let mut out = Vec::with_capacity(m.entries().len() * ring.center_dim());
    for e in m.entries() {
        ring.center_coords(e, &mut out);
    }
    out
}

pub fn matrix_from_coords<R: Ring>(ring: &R, n: usize, coords: &[CenterElem<R>]) -> Matrix<R::Elem> {
    let d = ring.center_dim();
    Matrix::from_fn(n, n, |r, c| {
        let start = (r * n + c) * d;
        ring.from_center_coords(&coords[start..start + d])
    })
}

/// Incrementally echelonized span of matrices over the center.
struct SpanBuilder<R: Ring> {
    ring: R,
    n: usize,
    rows: Vec<(usize, Vec<CenterElem<R>>)>,
}

impl<R: Ring> SpanBuilder<R> {
    fn new(ring: &R, n: usize) -> Self {
        SpanBuilder { ring: ring.clone(), n, rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `m` to the span; returns whether the span grew.
    fn insert(&mut self, m: &Matrix<R::Elem>) -> bool {
        let c = self.ring.center();
        let mut v = matrix_coords(&self.ring, m);
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if c.is_zero(&f) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x = c.sub(x, &c.mul(&f, y));
            }
        }
        let Some(p) = v.iter().position(|x| !c.is_zero(x)) else {
            return false;
        };
        let inv = c.inv(&v[p]).expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = c.mul(x, &inv);
        }
        self.rows.push((p, v));
        true
    }

    /// Canonical basis: the reduced row echelon form of the coordinate rows.
    fn basis(&self) -> Vec<Matrix<R::Elem>> {
        if self.rows.is_empty() {
            return Vec::new();
        }
        let c = self.ring.center();
        let width = self.rows[0].1.len();
        let stacked = Matrix::from_fn(self.rows.len(), width, |r, k| self.rows[r].1[k].clone());
        let red = rref(&c, &stacked);
        (0..red.rank()).map(|r| matrix_from_coords(&self.ring, self.n, red.matrix.row(r))).collect()
    }
}

/// Basis over the center of the algebra generated by `gens`, including the
/// identity when `unital`.
pub fn algebra_span<R: Ring>(ring: &R, gens: &GeneratorSet<R::Elem>, unital: bool) -> Vec<Matrix<R::Elem>> {
    let n = gens.dim();
    let mut span = SpanBuilder::new(ring, n);
    let mut queue: Vec<Matrix<R::Elem>> = Vec::new();
    let seeds = unital.then(|| ring.identity(n)).into_iter().chain(gens.matrices().iter().cloned());
    for m in seeds {
        if span.insert(&m) {
            queue.push(m);
        }
    }
    // span{words} is the smallest subspace containing the generators and
    // closed under right multiplication by them
    while let Some(m) = queue.pop() {
        for g in gens.matrices() {
            let p = ring.mat_mul(&m, g);
            if span.insert(&p) {
                queue.push(p);
            }
        }
    }
    span.basis()
}

/// Basis over the center of `{X : XG = GX for every generator G}`.
pub fn commutant<R: Ring>(ring: &R, n: usize, mats: &[Matrix<R::Elem>]) -> Vec<Matrix<R::Elem>> {
    let c = ring.center();
    let d = ring.center_dim();
    let unknowns = n * n * d;
    if mats.is_empty() {
        return (0..unknowns).map(|k| unit_coord_matrix(ring, n, k)).collect();
    }
    let mut columns: Vec<Vec<CenterElem<R>>> = Vec::with_capacity(unknowns);
    for k in 0..unknowns {
        let x = unit_coord_matrix(ring, n, k);
        let mut col = Vec::with_capacity(mats.len() * n * n * d);
        for g in mats {
            let image = ring.mat_sub(&ring.mat_mul(&x, g), &ring.mat_mul(g, &x));
            col.extend(matrix_coords(ring, &image));
        }
        columns.push(col);
    }
    let height = columns[0].len();
    let map = Matrix::from_fn(height, unknowns, |r, k| columns[k][r].clone());
    let kernel = null_space_vectors(&c, &map);
    let mut span = SpanBuilder::new(ring, n);
    for v in kernel {
        span.insert(&matrix_from_coords(ring, n, &v));
    }
    span.basis()
}

fn unit_coord_matrix<R: Ring>(ring: &R, n: usize, k: usize) -> Matrix<R::Elem> {
    let c = ring.center();
    let mut coords = vec![c.zero(); n * n * ring.center_dim()];
    coords[k] = c.one();
    matrix_from_coords(ring, n, &coords)
}

/// Basis over the center of `span{s, a s, s b, a s b}` with `a`, `b`
/// running over `algebra`.
pub fn ideal_span<R: Ring>(
    ring: &R,
    n: usize,
    algebra: &[Matrix<R::Elem>],
    seed: &Matrix<R::Elem>,
) -> Vec<Matrix<R::Elem>> {
    let mut span = SpanBuilder::new(ring, n);
    span.insert(seed);
    let left: Vec<_> = algebra.iter().map(|a| ring.mat_mul(a, seed)).collect();
    for m in &left {
        span.insert(m);
    }
    for b in algebra {
        span.insert(&ring.mat_mul(seed, b));
        for m in &left {
            span.insert(&ring.mat_mul(m, b));
        }
    }
    span.basis()
}

/// Canonical basis over the center of the span of `mats`.
pub fn span_basis<R: Ring>(ring: &R, n: usize, mats: &[Matrix<R::Elem>]) -> Vec<Matrix<R::Elem>> {
    let mut span = SpanBuilder::new(ring, n);
    for m in mats {
        span.insert(m);
    }
    span.basis()
}

/// Dimension over the center of the span of `mats`.
pub fn span_dim<R: Ring>(ring: &R, n: usize, mats: &[Matrix<R::Elem>]) -> usize {
    let mut span = SpanBuilder::new(ring, n);
    for m in mats {
        span.insert(m);
    }
    span.dim()
}

pub fn is_commutative<R: Ring>(ring: &R, basis: &[Matrix<R::Elem>]) -> bool {
    first_noncommuting_pair(ring, basis).is_none()
}

/// First `(i, j)`, `i < j` in lexicographic order, with `[B_i, B_j] != 0`.
pub fn first_noncommuting_pair<R: Ring>(ring: &R, basis: &[Matrix<R::Elem>]) -> Option<(usize, usize)> {
    (0..basis.len())
        .flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !ring.is_zero_matrix(&ring.commutator(&basis[i], &basis[j])))
}
