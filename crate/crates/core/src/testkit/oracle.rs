//! Brute-force reference answers that share no code with the engine.

use std::collections::HashSet;

use crate::closure::GeneratorSet;
use crate::linalg::Matrix;
use crate::scalars::{Field, PrimeField, PrimeFieldElem};

/// Largest `p^n` the flag enumeration accepts.
const FLAG_LIMIT: usize = 1 << 12;

/// True iff some complete flag of `GF(p)^n` is invariant under every
/// generator. Subspaces are sets of vectors, vectors are integers in base
/// `p`, and arithmetic is plain `u32` modular arithmetic.
pub fn flag_enumeration_oracle(field: &PrimeField, gens: &GeneratorSet<PrimeFieldElem>) -> bool {
    let p = field.modulus() as u32;
    let n = gens.dim();
    let size = (p as usize).pow(n as u32);
    assert!(size <= FLAG_LIMIT, "flag enumeration is limited to {FLAG_LIMIT} vectors");
    let mats: Vec<Vec<u32>> =
        gens.matrices().iter().map(|g| g.entries().iter().map(|e| e.0 as u32).collect()).collect();
    let space = Space { p, n, size };
    let images: Vec<Vec<usize>> = mats.iter().map(|g| (0..size).map(|v| space.apply(g, v)).collect()).collect();
    let mut zero = vec![false; size];
    zero[0] = true;
    let mut dead = HashSet::new();
    space.extend(&images, &zero, 0, &mut dead)
}

struct Space {
    p: u32,
    n: usize,
    size: usize,
}

impl Space {
    fn decode(&self, mut v: usize) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = (v % self.p as usize) as u32;
                v /= self.p as usize;
                d
            })
            .collect()
    }

    fn encode(&self, x: &[u32]) -> usize {
        x.iter().rev().fold(0, |acc, &d| acc * self.p as usize + d as usize)
    }

    fn apply(&self, g: &[u32], v: usize) -> usize {
        let x = self.decode(v);
        let y: Vec<u32> =
            (0..self.n).map(|r| (0..self.n).map(|c| g[r * self.n + c] * x[c]).sum::<u32>() % self.p).collect();
        self.encode(&y)
    }

    fn add_scaled(&self, u: usize, v: usize, c: u32) -> usize {
        let (a, b) = (self.decode(u), self.decode(v));
        let s: Vec<u32> = a.iter().zip(&b).map(|(x, y)| (x + c * y) % self.p).collect();
        self.encode(&s)
    }

    fn extend(&self, images: &[Vec<usize>], members: &[bool], dim: usize, dead: &mut HashSet<Vec<bool>>) -> bool {
        if dim == self.n {
            return true;
        }
        for v in 0..self.size {
            if members[v] {
                continue;
            }
            let mut next = vec![false; self.size];
            for u in (0..self.size).filter(|&u| members[u]) {
                for c in 0..self.p {
                    next[self.add_scaled(u, v, c)] = true;
                }
            }
            if dead.contains(&next) {
                continue;
            }
            let invariant = images.iter().all(|img| (0..self.size).filter(|&w| next[w]).all(|w| next[img[w]]));
            if invariant && self.extend(images, &next, dim + 1, dead) {
                return true;
            }
            dead.insert(next);
        }
        false
    }
}

/// The `λ` with `det(xI - A) = (x - λ)^n`, if any. The characteristic
/// polynomial comes from cofactor expansion; candidates are every element
/// of a finite field, or `trace / n` in characteristic zero.
pub fn spectrum_oracle<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Option<F::Elem> {
    let n = a.rows();
    if n == 0 {
        return None;
    }
    let entries: Vec<Vec<Poly<F::Elem>>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut p = vec![field.neg(a.get(r, c))];
                    if r == c {
                        p.push(field.one());
                    }
                    p
                })
                .collect()
        })
        .collect();
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    let chi = trim(field, cofactor_det(field, &entries, &rows, &cols));
    let candidates: Vec<F::Elem> = match field.elements() {
        Some(all) => all.collect(),
        None => {
            let trace = (0..n).fold(field.zero(), |acc, i| field.add(&acc, a.get(i, i)));
            let inv_n = field.inv(&field.from_i64(n as i64)).ok()?;
            vec![field.mul(&trace, &inv_n)]
        }
    };
    candidates.into_iter().find(|lambda| {
        let linear = vec![field.neg(lambda), field.one()];
        let power = (0..n).fold(vec![field.one()], |acc, _| poly_mul(field, &acc, &linear));
        trim(field, power) == chi
    })
}

type Poly<E> = Vec<E>;

fn trim<F: Field>(field: &F, mut p: Poly<F::Elem>) -> Poly<F::Elem> {
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
    p
}

fn poly_add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    (0..a.len().max(b.len()))
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => field.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

fn poly_mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    out
}

/// Laplace expansion along the first remaining row.
fn cofactor_det<F: Field>(field: &F, m: &[Vec<Poly<F::Elem>>], rows: &[usize], cols: &[usize]) -> Poly<F::Elem> {
    if rows.is_empty() {
        return vec![field.one()];
    }
    let r = rows[0];
    let mut det = Vec::new();
    for (k, &c) in cols.iter().enumerate() {
        let minor_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = poly_mul(field, &m[r][c], &cofactor_det(field, m, &rows[1..], &minor_cols));
        let term = if k % 2 == 1 { term.iter().map(|x| field.neg(x)).collect() } else { term };
        det = poly_add(field, &det, &term);
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::MatrixRing;
    use crate::scalars::{RationalField, Ring};

    #[test]
    fn flags_over_gf2() {
        let f = PrimeField::new(2).unwrap();
        let upper = GeneratorSet::new(2, vec![f.unit_matrix(2, 0, 1), f.identity(2)]).unwrap();
        assert!(flag_enumeration_oracle(&f, &upper));
        let swap = GeneratorSet::new(2, vec![f.unit_matrix(2, 0, 1), f.unit_matrix(2, 1, 0)]).unwrap();
        assert!(!flag_enumeration_oracle(&f, &swap));
        let id = GeneratorSet::new(3, vec![f.identity(3)]).unwrap();
        assert!(flag_enumeration_oracle(&f, &id));
    }

    #[test]
    fn oracle_spectra() {
        let q = RationalField;
        let a = q.mat_add(&q.scalar_matrix(2, &q.from_i64(3)), &q.unit_matrix(2, 0, 1));
        assert_eq!(spectrum_oracle(&q, &a), Some(q.from_i64(3)));
        let d = Matrix::from_rows(vec![vec![q.one(), q.zero()], vec![q.zero(), q.from_i64(2)]]);
        assert_eq!(spectrum_oracle(&q, &d), None);
        assert_eq!(spectrum_oracle(&q, &q.unit_matrix(3, 0, 2)), Some(q.zero()));
    }

    #[test]
    fn characteristic_divides_dimension() {
        // over GF(2) the identity of size 2 has spectrum {1}; trace / n is undefined
        let f = PrimeField::new(2).unwrap();
        assert_eq!(spectrum_oracle(&f, &f.identity(2)), Some(f.one()));
    }
}
