//! Families `T_i + N_i` with `{T_i}` triangularizable and each `N_i`
//! nilpotent and commuting with every `T_j`.
//!
//! When every `T_i` is a central scalar the sums form a Kaplansky family.
//! Otherwise a subspace invariant under the `T_i` and their commutant is
//! invariant under every `N_i` too, and both diagonal blocks are again of
//! the same shape.

use super::engine::{finish, require_finite, splice, Engine, Found, Strategy};
use super::hyperinvariant::find_invariant;
use super::witness::{Payload, Scope, Witness, WitnessKind};
use super::{Branch, EngineConfig, EngineError, Mode, Outcome};
use crate::closure::{FamilyError, GeneratorSet};
use crate::linalg::{inverse, Chain, Matrix, MatrixRing, Spectral};
use crate::scalars::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TnFamily<E> {
    n: usize,
    t: Vec<Matrix<E>>,
    nil: Vec<Matrix<E>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TnError<E: std::fmt::Debug> {
    #[error(transparent)]
    Shape(#[from] FamilyError),
    #[error("pair violates the T + N hypothesis: {}", .0.kind)]
    Rejected(Witness<E>),
}

impl<E: Clone + PartialEq + std::fmt::Debug> TnFamily<E> {
    /// Checks that every `N_i` is nilpotent and commutes with every `T_j`.
    pub fn new<R: Spectral<Elem = E>>(
        ring: &R,
        n: usize,
        pairs: Vec<(Matrix<E>, Matrix<E>)>,
    ) -> Result<Self, TnError<E>> {
        let (t, nil): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        GeneratorSet::new(n, t.clone())?;
        GeneratorSet::new(n, nil.clone())?;
        for (i, m) in nil.iter().enumerate() {
            if !ring.is_nilpotent(m) {
                return Err(TnError::Rejected(Witness::element(
                    WitnessKind::NonNilpotentIdealElement,
                    Scope::Hypothesis,
                    m.clone(),
                    None,
                    format!("N{} is not nilpotent", i + 1),
                )));
            }
        }
        for (i, m) in nil.iter().enumerate() {
            for (j, tj) in t.iter().enumerate() {
                let c = ring.commutator(tj, m);
                if !ring.is_zero_matrix(&c) {
                    return Err(TnError::Rejected(Witness {
                        kind: WitnessKind::NotInvariant,
                        scope: Scope::Hypothesis,
                        payload: Payload::Commutator { t_index: j, n_index: i, commutator: c },
                        block_dim: None,
                        note: format!("T{} N{} - N{} T{} is nonzero", j + 1, i + 1, i + 1, j + 1),
                    }));
                }
            }
        }
        Ok(TnFamily { n, t, nil })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn t_set(&self) -> &[Matrix<E>] {
        &self.t
    }

    pub fn n_set(&self) -> &[Matrix<E>] {
        &self.nil
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Matrix<E>, &Matrix<E>)> {
        self.t.iter().zip(&self.nil)
    }

    /// The sums `T_i + N_i`.
    pub fn generators<R: Ring<Elem = E>>(&self, ring: &R) -> GeneratorSet<E> {
        let sums = self.pairs().map(|(t, m)| ring.mat_add(t, m)).collect();
        GeneratorSet::new(self.n, sums).expect("validated at construction")
    }
}

pub fn tn_triangularize<R: Spectral>(
    ring: &R,
    fam: &TnFamily<R::Elem>,
    cfg: &EngineConfig,
) -> Result<Outcome<R::Elem>, EngineError> {
    let gens = fam.generators(ring);
    require_finite(ring, &gens, cfg)?;
    let t = GeneratorSet::new(fam.dim(), fam.t.clone())?;
    let nil = GeneratorSet::new(fam.dim(), fam.nil.clone())?;
    let mut engine = Engine::new(ring, cfg, fam.dim());
    let mut result = tn_refine(&mut engine, &t, &nil, 0);
    if let Ok(chain) = &result {
        if let Some(w) = noncentral_diagonal(ring, &t, chain) {
            result = Err(w);
        }
    }
    let steps = std::mem::take(&mut engine.steps);
    finish(ring, &gens, Mode::Tn, steps, result)
}

fn tn_refine<R: Spectral>(
    engine: &mut Engine<'_, R>,
    t: &GeneratorSet<R::Elem>,
    nil: &GeneratorSet<R::Elem>,
    depth: usize,
) -> Result<Chain<R::Elem>, Witness<R::Elem>> {
    let ring = engine.ring;
    let n = t.dim();
    if n <= 1 {
        engine.log(depth, n, Branch::Trivial, n);
        return Ok(Chain::standard(ring, n));
    }
    let sums = GeneratorSet::new(n, t.matrices().iter().zip(nil.matrices()).map(|(a, b)| ring.mat_add(a, b)).collect())
        .expect("blocks are square");
    let found = find_invariant(ring, t, true, engine.cfg.closure_bound)
        .map_err(|w| engine.tag(w.with_scope(Scope::Hypothesis), n))?;
    let k = match found {
        Found::Every(_) => {
            engine.log(depth, n, Branch::TnScalarBase, n);
            return engine.refine(&sums, depth, Strategy::Kaplansky);
        }
        Found::Split(k, branch) => {
            engine.log(depth, n, branch, k.dim());
            k
        }
    };
    let (t_lo, t_hi) = engine.blocks(t, &k).map_err(|w| engine.tag(w, n))?;
    let (n_lo, n_hi) = engine.blocks(nil, &k).map_err(|w| engine.tag(w, n))?;
    let lower = tn_refine(engine, &t_lo, &n_lo, depth + 1)?;
    let upper = tn_refine(engine, &t_hi, &n_hi, depth + 1)?;
    Ok(splice(ring, &k, &lower, &upper))
}

/// Over a noncommutative ring the `T_i` must have central diagonal entries
/// in the basis adapted to the chain.
fn noncentral_diagonal<R: Spectral>(
    ring: &R,
    t: &GeneratorSet<R::Elem>,
    chain: &Chain<R::Elem>,
) -> Option<Witness<R::Elem>> {
    if ring.center_dim() == 1 {
        return None;
    }
    let p = chain.adapted_basis(ring);
    let p_inv = inverse(ring, &p).expect("adapted basis is invertible");
    for (i, g) in t.matrices().iter().enumerate() {
        let m = ring.mat_mul(&p_inv, &ring.mat_mul(g, &p));
        let n = m.rows();
        let upper = (0..n).all(|r| (0..r).all(|c| ring.is_zero(m.get(r, c))));
        if !upper {
            return Some(Witness {
                kind: WitnessKind::DecompositionViolation,
                scope: Scope::Hypothesis,
                payload: Payload::Escape {
                    matrix: g.clone(),
                    subspace: chain.subspaces()[1].clone(),
                    vector: p.column(0),
                },
                block_dim: None,
                note: format!("T{} is not triangular along the chain", i + 1),
            });
        }
        if (0..n).any(|d| !ring.is_central(m.get(d, d))) {
            return Some(Witness::element(
                WitnessKind::NonCentralScalar,
                Scope::Hypothesis,
                m,
                None,
                format!("T{} in the chain basis has a diagonal entry outside the center", i + 1),
            ));
        }
    }
    None
}
