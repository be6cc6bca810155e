//! Finite certificates of failure and their re-checking.

use std::fmt;

use crate::closure::{GeneratorSet, Word};
use crate::linalg::{kernel, Matrix, MatrixRing, Spectral, Subspace};
use crate::scalars::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// An element whose spectrum is not a single central point.
    NonSingletonSpectrum,
    /// An element of a set that must consist of nilpotents, but is not nilpotent.
    NonNilpotentIdealElement,
    /// An element with no eigenvalue in the center.
    NoEigenvalueInField,
    /// A stack of matrices whose common kernel is zero.
    EmptyFixedSpace,
    /// A subspace moved by a matrix, or a pair that should commute but does not.
    NotInvariant,
    /// A block decomposition that the matrices do not respect.
    DecompositionViolation,
    /// An element of the form `sI + N` with `s` outside the center.
    NonCentralScalar,
    /// An element of a set that must consist of unipotents, but is not unipotent.
    NonUnipotentElement,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::NonSingletonSpectrum => "NonSingletonSpectrum",
            WitnessKind::NonNilpotentIdealElement => "NonNilpotentIdealElement",
            WitnessKind::NoEigenvalueInField => "NoEigenvalueInField",
            WitnessKind::EmptyFixedSpace => "EmptyFixedSpace",
            WitnessKind::NotInvariant => "NotInvariant",
            WitnessKind::DecompositionViolation => "DecompositionViolation",
            WitnessKind::NonCentralScalar => "NonCentralScalar",
            WitnessKind::NonUnipotentElement => "NonUnipotentElement",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a witness refutes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    /// No triangularizing chain exists.
    Triangularizability,
    /// The family falls outside the hypothesis of the requested procedure;
    /// it may still be triangularizable.
    Hypothesis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload<E> {
    /// A single offending matrix. `word` is set when it is a semigroup
    /// element; algebra elements carry no word.
    Element { matrix: Matrix<E>, word: Option<Word> },
    /// Vertically stacked matrices with zero common kernel.
    StackedKernel { matrix: Matrix<E> },
    /// `matrix * vector` leaves `subspace` although `vector` lies in it.
    Escape { matrix: Matrix<E>, subspace: Subspace<E>, vector: Vec<E> },
    /// `[T_t, N_n]` is nonzero.
    Commutator { t_index: usize, n_index: usize, commutator: Matrix<E> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<E> {
    pub kind: WitnessKind,
    pub scope: Scope,
    pub payload: Payload<E>,
    /// Dimension of the subquotient the payload lives in, when that is
    /// smaller than the ambient space.
    pub block_dim: Option<usize>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecheckError {
    #[error("the payload does not fail the {0} predicate")]
    PredicateHolds(WitnessKind),
    #[error("word {0} does not evaluate to the witness matrix")]
    WordMismatch(String),
    #[error("payload shape does not match kind {0}")]
    Shape(WitnessKind),
}

impl<E: Clone + PartialEq> Witness<E> {
    pub fn element(
        kind: WitnessKind,
        scope: Scope,
        matrix: Matrix<E>,
        word: Option<Word>,
        note: impl Into<String>,
    ) -> Self {
        Witness { kind, scope, payload: Payload::Element { matrix, word }, block_dim: None, note: note.into() }
    }

    pub fn matrix(&self) -> Option<&Matrix<E>> {
        match &self.payload {
            Payload::Element { matrix, .. } | Payload::StackedKernel { matrix } | Payload::Escape { matrix, .. } => {
                Some(matrix)
            }
            Payload::Commutator { commutator, .. } => Some(commutator),
        }
    }

    pub fn word(&self) -> Option<&Word> {
        match &self.payload {
            Payload::Element { word, .. } => word.as_ref(),
            _ => None,
        }
    }

    pub fn with_scope(mut self, scope: Scope) -> Self {
        self.scope = scope;
        self
    }

    /// Re-tests the payload against the predicate named by `kind`. When the
    /// witness lives in the full space and carries a word, the word is also
    /// evaluated against `gens`.
    pub fn recheck<R>(&self, ring: &R, gens: Option<&GeneratorSet<E>>) -> Result<(), RecheckError>
    where
        R: Spectral<Elem = E>,
    {
        let kind = self.kind;
        let fails = match (&self.payload, kind) {
            (Payload::Element { matrix, word }, _) => {
                if let (Some(w), Some(g), None) = (word, gens, self.block_dim) {
                    if w.evaluate(ring, g) != *matrix {
                        return Err(RecheckError::WordMismatch(w.to_string()));
                    }
                }
                element_fails(ring, kind, matrix).ok_or(RecheckError::Shape(kind))?
            }
            (Payload::StackedKernel { matrix }, WitnessKind::EmptyFixedSpace) => kernel(ring, matrix).is_zero(),
            (
                Payload::Escape { matrix, subspace, vector },
                WitnessKind::NotInvariant | WitnessKind::DecompositionViolation,
            ) => subspace.contains(ring, vector) && !subspace.contains(ring, &ring.mat_vec(matrix, vector)),
            (Payload::Commutator { t_index, n_index, commutator }, WitnessKind::NotInvariant) => {
                // the pair itself is not stored; the caller cross-checks indices
                let _ = (t_index, n_index);
                !ring.is_zero_matrix(commutator)
            }
            _ => return Err(RecheckError::Shape(kind)),
        };
        if fails {
            Ok(())
        } else {
            Err(RecheckError::PredicateHolds(kind))
        }
    }
}

/// `Some(true)` when `m` violates the predicate of `kind`.
pub(crate) fn element_fails<R: Spectral>(ring: &R, kind: WitnessKind, m: &Matrix<R::Elem>) -> Option<bool> {
    Some(match kind {
        WitnessKind::NonSingletonSpectrum => ring.central_spectrum(m).is_none(),
        WitnessKind::NonNilpotentIdealElement => !ring.is_nilpotent(m),
        WitnessKind::NonUnipotentElement => !ring.is_unipotent(m),
        WitnessKind::NoEigenvalueInField => ring.central_eigenvalues(m).values.is_empty(),
        WitnessKind::NonCentralScalar => ring.has_noncentral_scalar_part(m) || noncentral_triangular_diagonal(ring, m),
        _ => return None,
    })
}

/// Upper triangular with some diagonal entry outside the center.
fn noncentral_triangular_diagonal<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> bool {
    let n = m.rows();
    let upper = (0..n).all(|r| (0..r).all(|c| ring.is_zero(m.get(r, c))));
    upper && (0..n).any(|i| !ring.is_central(m.get(i, i)))
}
