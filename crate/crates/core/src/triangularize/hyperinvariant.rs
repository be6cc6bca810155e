//! Nontrivial invariant subspaces of nonscalar families.
//!
//! For a commutative algebra the eigenspace of a nonscalar generator works.
//! Otherwise a nonzero commutator `K0` of the algebra is nilpotent in any
//! triangularizing basis, and so is every element of the ideal it generates
//! in `A1 = A' + A A'` (or in `A` itself when the commutant is not needed);
//! the common kernel of that ideal is the subspace.

use super::engine::{nil_span_kernel, Found};
use super::witness::{Scope, Witness, WitnessKind};
use super::Branch;
use crate::closure::{
    algebra_span, commutant, first_noncommuting_pair, ideal_span, span_basis, GeneratorSet, Word, DEFAULT_CLOSURE_BOUND,
};
use crate::linalg::{kernel, MatrixRing, Spectral, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HyperinvariantError<E: std::fmt::Debug> {
    #[error("every member of the family is a central scalar")]
    FamilyIsScalar,
    #[error("dimension must exceed one")]
    DimensionTooSmall,
    #[error("family is not triangularizable: {}", .0.kind)]
    Refuted(Witness<E>),
}

/// A nonzero proper subspace invariant under `gens` and, when
/// `with_commutant`, under every matrix commuting with them.
/// `Found::Every` means every generator is a central scalar.
pub(crate) fn find_invariant<R: Spectral>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    with_commutant: bool,
    bound: usize,
) -> Result<Found<R::Elem>, Witness<R::Elem>> {
    let n = gens.dim();
    // over a noncommutative ring a failure may only mean that the inner
    // eigenvalues are not central
    let scope = if ring.center_dim() > 1 { Scope::Hypothesis } else { Scope::Triangularizability };
    let Some(first) = gens.matrices().iter().position(|g| !ring.is_scalar(g)) else {
        return Ok(Found::Every(Branch::EveryFlag));
    };
    let algebra = algebra_span(ring, gens, true);

    let Some((a, b)) = first_noncommuting_pair(ring, &algebra) else {
        let g = &gens.matrices()[first];
        let word = Some(Word::generator(first));
        let eigen = ring.central_eigenvalues(g);
        let Some(lambda) = eigen.first() else {
            let kind = if ring.has_noncentral_scalar_part(g) {
                WitnessKind::NonCentralScalar
            } else {
                WitnessKind::NoEigenvalueInField
            };
            let note = format!("generator g{} has no eigenvalue in the center", first + 1);
            return Err(Witness::element(kind, scope, g.clone(), word, note));
        };
        let shifted = ring.mat_sub(g, &ring.scalar_matrix(n, lambda));
        return Ok(Found::Split(kernel(ring, &shifted), Branch::CommutativeEigenspace));
    };

    let k0 = ring.commutator(&algebra[a], &algebra[b]);
    let a1 = if with_commutant {
        let comm = commutant(ring, n, gens.matrices());
        let mut mats = comm.clone();
        for x in &algebra {
            for c in &comm {
                mats.push(ring.mat_mul(x, c));
            }
        }
        span_basis(ring, n, &mats)
    } else {
        algebra
    };
    let ideal = ideal_span(ring, n, &a1, &k0);
    let k = nil_span_kernel(ring, n, &ideal, bound).map_err(|w| w.with_scope(scope))?;
    Ok(Found::Split(k, Branch::CommutatorIdealKernel))
}

/// A nontrivial subspace invariant under the family and its commutant.
pub fn hyperinvariant_subspace<R: Spectral>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
) -> Result<Subspace<R::Elem>, HyperinvariantError<R::Elem>> {
    if gens.dim() < 2 {
        return Err(HyperinvariantError::DimensionTooSmall);
    }
    match find_invariant(ring, gens, true, DEFAULT_CLOSURE_BOUND) {
        Ok(Found::Split(k, _)) => Ok(k),
        Ok(Found::Every(_)) => Err(HyperinvariantError::FamilyIsScalar),
        Err(w) => Err(HyperinvariantError::Refuted(w)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::scalars::RationalField;
    use crate::scalars::Ring;

    fn ints(rows: &[&[i64]]) -> Matrix<crate::scalars::Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| RationalField.from_i64(v)).collect()).collect())
    }

    fn assert_hyperinvariant(gens: &GeneratorSet<crate::scalars::Rational>, k: &Subspace<crate::scalars::Rational>) {
        let q = RationalField;
        assert!(!k.is_zero() && !k.is_full());
        for g in gens.matrices() {
            assert!(k.is_invariant(&q, g));
        }
        for c in commutant(&q, gens.dim(), gens.matrices()) {
            assert!(k.is_invariant(&q, &c));
        }
    }

    #[test]
    fn diagonal_eigenspace() {
        let q = RationalField;
        let gens = GeneratorSet::new(2, vec![ints(&[&[1, 0], &[0, 2]])]).unwrap();
        let k = hyperinvariant_subspace(&q, &gens).unwrap();
        assert_eq!(k, Subspace::coordinate(&q, 2, 1));
        assert_hyperinvariant(&gens, &k);
    }

    #[test]
    fn noncommutative_pair() {
        let q = RationalField;
        let gens = GeneratorSet::new(2, vec![q.unit_matrix(2, 0, 0), q.unit_matrix(2, 0, 1)]).unwrap();
        let k = hyperinvariant_subspace(&q, &gens).unwrap();
        assert_eq!(k, Subspace::coordinate(&q, 2, 1));
        assert_hyperinvariant(&gens, &k);
    }

    #[test]
    fn rotation_has_no_eigenvalue() {
        let q = RationalField;
        let gens = GeneratorSet::new(2, vec![ints(&[&[0, -1], &[1, 0]])]).unwrap();
        match hyperinvariant_subspace(&q, &gens) {
            Err(HyperinvariantError::Refuted(w)) => assert_eq!(w.kind, WitnessKind::NoEigenvalueInField),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn scalar_family_rejected() {
        let q = RationalField;
        let gens = GeneratorSet::new(2, vec![q.identity(2)]).unwrap();
        assert_eq!(hyperinvariant_subspace(&q, &gens), Err(HyperinvariantError::FamilyIsScalar));
    }
}
