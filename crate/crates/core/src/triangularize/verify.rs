use std::fmt;

use crate::closure::GeneratorSet;
use crate::linalg::{Chain, Matrix};
use crate::scalars::Ring;

/// Generator `generator` moves `vector` out of subspace `index` of the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainViolation<E> {
    pub generator: usize,
    pub index: usize,
    pub vector: Vec<E>,
}

impl<E> fmt::Display for ChainViolation<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generator g{} does not preserve subspace {} of the chain", self.generator + 1, self.index)
    }
}

/// Checks `g V_j ⊆ V_j` for every generator and every subspace. Invariance
/// under the generators gives invariance under every product.
pub fn verify_chain<R: Ring>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    chain: &Chain<R::Elem>,
) -> Result<(), ChainViolation<R::Elem>> {
    assert_eq!(chain.dim(), gens.dim(), "chain and family dimensions differ");
    for (index, v) in chain.subspaces().iter().enumerate() {
        for (generator, g) in gens.matrices().iter().enumerate() {
            check(ring, g, v).map_err(|vector| ChainViolation { generator, index, vector })?;
        }
    }
    Ok(())
}

fn check<R: Ring>(ring: &R, g: &Matrix<R::Elem>, v: &crate::linalg::Subspace<R::Elem>) -> Result<(), Vec<R::Elem>> {
    v.check_invariant(ring, g).map_err(|e| e.vector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::MatrixRing;
    use crate::scalars::RationalField;

    #[test]
    fn standard_flag_checks() {
        let q = RationalField;
        let upper = GeneratorSet::new(2, vec![q.unit_matrix(2, 0, 1), q.identity(2)]).unwrap();
        assert!(verify_chain(&q, &upper, &Chain::standard(&q, 2)).is_ok());
        let lower = GeneratorSet::new(2, vec![q.unit_matrix(2, 1, 0)]).unwrap();
        let err = verify_chain(&q, &lower, &Chain::standard(&q, 2)).unwrap_err();
        assert_eq!((err.generator, err.index), (0, 1));
    }
}
