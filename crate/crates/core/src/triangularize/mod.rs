//! The decision engine: triangularizing chains or finite failure witnesses.

// a witness is the expected way out of most engine functions, not a rare error
#![allow(clippy::result_large_err)]

mod engine;
mod hyperinvariant;
mod irreducible;
mod tn;
mod verify;
mod witness;

use std::fmt;
use std::str::FromStr;

pub use engine::{kaplansky_chain, kolchin_chain, levitzki_chain, normalize, triangularize, triangularize_general};
pub use hyperinvariant::{hyperinvariant_subspace, HyperinvariantError};
pub use irreducible::{irreducibility_test, Irreducibility};
pub use tn::{tn_triangularize, TnError, TnFamily};
pub use verify::{verify_chain, ChainViolation};
pub use witness::{Payload, RecheckError, Scope, Witness, WitnessKind};

use crate::closure::{FamilyError, DEFAULT_CLOSURE_BOUND};
use crate::linalg::Chain;
use crate::scalars::ScalarRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Auto,
    Levitzki,
    Kolchin,
    Kaplansky,
    General,
    Tn,
    Irreducible,
}

impl Mode {
    pub const ALL: [Mode; 7] =
        [Mode::Auto, Mode::Levitzki, Mode::Kolchin, Mode::Kaplansky, Mode::General, Mode::Tn, Mode::Irreducible];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Auto => "auto",
            Mode::Levitzki => "levitzki",
            Mode::Kolchin => "kolchin",
            Mode::Kaplansky => "kaplansky",
            Mode::General => "general",
            Mode::Tn => "tn",
            Mode::Irreducible => "irreducible",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Mode::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| format!("unknown mode {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    /// Largest semigroup closure ever materialized.
    pub closure_bound: usize,
    /// Require the generated semigroup to be finite within the bound.
    pub finite: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { closure_bound: DEFAULT_CLOSURE_BOUND, finite: false }
    }
}

/// How an invariant subspace was obtained at one recursion node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Dimension at most one.
    Trivial,
    /// Every subspace is invariant (zero, identity or central scalar family).
    EveryFlag,
    /// Common kernel of nilpotent generators.
    CommonKernel,
    /// Common fixed space of unipotent generators.
    FixedSpace,
    /// Common kernel of the ideal generated by a nilpotent element.
    NilpotentIdealKernel,
    /// Common fixed space after dividing each generator by its eigenvalue.
    NormalizedFixedSpace,
    /// Eigenspace of a nonscalar element of a commutative algebra.
    CommutativeEigenspace,
    /// Common kernel of the ideal generated by a nonzero commutator.
    CommutatorIdealKernel,
    /// Every `T` is scalar: the sums `T + N` are handled as a Kaplansky family.
    TnScalarBase,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Trivial => "trivial",
            Branch::EveryFlag => "every flag invariant",
            Branch::CommonKernel => "common kernel",
            Branch::FixedSpace => "common fixed space",
            Branch::NilpotentIdealKernel => "nilpotent ideal kernel",
            Branch::NormalizedFixedSpace => "normalized fixed space",
            Branch::CommutativeEigenspace => "commutative eigenspace",
            Branch::CommutatorIdealKernel => "commutator ideal kernel",
            Branch::TnScalarBase => "scalar T base case",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One node of the recursion: the block dimension and the dimension of the
/// invariant subspace found there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProofStep {
    pub depth: usize,
    pub dim: usize,
    pub branch: Branch,
    pub found_dim: usize,
}

impl fmt::Display for ProofStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at depth {} (subspace of dimension {} in {})", self.branch, self.depth, self.found_dim, self.dim)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<E> {
    Triangularizable(Chain<E>),
    NotTriangularizable(Witness<E>),
}

impl<E> Verdict<E> {
    pub fn is_triangularizable(&self) -> bool {
        matches!(self, Verdict::Triangularizable(_))
    }

    pub fn chain(&self) -> Option<&Chain<E>> {
        match self {
            Verdict::Triangularizable(c) => Some(c),
            Verdict::NotTriangularizable(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness<E>> {
        match self {
            Verdict::Triangularizable(_) => None,
            Verdict::NotTriangularizable(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome<E> {
    pub verdict: Verdict<E>,
    /// The procedure actually run (auto resolves to one of the others).
    pub mode: Mode,
    pub steps: Vec<ProofStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("semigroup closure exceeded {bound} elements but a finite semigroup was required")]
    ClosureBoundExceeded { bound: usize },
    #[error("mode {mode} is not available over {ring}")]
    UnsupportedRing { mode: Mode, ring: ScalarRing },
    #[error("mode {0} needs a dedicated entry point")]
    UnsupportedMode(Mode),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("internal error: {0}")]
    Internal(String),
}
