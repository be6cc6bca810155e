//! Recursive chain construction shared by every procedure.
//!
//! Each node finds a nonzero invariant subspace `K` of its block, recurses
//! into the restriction to `K` and the quotient by `K`, and splices the two
//! sub-chains. A failure anywhere is a failure of the whole family, since
//! triangularizability passes to restrictions and quotients.

use super::hyperinvariant::find_invariant;
use super::verify::verify_chain;
use super::witness::{element_fails, Payload, Scope, Witness, WitnessKind};
use super::{Branch, EngineConfig, EngineError, Mode, Outcome, ProofStep, Verdict};
use crate::closure::{algebra_span, ideal_span, search_closure, semigroup_closure, GeneratorSet, Word};
use crate::linalg::{
    common_kernel, quotient, quotient_complement, restrict, Chain, Matrix, MatrixRing, Spectral, Subspace,
};
use crate::scalars::Ring;

/// A matrix predicate over the ring `R`.
type Predicate<R> = fn(&R, &Matrix<<R as Ring>::Elem>) -> bool;
/// The restriction to a subspace and the induced quotient action.
type Blocks<E> = (GeneratorSet<E>, GeneratorSet<E>);

pub(crate) enum Found<E> {
    Split(Subspace<E>, Branch),
    Every(Branch),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Strategy {
    Levitzki,
    Kolchin,
    Kaplansky,
    General,
}

pub(crate) struct Engine<'a, R: Spectral> {
    pub ring: &'a R,
    pub cfg: &'a EngineConfig,
    pub top_dim: usize,
    pub steps: Vec<ProofStep>,
}

impl<'a, R: Spectral> Engine<'a, R> {
    pub fn new(ring: &'a R, cfg: &'a EngineConfig, top_dim: usize) -> Self {
        Engine { ring, cfg, top_dim, steps: Vec::new() }
    }

    pub fn log(&mut self, depth: usize, dim: usize, branch: Branch, found_dim: usize) {
        self.steps.push(ProofStep { depth, dim, branch, found_dim });
    }

    /// Records the block size on witnesses found below the top level.
    pub fn tag(&self, mut w: Witness<R::Elem>, n: usize) -> Witness<R::Elem> {
        if n < self.top_dim && w.block_dim.is_none() {
            w.block_dim = Some(n);
        }
        w
    }

    pub fn refine(
        &mut self,
        gens: &GeneratorSet<R::Elem>,
        depth: usize,
        strategy: Strategy,
    ) -> Result<Chain<R::Elem>, Witness<R::Elem>> {
        let n = gens.dim();
        if n <= 1 {
            self.log(depth, n, Branch::Trivial, n);
            return Ok(Chain::standard(self.ring, n));
        }
        let found = self.find(strategy, gens).map_err(|w| self.tag(w, n))?;
        let (k, branch) = match found {
            Found::Every(branch) => {
                self.log(depth, n, branch, n);
                return Ok(Chain::standard(self.ring, n));
            }
            Found::Split(k, branch) => (k, branch),
        };
        self.log(depth, n, branch, k.dim());
        let (lower, upper) = self.blocks(gens, &k).map_err(|w| self.tag(w, n))?;
        let lower = self.refine(&lower, depth + 1, strategy)?;
        let upper = self.refine(&upper, depth + 1, strategy)?;
        Ok(splice(self.ring, &k, &lower, &upper))
    }

    /// Restrictions to `k` and quotients by `k` of every generator.
    pub fn blocks(
        &self,
        gens: &GeneratorSet<R::Elem>,
        k: &Subspace<R::Elem>,
    ) -> Result<Blocks<R::Elem>, Witness<R::Elem>> {
        let ring = self.ring;
        let full = Subspace::full(ring, gens.dim());
        let mut lower = Vec::with_capacity(gens.len());
        let mut upper = Vec::with_capacity(gens.len());
        for (i, g) in gens.matrices().iter().enumerate() {
            let escape = |vector: Vec<R::Elem>| Witness {
                kind: WitnessKind::DecompositionViolation,
                scope: Scope::Hypothesis,
                payload: Payload::Escape { matrix: g.clone(), subspace: k.clone(), vector },
                block_dim: None,
                note: format!("generator g{} does not preserve the split subspace", i + 1),
            };
            lower.push(restrict(ring, g, k).map_err(|e| escape(e.vector))?);
            upper.push(quotient(ring, g, k, &full).map_err(|e| escape(e.vector))?);
        }
        Ok((
            GeneratorSet::new(k.dim(), lower).expect("restricted blocks are square"),
            GeneratorSet::new(gens.dim() - k.dim(), upper).expect("quotient blocks are square"),
        ))
    }

    fn find(&self, strategy: Strategy, gens: &GeneratorSet<R::Elem>) -> Result<Found<R::Elem>, Witness<R::Elem>> {
        match strategy {
            Strategy::Levitzki => self.common_kernel_of(gens, false),
            Strategy::Kolchin => self.common_kernel_of(gens, true),
            Strategy::Kaplansky => self.kaplansky_step(gens),
            Strategy::General => find_invariant(self.ring, gens, false, self.cfg.closure_bound),
        }
    }

    /// Common kernel of the generators, or of `g - I` when `shift`.
    fn common_kernel_of(&self, gens: &GeneratorSet<R::Elem>, shift: bool) -> Result<Found<R::Elem>, Witness<R::Elem>> {
        let ring = self.ring;
        let n = gens.dim();
        let mats: Vec<_> = if shift {
            gens.matrices().iter().map(|g| ring.mat_sub(g, &ring.identity(n))).collect()
        } else {
            gens.matrices().to_vec()
        };
        let branch = if shift { Branch::FixedSpace } else { Branch::CommonKernel };
        let k = common_kernel(ring, n, &mats);
        if k.is_full() {
            return Ok(Found::Every(branch));
        }
        if !k.is_zero() {
            return Ok(Found::Split(k, branch));
        }
        // a triangularizable family of nilpotent (unipotent) generators
        // generates only nilpotent (unipotent) elements
        let (kind, pred): (WitnessKind, Predicate<R>) = if shift {
            (WitnessKind::NonUnipotentElement, |r, m| !r.is_unipotent(m))
        } else {
            (WitnessKind::NonNilpotentIdealElement, |r, m| !r.is_nilpotent(m))
        };
        if let Some((m, w)) = search_closure(ring, gens, self.cfg.closure_bound, |m| pred(ring, m)) {
            return Err(Witness::element(kind, Scope::Triangularizability, m, Some(w), "product of generators"));
        }
        Err(stacked(ring, n, &mats, "generators have no common nonzero kernel vector"))
    }

    fn kaplansky_step(&self, gens: &GeneratorSet<R::Elem>) -> Result<Found<R::Elem>, Witness<R::Elem>> {
        let ring = self.ring;
        let n = gens.dim();
        let mut spectra = Vec::with_capacity(gens.len());
        for (i, g) in gens.matrices().iter().enumerate() {
            match ring.central_spectrum(g) {
                Some(l) => spectra.push(l),
                None => return Err(spectrum_failure(ring, g.clone(), Some(Word::generator(i)), Scope::Hypothesis)),
            }
        }
        let nilpotent = gens.matrices().iter().zip(&spectra).find(|(g, l)| ring.is_zero(l) && !ring.is_zero_matrix(g));
        if let Some((z, _)) = nilpotent {
            let algebra = algebra_span(ring, gens, true);
            let ideal = ideal_span(ring, n, &algebra, z);
            let k = nil_span_kernel(ring, n, &ideal, self.cfg.closure_bound)?;
            return Ok(Found::Split(k, Branch::NilpotentIdealKernel));
        }
        // zero generators preserve every subspace and drop out
        let normalized: Vec<_> = gens
            .matrices()
            .iter()
            .zip(&spectra)
            .filter(|(_, l)| !ring.is_zero(l))
            .map(|(g, l)| {
                let shifted = ring.scale_right(g, &ring.inv(l).expect("nonzero eigenvalue"));
                ring.mat_sub(&shifted, &ring.identity(n))
            })
            .collect();
        let k = common_kernel(ring, n, &normalized);
        if k.is_full() {
            return Ok(Found::Every(Branch::NormalizedFixedSpace));
        }
        if !k.is_zero() {
            return Ok(Found::Split(k, Branch::NormalizedFixedSpace));
        }
        let hit = search_closure(ring, gens, self.cfg.closure_bound, |m| ring.central_spectrum(m).is_none());
        if let Some((m, w)) = hit {
            return Err(spectrum_failure(ring, m, Some(w), Scope::Triangularizability));
        }
        Err(stacked(ring, n, &normalized, "normalized generators have no common fixed vector"))
    }
}

/// Witness for an element without a central singleton spectrum.
pub(crate) fn spectrum_failure<R: Spectral>(
    ring: &R,
    m: Matrix<R::Elem>,
    word: Option<Word>,
    scope: Scope,
) -> Witness<R::Elem> {
    let kind = if ring.has_noncentral_scalar_part(&m) {
        WitnessKind::NonCentralScalar
    } else {
        WitnessKind::NonSingletonSpectrum
    };
    let note = match &word {
        Some(w) => format!("element {w}"),
        None => String::new(),
    };
    Witness::element(kind, scope, m, word, note)
}

pub(crate) fn stacked<R: Ring>(ring: &R, n: usize, mats: &[Matrix<R::Elem>], note: &str) -> Witness<R::Elem> {
    let _ = ring;
    Witness {
        kind: WitnessKind::EmptyFixedSpace,
        scope: Scope::Triangularizability,
        payload: Payload::StackedKernel { matrix: Matrix::vstack(n, mats) },
        block_dim: None,
        note: note.to_string(),
    }
}

/// Common kernel of a span that must consist of nilpotents, which is then
/// nonzero. A non-nilpotent basis element or product of basis elements
/// refutes the premise.
pub(crate) fn nil_span_kernel<R: Spectral>(
    ring: &R,
    n: usize,
    basis: &[Matrix<R::Elem>],
    bound: usize,
) -> Result<Subspace<R::Elem>, Witness<R::Elem>> {
    let fail = |m: Matrix<R::Elem>, note: String| {
        Witness::element(WitnessKind::NonNilpotentIdealElement, Scope::Triangularizability, m, None, note)
    };
    if let Some(b) = basis.iter().find(|b| !ring.is_nilpotent(b)) {
        return Err(fail(b.clone(), "element of the ideal span".into()));
    }
    let k = common_kernel(ring, n, basis);
    if !k.is_zero() {
        return Ok(k);
    }
    let as_gens = GeneratorSet::new(n, basis.to_vec()).expect("nonempty square basis");
    if let Some((m, w)) = search_closure(ring, &as_gens, bound, |m| !ring.is_nilpotent(m)) {
        return Err(fail(m, format!("product {w} of ideal span basis elements")));
    }
    Err(stacked(ring, n, basis, "ideal span has no common nonzero kernel vector"))
}

/// Chain through `k`: `lower` lives in `k`'s canonical coordinates, `upper`
/// in the coordinates of the quotient complement.
pub(crate) fn splice<R: Ring>(
    ring: &R,
    k: &Subspace<R::Elem>,
    lower: &Chain<R::Elem>,
    upper: &Chain<R::Elem>,
) -> Chain<R::Elem> {
    let n = k.ambient_dim();
    let basis = k.basis_matrix();
    let comp = Matrix::from_columns(n, &quotient_complement(ring, k, &Subspace::full(ring, n)));
    let mut subspaces: Vec<_> = lower.subspaces().iter().map(|v| v.image(ring, &basis)).collect();
    for v in &upper.subspaces()[1..] {
        subspaces.push(k.sum(ring, &v.image(ring, &comp)));
    }
    Chain::new(ring, subspaces).expect("spliced chain is a complete flag")
}

/// Lifts an element witness found in a block back to the full space when
/// its word still fails the same predicate there.
pub(crate) fn lift<R: Spectral>(ring: &R, gens: &GeneratorSet<R::Elem>, mut w: Witness<R::Elem>) -> Witness<R::Elem> {
    if w.block_dim.is_none() {
        return w;
    }
    if let Payload::Element { matrix, word: Some(word) } = &mut w.payload {
        let full = word.evaluate(ring, gens);
        if element_fails(ring, w.kind, &full) == Some(true) {
            *matrix = full;
            w.block_dim = None;
        }
    }
    w
}

pub(crate) fn require_finite<R: Ring>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    cfg: &EngineConfig,
) -> Result<(), EngineError> {
    if cfg.finite && !semigroup_closure(ring, gens, cfg.closure_bound).complete {
        return Err(EngineError::ClosureBoundExceeded { bound: cfg.closure_bound });
    }
    Ok(())
}

pub(crate) fn finish<R: Spectral>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    mode: Mode,
    steps: Vec<ProofStep>,
    result: Result<Chain<R::Elem>, Witness<R::Elem>>,
) -> Result<Outcome<R::Elem>, EngineError> {
    let verdict = match result {
        Ok(chain) => {
            if let Err(v) = verify_chain(ring, gens, &chain) {
                return Err(EngineError::Internal(format!("constructed chain fails: {v}")));
            }
            Verdict::Triangularizable(chain)
        }
        Err(w) => Verdict::NotTriangularizable(lift(ring, gens, w)),
    };
    Ok(Outcome { verdict, mode, steps })
}

fn run<R: Spectral>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    cfg: &EngineConfig,
    mode: Mode,
) -> Result<Outcome<R::Elem>, EngineError> {
    let strategy = match mode {
        Mode::Levitzki => Strategy::Levitzki,
        Mode::Kolchin => Strategy::Kolchin,
        Mode::Kaplansky => Strategy::Kaplansky,
        Mode::General => {
            if ring.center_dim() > 1 {
                return Err(EngineError::UnsupportedRing { mode, ring: ring.descriptor() });
            }
            Strategy::General
        }
        Mode::Auto => return run(ring, gens, cfg, resolve_auto(ring, gens)),
        Mode::Tn | Mode::Irreducible => return Err(EngineError::UnsupportedMode(mode)),
    };
    require_finite(ring, gens, cfg)?;
    let mut engine = Engine::new(ring, cfg, gens.dim());
    let result = if gens.dim() <= 1 {
        engine.refine(gens, 0, strategy)
    } else {
        match hypothesis_failure(ring, gens, strategy) {
            Some(w) => Err(w),
            None => engine.refine(gens, 0, strategy),
        }
    };
    let steps = std::mem::take(&mut engine.steps);
    finish(ring, gens, mode, steps, result)
}

/// Generator-level hypotheses of the Levitzki and Kolchin procedures.
fn hypothesis_failure<R: Spectral>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    strategy: Strategy,
) -> Option<Witness<R::Elem>> {
    let (kind, pred): (WitnessKind, Predicate<R>) = match strategy {
        Strategy::Levitzki => (WitnessKind::NonNilpotentIdealElement, |r, m| r.is_nilpotent(m)),
        Strategy::Kolchin => (WitnessKind::NonUnipotentElement, |r, m| r.is_unipotent(m)),
        _ => return None,
    };
    let (i, g) = gens.matrices().iter().enumerate().find(|(_, g)| !pred(ring, g))?;
    Some(Witness::element(
        kind,
        Scope::Hypothesis,
        g.clone(),
        Some(Word::generator(i)),
        format!("generator g{}", i + 1),
    ))
}

/// Most specific procedure whose generator-level hypothesis holds.
fn resolve_auto<R: Spectral>(ring: &R, gens: &GeneratorSet<R::Elem>) -> Mode {
    let all = |p: &dyn Fn(&Matrix<R::Elem>) -> bool| gens.matrices().iter().all(p);
    if all(&|g| ring.is_nilpotent(g)) {
        Mode::Levitzki
    } else if all(&|g| ring.is_unipotent(g)) {
        Mode::Kolchin
    } else if ring.center_dim() > 1 || all(&|g| ring.central_spectrum(g).is_some()) {
        Mode::Kaplansky
    } else {
        Mode::General
    }
}

/// Common kernel recursion for families of nilpotent generators.
pub fn levitzki_chain<R: Spectral>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    cfg: &EngineConfig,
) -> Result<Outcome<R::Elem>, EngineError> {
    run(ring, gens, cfg, Mode::Levitzki)
}

/// Fixed space recursion for families of unipotent generators.
pub fn kolchin_chain<R: Spectral>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    cfg: &EngineConfig,
) -> Result<Outcome<R::Elem>, EngineError> {
    run(ring, gens, cfg, Mode::Kolchin)
}

/// Families whose generators are `cI + N` with central `c`: either the
/// kernel of the ideal generated by a nilpotent generator, or the fixed
/// space of the generators divided by their eigenvalues.
pub fn kaplansky_chain<R: Spectral>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    cfg: &EngineConfig,
) -> Result<Outcome<R::Elem>, EngineError> {
    run(ring, gens, cfg, Mode::Kaplansky)
}

/// Complete decision procedure over fields.
pub fn triangularize_general<R: Spectral>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    cfg: &EngineConfig,
) -> Result<Outcome<R::Elem>, EngineError> {
    run(ring, gens, cfg, Mode::General)
}

/// Dispatches on `mode`; `auto` picks the most specific applicable procedure.
pub fn triangularize<R: Spectral>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    mode: Mode,
    cfg: &EngineConfig,
) -> Result<Outcome<R::Elem>, EngineError> {
    run(ring, gens, cfg, mode)
}

/// `g / c` for `g` with central singleton spectrum `{c}`, `c != 0`.
pub fn normalize<R: Spectral>(ring: &R, g: &Matrix<R::Elem>) -> Option<Matrix<R::Elem>> {
    let c = ring.central_spectrum(g)?;
    let inv = ring.inv(&c).ok()?;
    Some(ring.scale_right(g, &inv))
}
