//! Seeded random families with known answers, and brute-force oracles.
//!
//! Every triangularizable instance is built upper triangular in a hidden
//! basis and then conjugated by a product of elementary matrices `P`, so
//! `P` applied to the standard flag is a certificate chain.

mod oracle;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::closure::{matrix_coords, GeneratorSet};
use crate::linalg::{null_space_vectors, Chain, Matrix, MatrixRing, Spectral};
use crate::scalars::{PrimeField, Quaternion, QuaternionRing, Rational, RationalField, Ring, ScalarRing};
use crate::triangularize::{verify_chain, TnFamily};

pub use oracle::{flag_enumeration_oracle, spectrum_oracle};

/// Numerator and denominator bound for random entries.
pub const ENTRY_HEIGHT: i64 = 10;
/// Bound for the multipliers in elementary conjugators.
pub const CONJUGATOR_HEIGHT: i64 = 2;
/// Attempts at finding a commuting nilpotent part before giving up.
pub const TN_RETRIES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecipeKind {
    Nilpotent,
    Unipotent,
    KaplanskyField,
    KaplanskyQuaternion,
    TnFamilyRecipe,
    IrreduciblePair,
    General,
}

impl RecipeKind {
    pub const ALL: [RecipeKind; 7] = [
        RecipeKind::Nilpotent,
        RecipeKind::Unipotent,
        RecipeKind::KaplanskyField,
        RecipeKind::KaplanskyQuaternion,
        RecipeKind::TnFamilyRecipe,
        RecipeKind::IrreduciblePair,
        RecipeKind::General,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RecipeKind::Nilpotent => "nilpotent",
            RecipeKind::Unipotent => "unipotent",
            RecipeKind::KaplanskyField => "kaplansky-field",
            RecipeKind::KaplanskyQuaternion => "kaplansky-quaternion",
            RecipeKind::TnFamilyRecipe => "tn",
            RecipeKind::IrreduciblePair => "irreducible-pair",
            RecipeKind::General => "general",
        }
    }
}

impl fmt::Display for RecipeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RecipeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RecipeKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown recipe kind {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InstanceRecipe {
    pub kind: RecipeKind,
    pub n: usize,
    pub ring: ScalarRing,
    pub seed: u64,
    pub num_generators: usize,
}

impl InstanceRecipe {
    pub fn new(kind: RecipeKind, n: usize, ring: ScalarRing, seed: u64, num_generators: usize) -> Self {
        InstanceRecipe { kind, n, ring, seed, num_generators }
    }

    /// Whether the generated family is triangularizable.
    pub fn expected_triangularizable(&self) -> bool {
        self.kind != RecipeKind::IrreduciblePair || self.n < 2
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecipeError {
    #[error("recipe asks for {expected} but the ring is {found}")]
    RingMismatch { expected: ScalarRing, found: ScalarRing },
    #[error("no nonzero commuting nilpotent part after {attempts} attempts")]
    RetriesExhausted { attempts: usize },
    #[error("recipe needs {0}")]
    Unsupported(&'static str),
    #[error("hidden chain failed verification")]
    CertificateRejected,
}

/// A generated family with its hidden chain, when it has one.
#[derive(Debug, Clone)]
pub struct Instance<E> {
    pub recipe: InstanceRecipe,
    pub generators: GeneratorSet<E>,
    pub certificate: Option<Chain<E>>,
}

#[derive(Debug, Clone)]
pub struct TnInstance<E> {
    pub recipe: InstanceRecipe,
    pub family: TnFamily<E>,
    pub certificate: Chain<E>,
    /// Draws of the `T` set until a commuting nilpotent part existed.
    pub attempts: usize,
}

/// Rings that can draw random elements.
pub trait Sample: Spectral {
    /// An element whose components have height at most `height`.
    fn sample(&self, rng: &mut ChaCha8Rng, height: i64) -> Self::Elem;

    fn sample_central(&self, rng: &mut ChaCha8Rng, height: i64) -> Self::Elem;

    fn sample_nonzero(&self, rng: &mut ChaCha8Rng, height: i64) -> Self::Elem {
        loop {
            let x = self.sample(rng, height);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    fn sample_central_nonzero(&self, rng: &mut ChaCha8Rng, height: i64) -> Self::Elem {
        loop {
            let x = self.sample_central(rng, height);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

fn sample_rational(rng: &mut ChaCha8Rng, height: i64) -> Rational {
    let num = rng.gen_range(-height..=height);
    let den = rng.gen_range(1..=height);
    Rational::new(num.into(), den.into())
}

impl Sample for RationalField {
    fn sample(&self, rng: &mut ChaCha8Rng, height: i64) -> Rational {
        sample_rational(rng, height)
    }

    fn sample_central(&self, rng: &mut ChaCha8Rng, height: i64) -> Rational {
        sample_rational(rng, height)
    }
}

impl Sample for PrimeField {
    fn sample(&self, rng: &mut ChaCha8Rng, _height: i64) -> Self::Elem {
        self.elem(rng.gen_range(0..self.modulus()))
    }

    fn sample_central(&self, rng: &mut ChaCha8Rng, height: i64) -> Self::Elem {
        self.sample(rng, height)
    }
}

impl Sample for QuaternionRing {
    fn sample(&self, rng: &mut ChaCha8Rng, height: i64) -> Quaternion {
        let mut part = || {
            if rng.gen_bool(0.5) {
                sample_rational(rng, height)
            } else {
                Rational::from_integer(0.into())
            }
        };
        Quaternion::new(part(), part(), part(), part())
    }

    fn sample_central(&self, rng: &mut ChaCha8Rng, height: i64) -> Quaternion {
        Quaternion::from_rational(sample_rational(rng, height))
    }
}

/// Entries drawn independently, each zero with probability one half.
pub fn random_matrix<R: Sample>(ring: &R, rng: &mut ChaCha8Rng, n: usize, height: i64) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |_, _| if rng.gen_bool(0.5) { ring.zero() } else { ring.sample(rng, height) })
}

/// Strictly upper triangular with random entries.
pub fn random_strictly_upper<R: Sample>(ring: &R, rng: &mut ChaCha8Rng, n: usize, height: i64) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |r, c| if r < c { ring.sample(rng, height) } else { ring.zero() })
}

/// A product of random elementary matrices and its inverse.
pub fn random_conjugator<R: Sample>(ring: &R, rng: &mut ChaCha8Rng, n: usize) -> (Matrix<R::Elem>, Matrix<R::Elem>) {
    let mut p = ring.identity(n);
    let mut p_inv = ring.identity(n);
    if n < 2 {
        let u = ring.sample_nonzero(rng, CONJUGATOR_HEIGHT);
        let u_inv = ring.inv(&u).expect("nonzero");
        return (ring.scalar_matrix(n, &u), ring.scalar_matrix(n, &u_inv));
    }
    for _ in 0..2 * n + 2 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = ring.sample_nonzero(rng, CONJUGATOR_HEIGHT);
        let mut e = ring.identity(n);
        e.set(i, j, c.clone());
        let mut e_inv = ring.identity(n);
        e_inv.set(i, j, ring.neg(&c));
        p = ring.mat_mul(&p, &e);
        p_inv = ring.mat_mul(&e_inv, &p_inv);
    }
    let i = rng.gen_range(0..n);
    let u = ring.sample_nonzero(rng, CONJUGATOR_HEIGHT);
    let mut d = ring.identity(n);
    d.set(i, i, u.clone());
    let mut d_inv = ring.identity(n);
    d_inv.set(i, i, ring.inv(&u).expect("nonzero"));
    (ring.mat_mul(&p, &d), ring.mat_mul(&d_inv, &p_inv))
}

fn conjugate<R: Ring>(ring: &R, p: &Matrix<R::Elem>, p_inv: &Matrix<R::Elem>, g: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    ring.mat_mul(&ring.mat_mul(p, g), p_inv)
}

fn check_ring<R: Ring>(ring: &R, recipe: &InstanceRecipe) -> Result<(), RecipeError> {
    if ring.descriptor() != recipe.ring {
        return Err(RecipeError::RingMismatch { expected: recipe.ring, found: ring.descriptor() });
    }
    Ok(())
}

/// Builds the recipe's family upper triangular in a hidden basis, with the
/// diagonal fixed by the kind, and conjugates it.
pub fn gen_conjugated_flag_family<R: Sample>(
    ring: &R,
    recipe: &InstanceRecipe,
) -> Result<Instance<R::Elem>, RecipeError> {
    check_ring(ring, recipe)?;
    if recipe.kind == RecipeKind::TnFamilyRecipe {
        let tn = gen_tn_family(ring, recipe)?;
        return Ok(Instance {
            recipe: *recipe,
            generators: tn.family.generators(ring),
            certificate: Some(tn.certificate),
        });
    }
    let n = recipe.n;
    let mut rng = recipe.rng();
    let hidden: Vec<_> = (0..recipe.num_generators.max(1))
        .map(|index| hidden_generator(ring, &mut rng, recipe.kind, n, index))
        .collect();
    let (p, p_inv) = random_conjugator(ring, &mut rng, n);
    let mats = hidden.iter().map(|g| conjugate(ring, &p, &p_inv, g)).collect();
    let generators = GeneratorSet::new(n, mats).expect("square by construction");
    let certificate = if recipe.kind == RecipeKind::IrreduciblePair {
        None
    } else {
        let chain = Chain::standard(ring, n).transport(ring, &p);
        verify_chain(ring, &generators, &chain).map_err(|_| RecipeError::CertificateRejected)?;
        Some(chain)
    };
    Ok(Instance { recipe: *recipe, generators, certificate })
}

fn hidden_generator<R: Sample>(
    ring: &R,
    rng: &mut ChaCha8Rng,
    kind: RecipeKind,
    n: usize,
    index: usize,
) -> Matrix<R::Elem> {
    let upper = random_strictly_upper(ring, rng, n, ENTRY_HEIGHT);
    let diagonal = |ring: &R, c: R::Elem| ring.mat_add(&ring.scalar_matrix(n, &c), &upper);
    match kind {
        RecipeKind::Nilpotent => upper.clone(),
        RecipeKind::Unipotent => diagonal(ring, ring.one()),
        RecipeKind::KaplanskyField | RecipeKind::KaplanskyQuaternion | RecipeKind::TnFamilyRecipe => {
            let c = ring.sample_central(rng, ENTRY_HEIGHT);
            diagonal(ring, c)
        }
        RecipeKind::General => {
            let mut g = upper.clone();
            for i in 0..n {
                g.set(i, i, ring.sample(rng, ENTRY_HEIGHT));
            }
            g
        }
        RecipeKind::IrreduciblePair => match index {
            0 | 1 => {
                let c = ring.sample_central_nonzero(rng, ENTRY_HEIGHT);
                Matrix::from_fn(n, n, |r, col| {
                    let on = if index == 0 { col == r + 1 } else { r == col + 1 };
                    if on {
                        c.clone()
                    } else {
                        ring.zero()
                    }
                })
            }
            _ => random_matrix(ring, rng, n, ENTRY_HEIGHT),
        },
    }
}

/// Draws upper triangular `T_i` and strictly upper `N_i` commuting with all
/// of them, then conjugates the pairs.
pub fn gen_tn_family<R: Sample>(ring: &R, recipe: &InstanceRecipe) -> Result<TnInstance<R::Elem>, RecipeError> {
    check_ring(ring, recipe)?;
    let n = recipe.n;
    let mut rng = recipe.rng();
    let (t, nil, attempts) = hidden_tn(ring, &mut rng, n, recipe.num_generators.max(1))?;
    let (p, p_inv) = random_conjugator(ring, &mut rng, n);
    let pairs =
        t.iter().zip(&nil).map(|(a, b)| (conjugate(ring, &p, &p_inv, a), conjugate(ring, &p, &p_inv, b))).collect();
    let family = TnFamily::new(ring, n, pairs).map_err(|_| RecipeError::CertificateRejected)?;
    let certificate = Chain::standard(ring, n).transport(ring, &p);
    let t_set = GeneratorSet::new(n, family.t_set().to_vec()).expect("square");
    verify_chain(ring, &family.generators(ring), &certificate).map_err(|_| RecipeError::CertificateRejected)?;
    verify_chain(ring, &t_set, &certificate).map_err(|_| RecipeError::CertificateRejected)?;
    Ok(TnInstance { recipe: *recipe, family, certificate, attempts })
}

type Pairs<E> = (Vec<Matrix<E>>, Vec<Matrix<E>>, usize);

fn hidden_tn<R: Sample>(ring: &R, rng: &mut ChaCha8Rng, n: usize, count: usize) -> Result<Pairs<R::Elem>, RecipeError> {
    for attempt in 1..=TN_RETRIES {
        // a small pool of diagonal values makes commuting parts likely
        let pool = [ring.sample_central(rng, ENTRY_HEIGHT), ring.sample_central(rng, ENTRY_HEIGHT)];
        let t: Vec<_> = (0..count)
            .map(|_| {
                Matrix::from_fn(n, n, |r, c| {
                    if r == c {
                        pool[rng.gen_range(0..2)].clone()
                    } else if r < c && rng.gen_bool(0.5) {
                        ring.sample(rng, ENTRY_HEIGHT)
                    } else {
                        ring.zero()
                    }
                })
            })
            .collect();
        let basis = commuting_strictly_upper(ring, n, &t);
        if basis.is_empty() {
            continue;
        }
        let nil = (0..count).map(|_| combination(ring, rng, n, &basis)).collect();
        return Ok((t, nil, attempt));
    }
    Err(RecipeError::RetriesExhausted { attempts: TN_RETRIES })
}

/// A basis over the center of the strictly upper `N` with `[T, N] = 0` for
/// every `T`: the kernel of the stacked Sylvester maps.
pub fn commuting_strictly_upper<R: Ring>(ring: &R, n: usize, t: &[Matrix<R::Elem>]) -> Vec<Matrix<R::Elem>> {
    let center = ring.center();
    let d = ring.center_dim();
    let mut unknowns = Vec::new();
    for r in 0..n {
        for c in r + 1..n {
            for k in 0..d {
                let coords: Vec<_> = (0..d).map(|i| if i == k { center.one() } else { center.zero() }).collect();
                let mut m = ring.zeros(n, n);
                m.set(r, c, ring.from_center_coords(&coords));
                unknowns.push(m);
            }
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    let columns: Vec<Vec<_>> = unknowns
        .iter()
        .map(|b| t.iter().flat_map(|ti| matrix_coords(ring, &ring.commutator(ti, b))).collect())
        .collect();
    let rows = columns[0].len();
    let system = Matrix::from_fn(rows, columns.len(), |r, c| columns[c][r].clone());
    null_space_vectors(&center, &system)
        .into_iter()
        .map(|x| {
            unknowns.iter().zip(&x).fold(ring.zeros(n, n), |acc, (b, coef)| {
                ring.mat_add(&acc, &ring.scale_left(&ring.embed_center(coef), b))
            })
        })
        .collect()
}

fn combination<R: Sample>(ring: &R, rng: &mut ChaCha8Rng, n: usize, basis: &[Matrix<R::Elem>]) -> Matrix<R::Elem> {
    for _ in 0..8 {
        let m = basis.iter().fold(ring.zeros(n, n), |acc, b| {
            let c = ring.sample_central(rng, 3);
            ring.mat_add(&acc, &ring.scale_left(&c, b))
        });
        if !ring.is_zero_matrix(&m) {
            return m;
        }
    }
    basis[0].clone()
}

/// One `(T_i, N_i)`.
pub type TnPair<E> = (Matrix<E>, Matrix<E>);

/// A T + N recipe with one `N_i` replaced by a conjugated strictly upper
/// matrix that fails to commute with some `T_j`. Returns the raw pairs, which `TnFamily::new`
/// must reject.
pub fn gen_corrupted_tn_pairs<R: Sample>(
    ring: &R,
    recipe: &InstanceRecipe,
) -> Result<Vec<TnPair<R::Elem>>, RecipeError> {
    check_ring(ring, recipe)?;
    let n = recipe.n;
    if n < 2 {
        return Err(RecipeError::Unsupported("dimension at least 2"));
    }
    let mut rng = recipe.rng();
    for _ in 0..TN_RETRIES {
        let (t, mut nil, _) = hidden_tn(ring, &mut rng, n, recipe.num_generators.max(1))?;
        let victim = rng.gen_range(0..nil.len());
        let (q, q_inv) = random_conjugator(ring, &mut rng, n);
        let replacement = conjugate(ring, &q, &q_inv, &random_strictly_upper(ring, &mut rng, n, ENTRY_HEIGHT));
        if t.iter().all(|ti| ring.is_zero_matrix(&ring.commutator(ti, &replacement))) {
            continue;
        }
        nil[victim] = replacement;
        let (p, p_inv) = random_conjugator(ring, &mut rng, n);
        return Ok(t
            .iter()
            .zip(&nil)
            .map(|(a, b)| (conjugate(ring, &p, &p_inv, a), conjugate(ring, &p, &p_inv, b)))
            .collect());
    }
    Err(RecipeError::RetriesExhausted { attempts: TN_RETRIES })
}

/// Generators `c_i (I + N_i)` with singleton spectra whose product `g1 g2`
/// has two distinct eigenvalues: the top left 2x2 blocks of the first two
/// are `[[1, a], [0, 1]]` and `[[1, 0], [b, 1]]` with `ab(ab + 4) != 0`.
pub fn gen_kaplansky_adversarial<R: Sample>(
    ring: &R,
    recipe: &InstanceRecipe,
) -> Result<Instance<R::Elem>, RecipeError> {
    check_ring(ring, recipe)?;
    let n = recipe.n;
    if n < 2 {
        return Err(RecipeError::Unsupported("dimension at least 2"));
    }
    let mut rng = recipe.rng();
    let (a, b) = loop {
        let a = ring.sample_central_nonzero(&mut rng, ENTRY_HEIGHT);
        let b = ring.sample_central_nonzero(&mut rng, ENTRY_HEIGHT);
        let ab = ring.mul(&a, &b);
        if !ring.is_zero(&ab) && !ring.is_zero(&ring.add(&ab, &ring.from_i64(4))) {
            break (a, b);
        }
    };
    let count = recipe.num_generators.max(2);
    let mut hidden = Vec::with_capacity(count);
    for index in 0..count {
        let c = ring.sample_central_nonzero(&mut rng, ENTRY_HEIGHT);
        let mut g = ring.mat_add(&ring.identity(n), &random_strictly_upper(ring, &mut rng, n, ENTRY_HEIGHT));
        match index {
            0 => g.set(0, 1, a.clone()),
            1 => {
                g.set(0, 1, ring.zero());
                g.set(1, 0, b.clone());
            }
            _ => {}
        }
        hidden.push(ring.scale_left(&c, &g));
    }
    let (p, p_inv) = random_conjugator(ring, &mut rng, n);
    let mats = hidden.iter().map(|g| conjugate(ring, &p, &p_inv, g)).collect();
    Ok(Instance { recipe: *recipe, generators: GeneratorSet::new(n, mats).expect("square"), certificate: None })
}

/// Quaternion families whose first generator is `qI + N` for a non-central
/// `q`; the others are of the form `cI + N` with `c` rational.
pub fn gen_noncentral_scalar(h: &QuaternionRing, recipe: &InstanceRecipe) -> Result<Instance<Quaternion>, RecipeError> {
    check_ring(h, recipe)?;
    let n = recipe.n;
    let mut rng = recipe.rng();
    let q = loop {
        let q = h.sample(&mut rng, ENTRY_HEIGHT);
        if !h.is_central(&q) {
            break q;
        }
    };
    let mut hidden = vec![h.mat_add(&h.scalar_matrix(n, &q), &random_strictly_upper(h, &mut rng, n, ENTRY_HEIGHT))];
    for index in 1..recipe.num_generators.max(1) {
        hidden.push(hidden_generator(h, &mut rng, RecipeKind::KaplanskyQuaternion, n, index));
    }
    let (p, p_inv) = random_conjugator(h, &mut rng, n);
    let mats = hidden.iter().map(|g| conjugate(h, &p, &p_inv, g)).collect();
    Ok(Instance { recipe: *recipe, generators: GeneratorSet::new(n, mats).expect("square"), certificate: None })
}
