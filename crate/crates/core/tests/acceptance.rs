//! Acceptance suite: one pass/fail line per criterion.

use std::time::{Duration, Instant};

use semitri::closure::{commutant, GeneratorSet};
use semitri::linalg::{singleton_spectrum, Matrix, MatrixRing, Spectral};
use semitri::scalars::{PrimeField, Quaternion, QuaternionRing, RationalField, Ring, ScalarRing};
use semitri::testkit::{
    flag_enumeration_oracle, gen_conjugated_flag_family, gen_corrupted_tn_pairs, gen_kaplansky_adversarial,
    gen_noncentral_scalar, gen_tn_family, random_conjugator, random_matrix, spectrum_oracle, InstanceRecipe,
    RecipeKind, Sample, ENTRY_HEIGHT,
};
use semitri::triangularize::{
    hyperinvariant_subspace, kaplansky_chain, kolchin_chain, levitzki_chain, tn_triangularize, triangularize,
    triangularize_general, verify_chain, Branch, EngineConfig, Mode, Outcome, Payload, TnError, TnFamily, Verdict,
    WitnessKind,
};

#[path = "acceptance/cli_contract.rs"]
mod cli_contract;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn chain_of<R: Ring>(ring: &R, gens: &GeneratorSet<R::Elem>, out: &Outcome<R::Elem>, what: &str) -> Result<(), String> {
    match &out.verdict {
        Verdict::Triangularizable(chain) => {
            verify_chain(ring, gens, chain).map_err(|v| format!("{what}: chain rejected: {v}"))
        }
        Verdict::NotTriangularizable(w) => Err(format!("{what}: refuted with {} ({})", w.kind, w.note)),
    }
}

fn recipe(kind: RecipeKind, n: usize, ring: ScalarRing, seed: u64, gens: usize) -> InstanceRecipe {
    InstanceRecipe::new(kind, n, ring, seed, gens)
}

/// Runs `engine` on 100 seeded recipes of `kind`, alternating between Q and
/// GF(5) with n cycling through 2..=5.
fn seeded_suite(
    kind: RecipeKind,
    engine: Mode,
    check_steps: impl Fn(&[semitri::triangularize::ProofStep]) -> Result<(), String>,
) -> Check {
    let start = Instant::now();
    let cfg = EngineConfig::default();
    for i in 0..100u64 {
        let n = 2 + (i % 4) as usize;
        let gens = 1 + (i % 3) as usize;
        let what = format!("seed {i}");
        let steps = if i % 2 == 0 {
            let q = RationalField;
            let inst = gen_conjugated_flag_family(&q, &recipe(kind, n, ScalarRing::Rational, i, gens))
                .map_err(|e| e.to_string())?;
            let out = run_mode(&q, &inst.generators, engine, &cfg)?;
            chain_of(&q, &inst.generators, &out, &what)?;
            out.steps
        } else {
            let f = PrimeField::new(5).unwrap();
            let inst = gen_conjugated_flag_family(&f, &recipe(kind, n, ScalarRing::PrimeField(5), i, gens))
                .map_err(|e| e.to_string())?;
            let out = run_mode(&f, &inst.generators, engine, &cfg)?;
            chain_of(&f, &inst.generators, &out, &what)?;
            out.steps
        };
        check_steps(&steps).map_err(|e| format!("{what}: {e}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:.1?}"))?;
    Ok(format!("100 families over Q and GF(5), n in 2..=5, {elapsed:.2?}"))
}

fn run_mode<R: Spectral>(
    ring: &R,
    gens: &GeneratorSet<R::Elem>,
    mode: Mode,
    cfg: &EngineConfig,
) -> Result<Outcome<R::Elem>, String> {
    let out = match mode {
        Mode::Levitzki => levitzki_chain(ring, gens, cfg),
        Mode::Kolchin => kolchin_chain(ring, gens, cfg),
        Mode::Kaplansky => kaplansky_chain(ring, gens, cfg),
        Mode::General => triangularize_general(ring, gens, cfg),
        other => triangularize(ring, gens, other, cfg),
    };
    out.map_err(|e| e.to_string())
}

fn levitzki() -> Check {
    seeded_suite(RecipeKind::Nilpotent, Mode::Levitzki, |_| Ok(()))
}

fn kolchin() -> Check {
    seeded_suite(RecipeKind::Unipotent, Mode::Kolchin, |steps| {
        for s in steps {
            match s.branch {
                Branch::FixedSpace => ensure(s.found_dim > 0, || format!("empty fixed space: {s}"))?,
                Branch::Trivial | Branch::EveryFlag => {}
                other => return Err(format!("unexpected branch {other}")),
            }
        }
        ensure(steps.iter().any(|s| s.branch == Branch::FixedSpace), || "no fixed space step logged".into())
    })
}

fn kaplansky() -> Check {
    let q = RationalField;
    let cfg = EngineConfig::default();
    for i in 0..100u64 {
        let n = 2 + (i % 4) as usize;
        let inst = gen_conjugated_flag_family(
            &q,
            &recipe(RecipeKind::KaplanskyField, n, ScalarRing::Rational, i, 1 + (i % 3) as usize),
        )
        .map_err(|e| e.to_string())?;
        let out = kaplansky_chain(&q, &inst.generators, &cfg).map_err(|e| e.to_string())?;
        chain_of(&q, &inst.generators, &out, &format!("seed {i}"))?;
    }
    for i in 0..25u64 {
        let n = 2 + (i % 4) as usize;
        let inst = gen_kaplansky_adversarial(
            &q,
            &recipe(RecipeKind::KaplanskyField, n, ScalarRing::Rational, 1000 + i, 2 + (i % 2) as usize),
        )
        .map_err(|e| e.to_string())?;
        let out = kaplansky_chain(&q, &inst.generators, &cfg).map_err(|e| e.to_string())?;
        let w = out.verdict.witness().ok_or_else(|| format!("adversarial {i} was triangularized"))?;
        ensure(w.kind == WitnessKind::NonSingletonSpectrum, || format!("adversarial {i}: witness {}", w.kind))?;
        w.recheck(&q, Some(&inst.generators)).map_err(|e| format!("adversarial {i}: {e}"))?;
    }
    Ok("100 chains verified, 25 adversarial families refuted with re-checked witnesses".into())
}

fn tn() -> Check {
    let q = RationalField;
    let cfg = EngineConfig::default();
    let mut noncommutative = 0;
    for i in 0..100u64 {
        let n = 2 + (i % 4) as usize;
        let inst =
            gen_tn_family(&q, &recipe(RecipeKind::TnFamilyRecipe, n, ScalarRing::Rational, i, 1 + (i % 3) as usize))
                .map_err(|e| format!("seed {i}: {e}"))?;
        let t = inst.family.t_set();
        if t.iter().any(|a| t.iter().any(|b| !q.is_zero_matrix(&q.commutator(a, b)))) {
            noncommutative += 1;
        }
        let out = tn_triangularize(&q, &inst.family, &cfg).map_err(|e| e.to_string())?;
        chain_of(&q, &inst.family.generators(&q), &out, &format!("seed {i}"))?;
    }
    ensure(noncommutative > 0, || "no family had a noncommutative T set".into())?;
    for i in 0..25u64 {
        let n = 2 + (i % 4) as usize;
        let pairs = gen_corrupted_tn_pairs(
            &q,
            &recipe(RecipeKind::TnFamilyRecipe, n, ScalarRing::Rational, 2000 + i, 1 + (i % 3) as usize),
        )
        .map_err(|e| e.to_string())?;
        match TnFamily::new(&q, n, pairs) {
            Err(TnError::Rejected(w)) => {
                ensure(matches!(w.payload, Payload::Commutator { .. }), || {
                    format!("corrupted {i}: payload is not a commutator")
                })?;
                w.recheck(&q, None).map_err(|e| format!("corrupted {i}: {e}"))?;
            }
            Err(e) => return Err(format!("corrupted {i}: {e}")),
            Ok(_) => return Err(format!("corrupted {i} accepted")),
        }
    }
    Ok(format!("100 chains verified ({noncommutative} with noncommutative T), 25 corrupted families rejected"))
}

fn quaternion() -> Check {
    let h = QuaternionRing;
    let mut a = h.zeros(3, 3);
    a.set(0, 1, Quaternion::i());
    let mut b = h.zeros(3, 3);
    b.set(1, 2, Quaternion::j());
    let gens = GeneratorSet::new(3, vec![a, b]).unwrap();
    let cfg = EngineConfig { finite: true, ..EngineConfig::default() };
    let out = triangularize(&h, &gens, Mode::Auto, &cfg).map_err(|e| e.to_string())?;
    chain_of(&h, &gens, &out, "{iE12, jE23}")?;

    let cfg = EngineConfig::default();
    for i in 0..50u64 {
        let n = 1 + (i % 3) as usize;
        let inst = gen_conjugated_flag_family(
            &h,
            &recipe(RecipeKind::KaplanskyQuaternion, n, ScalarRing::Quaternion, i, 1 + (i % 3) as usize),
        )
        .map_err(|e| e.to_string())?;
        let out = kaplansky_chain(&h, &inst.generators, &cfg).map_err(|e| e.to_string())?;
        chain_of(&h, &inst.generators, &out, &format!("seed {i}"))?;
    }
    for i in 0..10u64 {
        let n = 2 + (i % 2) as usize;
        let inst = gen_noncentral_scalar(
            &h,
            &recipe(RecipeKind::KaplanskyQuaternion, n, ScalarRing::Quaternion, 3000 + i, 1 + (i % 2) as usize),
        )
        .map_err(|e| e.to_string())?;
        let out = kaplansky_chain(&h, &inst.generators, &cfg).map_err(|e| e.to_string())?;
        let w = out.verdict.witness().ok_or_else(|| format!("noncentral {i} was triangularized"))?;
        ensure(w.kind == WitnessKind::NonCentralScalar, || format!("noncentral {i}: witness {}", w.kind))?;
        w.recheck(&h, Some(&inst.generators)).map_err(|e| format!("noncentral {i}: {e}"))?;
    }
    Ok("{iE12, jE23} verified, 50 chains verified, 10 non-central families rejected".into())
}

fn oracle_equivalence() -> Check {
    let f = PrimeField::new(2).unwrap();
    let cfg = EngineConfig::default();
    let all2: Vec<Matrix<_>> =
        (0..16u64).map(|bits| Matrix::from_fn(2, 2, |r, c| f.elem((bits >> (2 * r + c)) & 1))).collect();
    let agree = |gens: &GeneratorSet<_>| -> Result<bool, String> {
        let engine = triangularize_general(&f, gens, &cfg).map_err(|e| e.to_string())?;
        Ok(engine.verdict.is_triangularizable() == flag_enumeration_oracle(&f, gens))
    };
    let mut yes = 0;
    let mut total = 0;
    for a in &all2 {
        for b in &all2 {
            let gens = GeneratorSet::new(2, vec![a.clone(), b.clone()]).unwrap();
            ensure(agree(&gens)?, || format!("disagreement on {a:?}, {b:?}"))?;
            total += 1;
            if flag_enumeration_oracle(&f, &gens) {
                yes += 1;
            }
        }
    }
    let mut yes3 = 0;
    for i in 0..500u64 {
        let gens = if i % 2 == 0 {
            let mut rng = recipe(RecipeKind::General, 3, ScalarRing::PrimeField(2), i, 2).rng();
            GeneratorSet::new(3, vec![random_matrix(&f, &mut rng, 3, 1), random_matrix(&f, &mut rng, 3, 1)]).unwrap()
        } else {
            gen_conjugated_flag_family(&f, &recipe(RecipeKind::General, 3, ScalarRing::PrimeField(2), i, 2))
                .map_err(|e| e.to_string())?
                .generators
        };
        ensure(agree(&gens)?, || format!("disagreement on seed {i}: {:?}", gens.matrices()))?;
        if flag_enumeration_oracle(&f, &gens) {
            yes3 += 1;
        }
    }
    Ok(format!("{total}/{total} pairs for n = 2 ({yes} triangularizable), 500/500 for n = 3 ({yes3} triangularizable)"))
}

fn spectrum_case<F: Sample + semitri::scalars::Field>(field: &F, i: u64, n: usize) -> Result<(bool, bool), String> {
    let r = recipe(RecipeKind::KaplanskyField, n, field.descriptor(), 4000 + i, 1);
    let a = if i.is_multiple_of(2) {
        random_matrix(field, &mut r.rng(), n, ENTRY_HEIGHT)
    } else {
        gen_conjugated_flag_family(field, &r).map_err(|e| e.to_string())?.generators.matrices()[0].clone()
    };
    let engine = singleton_spectrum(field, &a);
    let oracle = spectrum_oracle(field, &a);
    ensure(engine == oracle, || format!("case {i}: engine {engine:?}, oracle {oracle:?} on {a:?}"))?;
    Ok((oracle.is_some(), field.characteristic() > 0 && (n as u64).is_multiple_of(field.characteristic())))
}

fn spectrum() -> Check {
    let q = RationalField;
    let f2 = PrimeField::new(2).unwrap();
    let f3 = PrimeField::new(3).unwrap();
    let mut singleton = 0;
    let mut divides = 0;
    for i in 0..1000u64 {
        let n = 1 + (i / 3 % 4) as usize;
        let (s, d) = match i % 3 {
            0 => spectrum_case(&q, i, n)?,
            1 => spectrum_case(&f2, i, n)?,
            _ => spectrum_case(&f3, i, n)?,
        };
        singleton += s as usize;
        divides += d as usize;
    }
    ensure(divides > 0, || "no case with p dividing n".into())?;
    Ok(format!("1000/1000 agree ({singleton} singleton, {divides} with p | n)"))
}

fn hyperinvariant_case<R: Sample>(ring: &R, i: u64) -> Result<bool, String> {
    let n = 2 + (i % 4) as usize;
    let kind = if i.is_multiple_of(2) { RecipeKind::General } else { RecipeKind::KaplanskyField };
    let inst = gen_conjugated_flag_family(ring, &recipe(kind, n, ring.descriptor(), 5000 + i, 1 + (i % 3) as usize))
        .map_err(|e| e.to_string())?;
    let gens = &inst.generators;
    if gens.matrices().iter().all(|g| ring.is_scalar(g)) {
        return Ok(false);
    }
    let k = hyperinvariant_subspace(ring, gens).map_err(|e| format!("case {i}: {e}"))?;
    ensure(!k.is_zero() && !k.is_full(), || format!("case {i}: trivial subspace"))?;
    for (j, g) in gens.matrices().iter().enumerate() {
        ensure(k.is_invariant(ring, g), || format!("case {i}: not invariant under g{}", j + 1))?;
    }
    for c in commutant(ring, n, gens.matrices()) {
        ensure(k.is_invariant(ring, &c), || format!("case {i}: not invariant under a commutant element"))?;
    }
    Ok(true)
}

fn hyperinvariance() -> Check {
    let q = RationalField;
    let f = PrimeField::new(5).unwrap();
    let mut done = 0;
    let mut i = 0;
    while done < 100 {
        let counted = if i % 2 == 0 { hyperinvariant_case(&q, i)? } else { hyperinvariant_case(&f, i)? };
        done += counted as usize;
        i += 1;
    }
    Ok(format!("100 nonscalar families over Q and GF(5) ({} drawn)", i))
}

fn equivariance_case<R: Sample>(ring: &R, i: u64) -> Result<(), String> {
    let kinds = [
        RecipeKind::Nilpotent,
        RecipeKind::Unipotent,
        RecipeKind::KaplanskyField,
        RecipeKind::General,
        RecipeKind::IrreduciblePair,
    ];
    let kind = kinds[(i % kinds.len() as u64) as usize];
    let n = 2 + (i % 3) as usize;
    let inst = if i % 7 == 6 {
        gen_kaplansky_adversarial(ring, &recipe(kind, n, ring.descriptor(), 6000 + i, 2))
    } else {
        gen_conjugated_flag_family(ring, &recipe(kind, n, ring.descriptor(), 6000 + i, 2))
    }
    .map_err(|e| e.to_string())?;
    let (p, p_inv) = random_conjugator(ring, &mut recipe(kind, n, ring.descriptor(), 7000 + i, 1).rng(), n);
    let moved = inst.generators.map(|g| ring.mat_mul(&ring.mat_mul(&p, g), &p_inv));
    let cfg = EngineConfig::default();
    let before = triangularize(ring, &inst.generators, Mode::Auto, &cfg).map_err(|e| e.to_string())?;
    let after = triangularize(ring, &moved, Mode::Auto, &cfg).map_err(|e| e.to_string())?;
    let kind_of = |o: &Outcome<R::Elem>| match &o.verdict {
        Verdict::Triangularizable(_) => "triangularizable".to_string(),
        Verdict::NotTriangularizable(w) => w.kind.to_string(),
    };
    ensure(kind_of(&before) == kind_of(&after), || {
        format!("case {i}: {} became {}", kind_of(&before), kind_of(&after))
    })?;
    if let Some(chain) = before.verdict.chain() {
        verify_chain(ring, &moved, &chain.transport(ring, &p))
            .map_err(|v| format!("case {i}: transported chain: {v}"))?;
    }
    Ok(())
}

fn equivariance() -> Check {
    let q = RationalField;
    let f = PrimeField::new(3).unwrap();
    for i in 0..100u64 {
        if i % 2 == 0 {
            equivariance_case(&q, i)?;
        } else {
            equivariance_case(&f, i)?;
        }
    }
    Ok("100 conjugated families over Q and GF(3) keep their verdict kind".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Levitzki suite", levitzki),
        ("Kolchin suite", kolchin),
        ("Kaplansky suite", kaplansky),
        ("T+N suite", tn),
        ("Quaternion suite", quaternion),
        ("Oracle equivalence over GF(2)", oracle_equivalence),
        ("Spectrum oracle", spectrum),
        ("Hyperinvariance", hyperinvariance),
        ("Conjugation equivariance", equivariance),
        ("CLI contract", cli_contract::run),
    ];
    let mut failed = 0;
    for (index, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", index + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason} [{elapsed:.2?}]", index + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
