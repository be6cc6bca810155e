//! Command line front end.
//!
//! Exit codes: 0 triangularizable (or verified), 1 refuted, 2 input error,
//! 3 resource bound exceeded or no decision reached.

mod files;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use files::{decode_chain, decode_family, ChainFile, Diagnostic, EntryMatrix, Family, FamilyFile, Source};

use crate::closure::{semigroup_closure, DEFAULT_CLOSURE_BOUND};
use crate::scalars::{PrimeField, QuaternionRing, RationalField, ScalarRing};
use crate::testkit::{gen_conjugated_flag_family, gen_tn_family, InstanceRecipe, RecipeError, RecipeKind, Sample};
use crate::triangularize::{
    irreducibility_test, tn_triangularize, triangularize, verify_chain, EngineConfig, EngineError, Irreducibility,
    Mode, TnError, TnFamily, Verdict,
};

pub const EXIT_TRIANGULARIZABLE: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Default cap on the GF(p) modulus for eigenvalue searches.
pub const DEFAULT_MAX_PRIME: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "semitri", version, about = "Decide simultaneous triangularizability of matrix semigroups exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the engine on a family file.
    Triangularize(TriangularizeArgs),
    /// Check a chain file against a family file.
    Verify(VerifyArgs),
    /// Print the singleton or central spectrum of each generator.
    Spectrum(SpectrumArgs),
    /// Print the size and completeness of the generated semigroup.
    Closure(ClosureArgs),
    /// Write a seeded random family file.
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct TriangularizeArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Overrides the mode in the file.
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Overrides the closure bound in the file.
    #[arg(long)]
    pub closure_bound: Option<usize>,
    /// Require the semigroup to be finite within the closure bound.
    #[arg(long)]
    pub finite: bool,
    /// Write the chain, when one is found, to this file.
    #[arg(long)]
    pub emit_chain: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_PRIME)]
    pub max_prime: u64,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub chain: PathBuf,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MAX_PRIME)]
    pub max_prime: u64,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub closure_bound: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub kind: RecipeKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    /// "rational", "gfp:<p>" or "quaternion"; defaults to quaternion for
    /// kaplansky-quaternion and rational otherwise.
    #[arg(long)]
    pub ring: Option<ScalarRing>,
    #[arg(long, default_value_t = 2)]
    pub generators: usize,
    /// Defaults to standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// The input a [`Failure`] points into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Input {
    Family,
    Chain,
}

/// A failure that ends the command with a fixed exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct Failure {
    pub exit: i32,
    /// Set when `message` starts with a position inside that input.
    pub input: Option<Input>,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { exit: EXIT_INPUT, input: None, message: message.into() }
    }

    fn resource(message: impl Into<String>) -> Self {
        Failure { exit: EXIT_RESOURCE, input: None, message: message.into() }
    }

    fn located(input: Input, d: Diagnostic) -> Self {
        Failure { exit: EXIT_INPUT, input: Some(input), message: d.to_string() }
    }

    /// Prefixes located messages with the file they came from.
    fn in_files(mut self, family: &Path, chain: Option<&Path>) -> Self {
        let path = match self.input {
            Some(Input::Family) => Some(family),
            Some(Input::Chain) => chain,
            None => None,
        };
        if let Some(path) = path {
            self.message = format!("{}: {}", path.display(), self.message);
        }
        self
    }
}

type Run = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_TRIANGULARIZABLE };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Triangularize(a) => cmd_triangularize(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Spectrum(a) => cmd_spectrum(a, out),
        Command::Closure(a) => cmd_closure(a, out),
        Command::Random(a) => cmd_random(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.exit
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// A command body that runs over whichever ring the input names.
trait WithRing {
    type Out;
    fn call<R: Sample>(self, ring: R) -> Result<Self::Out, Failure>;
}

fn with_ring<W: WithRing>(scalar: ScalarRing, w: W) -> Result<W::Out, Failure> {
    match scalar {
        ScalarRing::Rational => w.call(RationalField),
        ScalarRing::PrimeField(p) => w.call(PrimeField::new(p).map_err(|e| Failure::input(e.to_string()))?),
        ScalarRing::Quaternion => w.call(QuaternionRing),
    }
}

fn load_family<'a>(
    path: &Path,
    text: &'a str,
    max_prime: Option<u64>,
) -> Result<(Source<'a, FamilyFile>, ScalarRing), Failure> {
    parse_family(text, max_prime).map_err(|f| f.in_files(path, None))
}

fn parse_family(text: &str, max_prime: Option<u64>) -> Result<(Source<'_, FamilyFile>, ScalarRing), Failure> {
    let src = Source::<FamilyFile>::parse(text).map_err(|d| Failure::located(Input::Family, d))?;
    let scalar = files::parse_scalar_ring(&src, &src.doc.scalar).map_err(|d| Failure::located(Input::Family, d))?;
    if let (ScalarRing::PrimeField(p), Some(cap)) = (scalar, max_prime) {
        if p > cap {
            let d = src.error_at_token(&src.doc.scalar, "scalar", format!("modulus {p} exceeds --max-prime {cap}"));
            return Err(Failure::located(Input::Family, d));
        }
    }
    Ok((src, scalar))
}

/// Engine options that the command line can override.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub mode: Option<Mode>,
    pub closure_bound: Option<usize>,
    pub finite: bool,
    pub max_prime: Option<u64>,
    pub json: bool,
}

/// A rendered result together with the exit code it maps to.
#[derive(Debug, Clone)]
pub struct Report {
    pub exit: i32,
    pub text: String,
    /// The chain file, when a chain was found.
    pub chain: Option<String>,
}

fn cmd_triangularize(args: &TriangularizeArgs, out: &mut dyn Write) -> Run {
    let text = read(&args.input)?;
    let opts = Options {
        mode: args.mode,
        closure_bound: args.closure_bound,
        finite: args.finite,
        max_prime: Some(args.max_prime),
        json: args.json,
    };
    let report = triangularize_text(&text, &opts).map_err(|f| f.in_files(&args.input, None))?;
    write_out(out, &report.text)?;
    if let (Some(path), Some(chain)) = (&args.emit_chain, &report.chain) {
        write_file(path, chain)?;
    }
    Ok(report.exit)
}

/// Runs a family file, given as text, through the engine.
pub fn triangularize_text(family: &str, opts: &Options) -> Result<Report, Failure> {
    let (src, scalar) = parse_family(family, opts.max_prime)?;
    with_ring(scalar, Triangularize { opts, src: &src })
}

struct Triangularize<'a, 'b> {
    opts: &'a Options,
    src: &'a Source<'b, FamilyFile>,
}

impl WithRing for Triangularize<'_, '_> {
    type Out = Report;

    fn call<R: Sample>(self, ring: R) -> Result<Report, Failure> {
        let opts = self.opts;
        let mut family = decode_family(&ring, self.src).map_err(|d| Failure::located(Input::Family, d))?;
        if let Some(mode) = opts.mode {
            family.mode = mode;
            if mode == Mode::Tn && family.tn_pairs.is_none() {
                return Err(Failure::input("mode tn requires tn_pairs in the family file"));
            }
            if mode != Mode::Tn && family.generators.is_empty() {
                return Err(Failure::input(format!("mode {mode} requires generators in the family file")));
            }
        }
        let cfg = EngineConfig {
            closure_bound: opts.closure_bound.or(family.closure_bound).unwrap_or(DEFAULT_CLOSURE_BOUND),
            finite: opts.finite || family.finite,
        };
        if cfg.closure_bound == 0 {
            return Err(Failure::input("--closure-bound must be positive"));
        }

        if family.mode == Mode::Irreducible {
            let gens = family.acting_set(&ring);
            let result = irreducibility_test(&ring, &gens);
            let exit = match result {
                Irreducibility::Reducible(_) => EXIT_TRIANGULARIZABLE,
                Irreducibility::Irreducible => EXIT_REFUTED,
                Irreducibility::Undetermined => EXIT_RESOURCE,
            };
            let text = report::irreducibility(&ring, &result, opts.json);
            return Ok(Report { exit, text, chain: None });
        }

        let outcome = if family.mode == Mode::Tn {
            let pairs = family.tn_pairs.clone().expect("checked above");
            match TnFamily::new(&ring, family.n, pairs) {
                Ok(fam) => tn_triangularize(&ring, &fam, &cfg),
                Err(TnError::Rejected(w)) => {
                    let text = report::rejected_pairs(&ring, &w, opts.json);
                    return Ok(Report { exit: EXIT_REFUTED, text, chain: None });
                }
                Err(TnError::Shape(e)) => return Err(Failure::input(e.to_string())),
            }
        } else {
            triangularize(&ring, &family.acting_set(&ring), family.mode, &cfg)
        };
        let outcome = outcome.map_err(|e| match e {
            EngineError::ClosureBoundExceeded { .. } => Failure::resource(e.to_string()),
            EngineError::Internal(_) => Failure::resource(format!("internal error: {e}")),
            other => Failure::input(other.to_string()),
        })?;
        let text = report::outcome(&ring, &outcome, opts.json);
        Ok(match &outcome.verdict {
            Verdict::Triangularizable(chain) => {
                Report { exit: EXIT_TRIANGULARIZABLE, text, chain: Some(ChainFile::from_chain(&ring, chain).to_json()) }
            }
            Verdict::NotTriangularizable(_) => Report { exit: EXIT_REFUTED, text, chain: None },
        })
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::input(format!("writing output: {e}")))
}

/// Parses and decodes a family file without running the engine; returns the
/// scalar ring and dimension.
pub fn check_family(family: &str, max_prime: Option<u64>) -> Result<(ScalarRing, usize), Failure> {
    let (src, scalar) = parse_family(family, max_prime)?;
    let n = with_ring(scalar, Check { src: &src })?;
    Ok((scalar, n))
}

struct Check<'a, 'b> {
    src: &'a Source<'b, FamilyFile>,
}

impl WithRing for Check<'_, '_> {
    type Out = usize;

    fn call<R: Sample>(self, ring: R) -> Result<usize, Failure> {
        let family = decode_family(&ring, self.src).map_err(|d| Failure::located(Input::Family, d))?;
        Ok(family.n)
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Run {
    let text = read(&args.input)?;
    let chain_text = read(&args.chain)?;
    let report = verify_text(&text, &chain_text).map_err(|f| f.in_files(&args.input, Some(&args.chain)))?;
    write_out(out, &report.text)?;
    Ok(report.exit)
}

/// Checks a chain file against a family file, both given as text.
pub fn verify_text(family: &str, chain: &str) -> Result<Report, Failure> {
    let (src, scalar) = parse_family(family, None)?;
    let chain_src = Source::<ChainFile>::parse(chain).map_err(|d| Failure::located(Input::Chain, d))?;
    let chain_scalar =
        files::parse_scalar_ring(&chain_src, &chain_src.doc.scalar).map_err(|d| Failure::located(Input::Chain, d))?;
    if chain_scalar != scalar {
        return Err(Failure::input(format!("chain is over {chain_scalar} but the family is over {scalar}")));
    }
    with_ring(scalar, Verify { src: &src, chain: &chain_src })
}

struct Verify<'a, 'b> {
    src: &'a Source<'b, FamilyFile>,
    chain: &'a Source<'b, ChainFile>,
}

impl WithRing for Verify<'_, '_> {
    type Out = Report;

    fn call<R: Sample>(self, ring: R) -> Result<Report, Failure> {
        let family = decode_family(&ring, self.src).map_err(|d| Failure::located(Input::Family, d))?;
        let chain = decode_chain(&ring, self.chain).map_err(|d| Failure::located(Input::Chain, d))?;
        if chain.dim() != family.n {
            return Err(Failure::input(format!(
                "chain has dimension {} but the family has n = {}",
                chain.dim(),
                family.n
            )));
        }
        let gens = family.acting_set(&ring);
        let (exit, text) = match verify_chain(&ring, &gens, &chain) {
            Ok(()) => (
                EXIT_TRIANGULARIZABLE,
                format!("verified: all {} generators preserve all {} subspaces\n", gens.len(), chain.dim() + 1),
            ),
            Err(v) => (EXIT_REFUTED, format!("rejected: {v}\n  vector: {}\n", report::vector(&ring, &v.vector))),
        };
        Ok(Report { exit, text, chain: None })
    }
}

fn cmd_spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> Run {
    let text = read(&args.input)?;
    let (src, scalar) = load_family(&args.input, &text, Some(args.max_prime))?;
    with_ring(scalar, Spectrum { path: &args.input, src: &src, out })
}

struct Spectrum<'a, 'b> {
    path: &'a Path,
    src: &'a Source<'b, FamilyFile>,
    out: &'a mut dyn Write,
}

impl WithRing for Spectrum<'_, '_> {
    type Out = i32;

    fn call<R: Sample>(self, ring: R) -> Run {
        let family =
            decode_family(&ring, self.src).map_err(|d| Failure::located(Input::Family, d).in_files(self.path, None))?;
        let gens = family.acting_set(&ring);
        let mut text = String::new();
        for (i, g) in gens.matrices().iter().enumerate() {
            text.push_str(&format!("g{}: {}\n", i + 1, report::spectrum(&ring, g)));
        }
        write_out(self.out, &text)?;
        Ok(EXIT_TRIANGULARIZABLE)
    }
}

fn cmd_closure(args: &ClosureArgs, out: &mut dyn Write) -> Run {
    let text = read(&args.input)?;
    let (src, scalar) = load_family(&args.input, &text, None)?;
    with_ring(scalar, Closure { args, src: &src, out })
}

struct Closure<'a, 'b> {
    args: &'a ClosureArgs,
    src: &'a Source<'b, FamilyFile>,
    out: &'a mut dyn Write,
}

impl WithRing for Closure<'_, '_> {
    type Out = i32;

    fn call<R: Sample>(self, ring: R) -> Run {
        let family = decode_family(&ring, self.src)
            .map_err(|d| Failure::located(Input::Family, d).in_files(&self.args.input, None))?;
        let bound = self.args.closure_bound.or(family.closure_bound).unwrap_or(DEFAULT_CLOSURE_BOUND);
        if bound == 0 {
            return Err(Failure::input("--closure-bound must be positive"));
        }
        let res = semigroup_closure(&ring, &family.acting_set(&ring), bound);
        let text = if res.complete {
            format!("closure: {} elements (complete)\n", res.len())
        } else {
            format!("closure: at least {} elements (incomplete, bound {bound} reached)\n", res.len())
        };
        write_out(self.out, &text)?;
        Ok(EXIT_TRIANGULARIZABLE)
    }
}

fn cmd_random(args: &RandomArgs, out: &mut dyn Write) -> Run {
    let ring = args.ring.unwrap_or(match args.kind {
        RecipeKind::KaplanskyQuaternion => ScalarRing::Quaternion,
        _ => ScalarRing::Rational,
    });
    if args.n == 0 {
        return Err(Failure::input("--n must be positive"));
    }
    let recipe = InstanceRecipe::new(args.kind, args.n, ring, args.seed, args.generators.max(1));
    with_ring(ring, Random { args, recipe, out })
}

struct Random<'a> {
    args: &'a RandomArgs,
    recipe: InstanceRecipe,
    out: &'a mut dyn Write,
}

impl WithRing for Random<'_> {
    type Out = i32;

    fn call<R: Sample>(self, ring: R) -> Run {
        let recipe_error = |e: RecipeError| match e {
            RecipeError::RetriesExhausted { .. } => Failure::resource(e.to_string()),
            other => Failure::input(other.to_string()),
        };
        let file = if self.recipe.kind == RecipeKind::TnFamilyRecipe {
            let inst = gen_tn_family(&ring, &self.recipe).map_err(recipe_error)?;
            FamilyFile::from_tn_pairs(&ring, inst.family.dim(), inst.family.pairs())
        } else {
            let inst = gen_conjugated_flag_family(&ring, &self.recipe).map_err(recipe_error)?;
            FamilyFile::from_generators(&ring, &inst.generators, mode_for(self.recipe.kind, ring.descriptor()))
        };
        let text = file.to_json();
        match &self.args.output {
            Some(path) => write_file(path, &text)?,
            None => write_out(self.out, &text)?,
        }
        Ok(EXIT_TRIANGULARIZABLE)
    }
}

/// The mode written into generated family files.
pub fn mode_for(kind: RecipeKind, ring: ScalarRing) -> Mode {
    match kind {
        RecipeKind::Nilpotent => Mode::Levitzki,
        RecipeKind::Unipotent => Mode::Kolchin,
        RecipeKind::KaplanskyField | RecipeKind::KaplanskyQuaternion => Mode::Kaplansky,
        RecipeKind::TnFamilyRecipe => Mode::Tn,
        RecipeKind::General if ring != ScalarRing::Quaternion => Mode::General,
        RecipeKind::General | RecipeKind::IrreduciblePair => Mode::Auto,
    }
}
