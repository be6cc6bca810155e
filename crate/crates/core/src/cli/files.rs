//! Family and chain files: JSON with string-encoded scalars.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::closure::GeneratorSet;
use crate::linalg::{Chain, Matrix, Subspace};
use crate::scalars::{Ring, ScalarRing};
use crate::triangularize::Mode;

pub type EntryMatrix = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub scalar: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<EntryMatrix>,
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tn_pairs: Option<Vec<(EntryMatrix, EntryMatrix)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite: Option<bool>,
}

fn default_mode() -> String {
    Mode::Auto.name().to_owned()
}

/// Subspace `j` is listed by a basis of `j` column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub scalar: String,
    pub n: usize,
    pub subspaces: Vec<Vec<Vec<String>>>,
}

/// An input problem with a source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    /// JSON path of the offending value, e.g. `generators[0][1][1]`.
    pub path: String,
    pub token: Option<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if let Some(t) = &self.token {
            write!(f, " (offending token {t:?})")?;
        }
        if !self.path.is_empty() && self.path != "." {
            write!(f, " at {}", self.path)?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}

/// A decoded document with its source, for positions in later diagnostics.
#[derive(Debug)]
pub struct Source<'a, T> {
    pub text: &'a str,
    pub doc: T,
}

impl<'a, T: for<'de> Deserialize<'de>> Source<'a, T> {
    pub fn parse(text: &'a str) -> Result<Self, Diagnostic> {
        let mut de = serde_json::Deserializer::from_str(text);
        let doc: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let (line, column) = (inner.line(), inner.column());
            Diagnostic {
                line,
                column,
                path,
                token: token_at(text, line, column),
                message: strip_position(&inner.to_string()),
            }
        })?;
        de.end().map_err(|e| Diagnostic {
            line: e.line(),
            column: e.column(),
            path: String::new(),
            token: token_at(text, e.line(), e.column()),
            message: strip_position(&e.to_string()),
        })?;
        Ok(Source { text, doc })
    }
}

impl<T> Source<'_, T> {
    /// A diagnostic placed at the first occurrence of `needle`.
    pub fn error_at(
        &self,
        needle: &str,
        path: impl Into<String>,
        token: Option<String>,
        message: impl Into<String>,
    ) -> Diagnostic {
        let (line, column) = locate(self.text, needle);
        Diagnostic { line, column, path: path.into(), token, message: message.into() }
    }

    /// A diagnostic placed at the quoted string `token`.
    pub fn error_at_token(&self, token: &str, path: impl Into<String>, message: impl Into<String>) -> Diagnostic {
        let quoted = serde_json::to_string(token).expect("strings serialize");
        self.error_at(&quoted, path, Some(token.to_owned()), message)
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_owned(),
        None => msg.to_owned(),
    }
}

/// 1-based line and column of the first match, or of the start.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    let offset = text.find(needle).unwrap_or(0);
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// The run of non-structural characters around a 1-based position.
fn token_at(text: &str, line: usize, column: usize) -> Option<String> {
    let l: Vec<char> = text.lines().nth(line.checked_sub(1)?)?.chars().collect();
    if l.is_empty() {
        return None;
    }
    let at = column.saturating_sub(1).min(l.len() - 1);
    let stop = |c: char| c.is_whitespace() || "{}[],:".contains(c);
    if stop(l[at]) {
        return Some(l[at].to_string());
    }
    let start = (0..=at).rev().take_while(|&i| !stop(l[i])).last().unwrap_or(at);
    let end = (at..l.len()).take_while(|&i| !stop(l[i])).last().unwrap_or(at);
    Some(l[start..=end].iter().collect())
}

pub fn parse_scalar_ring<T>(src: &Source<'_, T>, scalar: &str) -> Result<ScalarRing, Diagnostic> {
    scalar.parse().map_err(|e: crate::scalars::ScalarError| src.error_at_token(scalar, "scalar", e.to_string()))
}

/// A validated family over a concrete ring.
#[derive(Debug, Clone)]
pub struct Family<E> {
    pub n: usize,
    pub mode: Mode,
    /// Empty in tn mode.
    pub generators: Vec<Matrix<E>>,
    pub tn_pairs: Option<Vec<(Matrix<E>, Matrix<E>)>>,
    pub closure_bound: Option<usize>,
    pub finite: bool,
}

impl<E: Clone> Family<E> {
    /// The matrices the chain must be invariant under: the generators, or
    /// the sums `T + N` in tn mode.
    pub fn acting_set<R: Ring<Elem = E>>(&self, ring: &R) -> GeneratorSet<E> {
        use crate::linalg::MatrixRing;
        let mats = match &self.tn_pairs {
            Some(pairs) if self.mode == Mode::Tn => pairs.iter().map(|(t, m)| ring.mat_add(t, m)).collect(),
            _ => self.generators.clone(),
        };
        GeneratorSet::new(self.n, mats).expect("validated")
    }
}

pub fn decode_family<R: Ring>(ring: &R, src: &Source<'_, FamilyFile>) -> Result<Family<R::Elem>, Diagnostic> {
    let file = &src.doc;
    let n = file.n;
    if n == 0 {
        return Err(src.error_at("\"n\"", "n", Some("0".into()), "dimension must be positive"));
    }
    let mode: Mode = file.mode.parse().map_err(|e: String| src.error_at_token(&file.mode, "mode", e))?;
    let generators = file
        .generators
        .iter()
        .enumerate()
        .map(|(i, m)| decode_matrix(ring, src, m, n, &format!("generators[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let tn_pairs = match &file.tn_pairs {
        None => None,
        Some(pairs) => Some(
            pairs
                .iter()
                .enumerate()
                .map(|(i, (t, m))| {
                    Ok((
                        decode_matrix(ring, src, t, n, &format!("tn_pairs[{i}][0]"))?,
                        decode_matrix(ring, src, m, n, &format!("tn_pairs[{i}][1]"))?,
                    ))
                })
                .collect::<Result<Vec<_>, Diagnostic>>()?,
        ),
    };
    if mode == Mode::Tn {
        if tn_pairs.as_ref().is_none_or(Vec::is_empty) {
            return Err(src.error_at("\"mode\"", "tn_pairs", None, "mode \"tn\" requires a nonempty tn_pairs list"));
        }
    } else if generators.is_empty() {
        return Err(src.error_at("\"generators\"", "generators", None, "at least one generator is required"));
    }
    if file.closure_bound == Some(0) {
        return Err(src.error_at(
            "\"closure_bound\"",
            "closure_bound",
            Some("0".into()),
            "closure bound must be positive",
        ));
    }
    Ok(Family {
        n,
        mode,
        generators,
        tn_pairs,
        closure_bound: file.closure_bound,
        finite: file.finite.unwrap_or(false),
    })
}

fn decode_matrix<R: Ring>(
    ring: &R,
    src: &Source<'_, FamilyFile>,
    m: &EntryMatrix,
    n: usize,
    path: &str,
) -> Result<Matrix<R::Elem>, Diagnostic> {
    let key = path.split('[').next().unwrap_or(path);
    let needle = format!("\"{key}\"");
    if m.len() != n {
        return Err(src.error_at(&needle, path, None, format!("matrix has {} rows, expected {n}", m.len())));
    }
    let mut rows = Vec::with_capacity(n);
    for (r, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(src.error_at(
                &needle,
                format!("{path}[{r}]"),
                None,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(c, s)| ring.parse(s).map_err(|e| src.error_at_token(s, format!("{path}[{r}][{c}]"), reason(&e))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(parsed);
    }
    Ok(Matrix::from_rows(rows))
}

fn reason(e: &crate::scalars::ScalarError) -> String {
    match e {
        crate::scalars::ScalarError::Parse { reason, .. } => format!("malformed scalar: {reason}"),
        other => other.to_string(),
    }
}

pub fn encode_matrix<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> EntryMatrix {
    m.to_rows().iter().map(|row| row.iter().map(|e| ring.format(e)).collect()).collect()
}

pub fn encode_vector<R: Ring>(ring: &R, v: &[R::Elem]) -> Vec<String> {
    v.iter().map(|e| ring.format(e)).collect()
}

impl FamilyFile {
    pub fn from_generators<R: Ring>(ring: &R, gens: &GeneratorSet<R::Elem>, mode: Mode) -> Self {
        FamilyFile {
            scalar: ring.descriptor().to_string(),
            n: gens.dim(),
            generators: gens.matrices().iter().map(|g| encode_matrix(ring, g)).collect(),
            mode: mode.name().to_owned(),
            tn_pairs: None,
            closure_bound: None,
            finite: None,
        }
    }

    pub fn from_tn_pairs<'a, R: Ring>(
        ring: &R,
        n: usize,
        pairs: impl IntoIterator<Item = (&'a Matrix<R::Elem>, &'a Matrix<R::Elem>)>,
    ) -> Self {
        FamilyFile {
            scalar: ring.descriptor().to_string(),
            n,
            generators: Vec::new(),
            mode: Mode::Tn.name().to_owned(),
            tn_pairs: Some(pairs.into_iter().map(|(t, m)| (encode_matrix(ring, t), encode_matrix(ring, m))).collect()),
            closure_bound: None,
            finite: None,
        }
    }

    pub fn to_json(&self) -> String {
        pretty(&serde_json::to_value(self).expect("family files serialize"))
    }
}

impl ChainFile {
    pub fn from_chain<R: Ring>(ring: &R, chain: &Chain<R::Elem>) -> Self {
        ChainFile {
            scalar: ring.descriptor().to_string(),
            n: chain.dim(),
            subspaces: chain
                .subspaces()
                .iter()
                .map(|s| s.basis().iter().map(|v| encode_vector(ring, v)).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        pretty(&serde_json::to_value(self).expect("chain files serialize"))
    }
}

/// Indented JSON with arrays of scalars kept on one line, so matrix rows
/// read as rows.
pub fn pretty(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let cells: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push_str(&format!("[{}]", cells.join(", ")));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(depth + 1), Value::String(k.clone())));
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

pub fn decode_chain<R: Ring>(ring: &R, src: &Source<'_, ChainFile>) -> Result<Chain<R::Elem>, Diagnostic> {
    let file = &src.doc;
    let mut subs = Vec::with_capacity(file.subspaces.len());
    for (j, basis) in file.subspaces.iter().enumerate() {
        let mut vectors = Vec::with_capacity(basis.len());
        for (k, v) in basis.iter().enumerate() {
            if v.len() != file.n {
                return Err(src.error_at(
                    "\"subspaces\"",
                    format!("subspaces[{j}][{k}]"),
                    None,
                    format!("vector has {} entries, expected {}", v.len(), file.n),
                ));
            }
            let parsed = v
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    ring.parse(s).map_err(|e| src.error_at_token(s, format!("subspaces[{j}][{k}][{i}]"), reason(&e)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            vectors.push(parsed);
        }
        let span = Subspace::span(ring, file.n, vectors);
        if span.dim() != basis.len() {
            return Err(src.error_at(
                "\"subspaces\"",
                format!("subspaces[{j}]"),
                None,
                format!("basis vectors of subspace {j} are linearly dependent"),
            ));
        }
        subs.push(span);
    }
    Chain::new(ring, subs).map_err(|e| src.error_at("\"subspaces\"", "subspaces", None, e.to_string()))
}
