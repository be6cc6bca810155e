//! Human-readable and JSON reports.

use serde_json::{json, Value};

use super::files::{encode_matrix, encode_vector, pretty, ChainFile};
use crate::linalg::{Matrix, Spectral};
use crate::scalars::Ring;
use crate::triangularize::{Irreducibility, Outcome, Payload, Scope, Verdict, Witness};

pub fn vector<R: Ring>(ring: &R, v: &[R::Elem]) -> String {
    format!("({})", encode_vector(ring, v).join(", "))
}

fn matrix_lines<R: Ring>(ring: &R, m: &Matrix<R::Elem>, indent: &str) -> String {
    let rows = encode_matrix(ring, m);
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
            format!("{indent}[{}]\n", cells.join(" "))
        })
        .collect()
}

fn to_json(v: Value) -> String {
    pretty(&v)
}

pub fn outcome<R: Ring>(ring: &R, o: &Outcome<R::Elem>, as_json: bool) -> String {
    let steps: Vec<String> = o.steps.iter().map(ToString::to_string).collect();
    if as_json {
        let mut v = json!({ "mode": o.mode.name(), "steps": steps });
        match &o.verdict {
            Verdict::Triangularizable(chain) => {
                v["verdict"] = json!("triangularizable");
                v["chain"] = serde_json::to_value(ChainFile::from_chain(ring, chain)).expect("serializable");
            }
            Verdict::NotTriangularizable(w) => {
                v["verdict"] = json!("not_triangularizable");
                v["witness"] = witness_json(ring, w);
            }
        }
        return to_json(v);
    }
    let mut s = String::new();
    match &o.verdict {
        Verdict::Triangularizable(chain) => {
            s.push_str(&format!("triangularizable (mode {})\n", o.mode));
            s.push_str("proof:\n");
            for step in &steps {
                s.push_str(&format!("  {step}\n"));
            }
            s.push_str("chain basis (V_j is spanned by b1..bj):\n");
            for (j, b) in chain.adapted_basis(ring).columns().iter().enumerate() {
                s.push_str(&format!("  b{} = {}\n", j + 1, vector(ring, b)));
            }
        }
        Verdict::NotTriangularizable(w) => {
            s.push_str(&format!("not triangularizable (mode {})\n", o.mode));
            if !steps.is_empty() {
                s.push_str("proof:\n");
                for step in &steps {
                    s.push_str(&format!("  {step}\n"));
                }
            }
            s.push_str(&witness_text(ring, w, o.mode.name()));
        }
    }
    s
}

fn witness_text<R: Ring>(ring: &R, w: &Witness<R::Elem>, mode: &str) -> String {
    let mut s = format!("witness: {}\n", w.kind);
    match w.scope {
        Scope::Triangularizability => s.push_str("  refutes: triangularizability\n"),
        Scope::Hypothesis => s.push_str(&format!(
            "  refutes: the hypothesis of mode {mode} (the family may still be triangularizable)\n"
        )),
    }
    if let Some(d) = w.block_dim {
        s.push_str(&format!("  found in a block of dimension {d}\n"));
    }
    match &w.payload {
        Payload::Element { matrix, word } => {
            if let Some(word) = word {
                s.push_str(&format!("  word: {word}\n"));
            }
            s.push_str("  matrix:\n");
            s.push_str(&matrix_lines(ring, matrix, "    "));
        }
        Payload::StackedKernel { matrix } => {
            s.push_str("  stacked matrix with zero kernel:\n");
            s.push_str(&matrix_lines(ring, matrix, "    "));
        }
        Payload::Escape { matrix, subspace, vector: v } => {
            s.push_str("  matrix:\n");
            s.push_str(&matrix_lines(ring, matrix, "    "));
            s.push_str(&format!("  moves {} out of the subspace spanned by\n", vector(ring, v)));
            for b in subspace.basis() {
                s.push_str(&format!("    {}\n", vector(ring, b)));
            }
        }
        Payload::Commutator { t_index, n_index, commutator } => {
            s.push_str(&format!("  T{} N{} - N{} T{} =\n", t_index + 1, n_index + 1, n_index + 1, t_index + 1));
            s.push_str(&matrix_lines(ring, commutator, "    "));
        }
    }
    if !w.note.is_empty() {
        s.push_str(&format!("  note: {}\n", w.note));
    }
    s
}

fn witness_json<R: Ring>(ring: &R, w: &Witness<R::Elem>) -> Value {
    let scope = match w.scope {
        Scope::Triangularizability => "triangularizability",
        Scope::Hypothesis => "hypothesis",
    };
    let mut v = json!({ "kind": w.kind.name(), "scope": scope, "note": w.note });
    if let Some(d) = w.block_dim {
        v["block_dim"] = json!(d);
    }
    match &w.payload {
        Payload::Element { matrix, word } => {
            v["matrix"] = json!(encode_matrix(ring, matrix));
            if let Some(word) = word {
                v["word"] = json!(word.to_string());
            }
        }
        Payload::StackedKernel { matrix } => v["matrix"] = json!(encode_matrix(ring, matrix)),
        Payload::Escape { matrix, subspace, vector: x } => {
            v["matrix"] = json!(encode_matrix(ring, matrix));
            v["vector"] = json!(encode_vector(ring, x));
            let basis: Vec<Vec<String>> = subspace.basis().iter().map(|b| encode_vector(ring, b)).collect();
            v["subspace"] = json!(basis);
        }
        Payload::Commutator { t_index, n_index, commutator } => {
            v["t_index"] = json!(t_index);
            v["n_index"] = json!(n_index);
            v["commutator"] = json!(encode_matrix(ring, commutator));
        }
    }
    v
}

pub fn rejected_pairs<R: Ring>(ring: &R, w: &Witness<R::Elem>, as_json: bool) -> String {
    if as_json {
        return to_json(json!({ "mode": "tn", "verdict": "rejected", "witness": witness_json(ring, w) }));
    }
    format!("rejected (mode tn): the pairs violate the T + N hypothesis\n{}", witness_text(ring, w, "tn"))
}

pub fn irreducibility<R: Ring>(ring: &R, result: &Irreducibility<R::Elem>, as_json: bool) -> String {
    let (verdict, basis) = match result {
        Irreducibility::Reducible(w) => ("reducible", Some(w.basis())),
        Irreducibility::Irreducible => ("irreducible", None),
        Irreducibility::Undetermined => ("undetermined", None),
    };
    if as_json {
        let mut v = json!({ "mode": "irreducible", "verdict": verdict });
        if let Some(b) = basis {
            let vecs: Vec<Vec<String>> = b.iter().map(|x| encode_vector(ring, x)).collect();
            v["invariant_subspace"] = json!(vecs);
        }
        return to_json(v);
    }
    let mut s = format!("{verdict} (mode irreducible)\n");
    if let Some(b) = basis {
        s.push_str(&format!("invariant subspace of dimension {}:\n", b.len()));
        for x in b {
            s.push_str(&format!("  {}\n", vector(ring, x)));
        }
    }
    s
}

/// `"3"` for a singleton central spectrum, otherwise `"none (spectrum {..})"`
/// listing the central eigenvalues found.
pub fn spectrum<R: Spectral>(ring: &R, g: &Matrix<R::Elem>) -> String {
    if let Some(c) = ring.central_spectrum(g) {
        return ring.format(&c);
    }
    if ring.has_noncentral_scalar_part(g) {
        return "none (non-central scalar part)".into();
    }
    let eig = ring.central_eigenvalues(g);
    let values: Vec<String> = eig.values.iter().map(|(v, _)| ring.format(v)).collect();
    let rest = if eig.split { "" } else { " plus eigenvalues outside the field" };
    format!("none (spectrum {{{}}}{rest})", values.join(","))
}
