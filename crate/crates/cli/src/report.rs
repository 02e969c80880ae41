//! JSON and text rendering of decisions. Indices are 0-based in JSON and
//! 1-based in text.

use serde_json::{json, Value};

use framelab_core::wpr::{weakly_same_phase, Classification, ClassificationCase, Coefficient};
use framelab_core::{
    AmbiguityPair, Decision, ExactFrame, PartitionWitness, Rational, Vector, WeakPhaseRelation, Witness,
};

use crate::CliError;

pub fn rational_str(q: &Rational) -> String {
    q.to_string()
}

pub fn vector_json(v: &Vector<Rational>) -> Value {
    Value::from(v.iter().map(rational_str).collect::<Vec<_>>())
}

fn basis_json(b: &[Vector<Rational>]) -> Value {
    Value::from(b.iter().map(vector_json).collect::<Vec<_>>())
}

pub fn vector_text(v: &Vector<Rational>) -> String {
    format!("({})", v.iter().map(rational_str).collect::<Vec<_>>().join(", "))
}

pub fn one_based(idx: &[usize]) -> String {
    format!("{{{}}}", idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(", "))
}

pub fn relation_json(r: &WeakPhaseRelation) -> Value {
    match *r {
        WeakPhaseRelation::WeaklySamePhase { theta } => json!({"related": true, "theta": theta}),
        WeakPhaseRelation::NotWeaklyRelated { first, second } => {
            json!({"related": false, "coordinates": [first, second]})
        }
    }
}

pub fn pair_json(p: &AmbiguityPair) -> Value {
    let relation = weakly_same_phase(&p.x, &p.y).expect("pair vectors share a length");
    json!({
        "kind": "ambiguity-pair",
        "x": vector_json(&p.x),
        "y": vector_json(&p.y),
        "partition": p.partition,
        "signs": p.signs,
        "relation": relation_json(&relation),
    })
}

fn partition_json(w: &PartitionWitness, m: usize) -> Value {
    json!({
        "kind": "partition",
        "subset": w.subset,
        "complement": w.complement(m),
        "rank_subset": w.rank_subset,
        "rank_complement": w.rank_complement,
        "null_subset": basis_json(&w.null_subset),
        "null_complement": basis_json(&w.null_complement),
    })
}

pub fn witness_json(w: &Witness, frame: &ExactFrame) -> Value {
    match w {
        Witness::DependentSubset(s) => json!({"kind": "dependent-subset", "subset": s}),
        Witness::Partition(p) => partition_json(p, frame.len()),
        Witness::Ambiguity(p) => pair_json(p),
    }
}

pub fn witness_text(w: &Witness, frame: &ExactFrame) -> Vec<String> {
    match w {
        Witness::DependentSubset(s) => vec![format!("  dependent vectors {}", one_based(s))],
        Witness::Partition(p) => vec![format!(
            "  neither side spans: {} (rank {}) | {} (rank {})",
            one_based(&p.subset),
            p.rank_subset,
            one_based(&p.complement(frame.len())),
            p.rank_complement
        )],
        Witness::Ambiguity(p) => {
            let mut lines = vec![
                format!("  x = {}", vector_text(&p.x)),
                format!("  y = {}", vector_text(&p.y)),
                format!("  sign flips at vectors {}", one_based(&p.partition)),
            ];
            if let Ok(WeakPhaseRelation::NotWeaklyRelated { first, second }) = weakly_same_phase(&p.x, &p.y) {
                lines.push(format!("  phases disagree at coordinates {} and {}", first + 1, second + 1));
            }
            lines
        }
    }
}

/// JSON result entry and text lines for one decision. A `No` whose witness
/// does not re-verify is an error.
pub fn decision(check: &str, d: &Decision, frame: &ExactFrame) -> Result<(Value, Vec<String>), CliError> {
    let verified = d.verify_witness(frame);
    if d.is_no() && !verified {
        return Err(CliError::Verification(format!("{check}: {}", d.rule.code())));
    }
    let value = json!({
        "check": check,
        "outcome": d.outcome.to_string(),
        "rule": d.rule.code(),
        "rule_text": d.rule.to_string(),
        "witness": d.witness.as_ref().map_or(Value::Null, |w| witness_json(w, frame)),
        "verified": verified,
    });
    let mut text = vec![format!("{check}: {} [{}] {}", d.outcome, d.rule.code(), d.rule)];
    if let Some(w) = &d.witness {
        text.extend(witness_text(w, frame));
    }
    Ok((value, text))
}

pub fn coefficient_json(a: &Coefficient) -> Value {
    match a {
        Coefficient::Exact(q) => json!({"exact": rational_str(q), "approx": a.to_f64()}),
        Coefficient::Approximate(v) => json!({"exact": null, "approx": v}),
    }
}

fn case_str(c: ClassificationCase) -> &'static str {
    match c {
        ClassificationCase::Equal => "equal",
        ClassificationCase::Orthogonal => "orthogonal",
        ClassificationCase::General => "general",
    }
}

pub fn classification_json(c: &Classification) -> Value {
    json!({
        "case": case_str(c.case),
        "a": coefficient_json(&c.a),
        "I1": c.only_x,
        "I2": c.only_y,
        "I3": c.both_zero,
        "I4": c.scaled,
        "I5": c.inverse_scaled,
    })
}

pub fn classification_text(c: &Classification) -> Vec<String> {
    let a = match &c.a {
        Coefficient::Exact(q) => rational_str(q),
        Coefficient::Approximate(v) => format!("{v} (irrational)"),
    };
    let mut lines = vec![format!("case: {}", case_str(c.case)), format!("a = {a}")];
    for (i, set) in c.sets().iter().enumerate() {
        lines.push(format!("I{} = {}", i + 1, one_based(set)));
    }
    lines
}
