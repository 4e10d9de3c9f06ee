use serde_json::{json, Map, Value};

use antimorph_core::anchors;
use antimorph_core::{Certificate, Mode, Verdict};

pub fn mode(m: &Mode) -> Value {
    match m {
        Mode::Predicate => json!({ "kind": "predicate" }),
        Mode::Exhaustive { pairs } => json!({ "kind": "exhaustive", "pairs": pairs }),
        Mode::BasisPairs { pairs } => json!({ "kind": "basis_pairs", "pairs": pairs }),
        Mode::Sampled { count, seed } => json!({ "kind": "sampled", "count": count, "seed": hex(*seed) }),
    }
}

pub fn hex(seed: u64) -> String {
    format!("{seed:#x}")
}

pub fn certificate(c: &Certificate) -> Value {
    let conditions: Vec<Value> = c
        .conditions
        .iter()
        .map(|cond| {
            let mut o = Map::new();
            o.insert("name".into(), json!(cond.name));
            o.insert("anchor".into(), json!(anchors::statement(cond.name)));
            o.insert("ok".into(), json!(cond.ok));
            if let Some(w) = &cond.witness {
                o.insert("witness".into(), json!(w));
            }
            Value::Object(o)
        })
        .collect();
    let mut o = Map::new();
    o.insert("conditions".into(), Value::Array(conditions));
    o.insert(
        "verdict".into(),
        match &c.verdict {
            Verdict::Valid => json!("valid"),
            Verdict::Invalid(_) => json!("invalid"),
        },
    );
    if let Verdict::Invalid(name) = &c.verdict {
        o.insert("failed".into(), json!(name));
    }
    o.insert("mode".into(), mode(&c.mode));
    if let Mode::Sampled { seed, .. } = c.mode {
        o.insert("seed".into(), json!(hex(seed)));
    }
    if let Some(w) = &c.witness {
        o.insert("witness".into(), json!(w));
    }
    if !c.flags.is_empty() {
        let flags: Map<String, Value> = c.flags.iter().map(|(k, v)| ((*k).into(), json!(v))).collect();
        o.insert("flags".into(), Value::Object(flags));
    }
    Value::Object(o)
}

/// Anchor id with its statement, for results that cite a reason.
pub fn anchor(id: &str) -> Value {
    json!({ "name": id, "anchor": anchors::statement(id) })
}
