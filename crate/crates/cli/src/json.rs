//! JSON encodings shared by the subcommands.

use num_bigint::BigUint;
use serde_json::{json, Value};
use weyl_ellipsoid::linalg::Rational;
use weyl_ellipsoid::{CartanData, OrbitRecord, Poset, QuadForm};

const MAX_SAFE_INTEGER: u64 = (1 << 53) - 1;

/// A JSON number when it fits in 53 bits, otherwise a decimal string.
pub fn big(n: &BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) if v <= MAX_SAFE_INTEGER => json!(v),
        _ => json!(n.to_string()),
    }
}

pub fn rational(q: &Rational) -> Value {
    json!(q.to_string())
}

pub fn cartan(cd: &CartanData) -> Value {
    json!({
        "type": cd.spec.to_string(),
        "rank": cd.n,
        "cartan": cd.cartan,
        "weights": cd.weights,
        "delta": cd.delta.iter().map(rational).collect::<Vec<_>>(),
        "det": cd.det,
        "weyl_order": big(&cd.weyl_order()),
    })
}

pub fn quad_form(f: &QuadForm, equation: &str) -> Value {
    json!({
        "n": f.n,
        "diag": f.diag,
        "cross": f.cross,
        "linear": f.linear,
        "constant": f.constant,
        "equation": equation,
    })
}

pub fn orbits(type_name: &str, records: &[OrbitRecord]) -> Value {
    let orbits: Vec<Value> = records
        .iter()
        .map(|r| {
            let mut v = json!({
                "h": r.h,
                "minimal": r.minimal,
                "size": big(&r.size),
            });
            if let Some(els) = &r.elements {
                v["elements"] = json!(els);
            }
            v
        })
        .collect();
    json!({ "type": type_name, "orbits": orbits })
}

pub fn poset(p: &Poset) -> Value {
    json!({
        "nodes": p.nodes,
        "covers": p.covers.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        "kind": p.kind.as_str(),
    })
}
