//! JSON renderings. Keys are sorted and big integers are decimal strings.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::fforacle::OracleReport;
use crate::motivic::{BbReport, SeriesComparison, StableClassEntry};
use crate::partitions::PlanePartition;
use crate::series::{
    Difference, Exponents, FactorProduct, TruncatedSeries, TruncationProfile, UniPoly, Var,
};
use crate::torus::{TangentCharacter, WeightTerm};

pub fn int(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn exponents(e: &Exponents) -> Value {
    let mut m = Map::new();
    for v in Var::ALL {
        if e[v.index()] != 0 {
            m.insert(v.name().into(), json!(e[v.index()]));
        }
    }
    Value::Object(m)
}

pub fn profile(p: &TruncationProfile) -> Value {
    let m: Map<String, Value> = p
        .vars()
        .map(|v| (v.name().into(), json!(p.cap(v).unwrap())))
        .collect();
    Value::Object(m)
}

pub fn series(s: &TruncatedSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(e, c)| json!({ "exponents": exponents(&e), "coeff": int(c) }))
        .collect();
    json!({ "profile": profile(s.profile()), "terms": terms })
}

/// Coefficients from degree 0 upward.
pub fn poly(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(int).collect())
}

pub fn factors(f: &FactorProduct) -> Value {
    let atoms: Vec<Value> = f
        .factors()
        .map(|(e, m)| json!({ "exponents": exponents(e), "multiplicity": m }))
        .collect();
    let mono = f.monomial_exponents();
    let mut monomial = Map::new();
    for v in Var::ALL {
        if mono[v.index()] != 0 {
            monomial.insert(v.name().into(), json!(mono[v.index()]));
        }
    }
    json!({
        "display": f.to_string(),
        "negative": f.is_negative(),
        "monomial": monomial,
        "factors": atoms,
    })
}

pub fn difference(d: &Option<Difference>) -> Value {
    match d {
        None => Value::Null,
        Some(d) => {
            json!({ "exponents": exponents(&d.exponents), "lhs": int(&d.left), "rhs": int(&d.right) })
        }
    }
}

pub fn comparison(c: &SeriesComparison) -> Value {
    json!({
        "match": c.matches(),
        "num_partitions": c.terms,
        "profile": profile(c.lhs.profile()),
        "first_difference": difference(&c.first_difference),
    })
}

pub fn bb(r: &BbReport) -> Value {
    json!({
        "match": r.matches(),
        "r": r.r,
        "n": r.n,
        "components": r.components,
        "lhs": poly(&r.lhs),
        "rhs": poly(&r.rhs),
        "lhs_display": r.lhs.to_string(),
        "rhs_display": r.rhs.to_string(),
    })
}

pub fn stable_class_entry(e: &StableClassEntry) -> Value {
    json!({
        "partition": e.partition.to_string(),
        "match": e.matches(),
        "factored_equal": e.factored_equal,
        "first_difference": difference(&e.first_difference),
    })
}

pub fn partition(pi: &PlanePartition) -> Value {
    Value::String(pi.to_string())
}

pub fn weight_term(w: &WeightTerm, alpha: i64) -> Value {
    json!({
        "source": w.source,
        "target": w.target,
        "k1": w.k1,
        "k2": w.k2,
        "pairing": w.pairing(alpha),
    })
}

pub fn tangent(ch: &TangentCharacter, alpha: i64) -> Value {
    json!({
        "rank": ch.rank,
        "alpha": alpha,
        "weights": ch.terms.iter().map(|w| weight_term(w, alpha)).collect::<Vec<_>>(),
        "positive": ch.positive(alpha),
        "negative": ch.negative(alpha),
        "neutral": ch.neutral(alpha),
    })
}

pub fn oracle(r: &OracleReport) -> Value {
    json!({
        "count": r.count.to_string(),
        "predicted": int(&r.predicted),
        "match": r.matches(),
    })
}

/// Pretty-printed, followed by a newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
