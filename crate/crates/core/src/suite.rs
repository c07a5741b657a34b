//! The desk-scale check suite: nine end-to-end checks, each with a runtime limit.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::Result;
use crate::fforacle::{
    count_chain_points, oracle_vs_class, surjective_matrices, ChainInstance, FpMatrix,
    QuiverInstance, DEFAULT_BUDGET,
};
use crate::json;
use crate::motivic::{
    bb_identity_check, class_fixed_component, class_surjective_chain, corollary_check,
    stable_class_check, theorem3_check, Rank,
};
use crate::partitions::{
    diagram_tuples, partition_of_tuple, partitions_bounded, plane_partitions,
    plane_partitions_up_to, YoungDiagram,
};
use crate::series::{exps, TruncationProfile, Var};
use crate::torus::{d_plus_formula, default_alpha, tangent_character};
use crate::vuletic;

/// Number of `h` choices tried per chain when not all of them are.
pub const H_SAMPLES: usize = 6;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Outcome {
    pub fn within_limit(&self) -> bool {
        self.elapsed < self.limit
    }

    /// `passed` and within the runtime limit.
    pub fn ok(&self) -> bool {
        self.passed && self.within_limit()
    }

    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "limit_seconds": self.limit.as_secs(),
            "detail": self.detail,
        });
        if timing {
            v["elapsed_seconds"] = json!(self.elapsed.as_secs_f64());
        }
        v
    }
}

pub const IDS: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

pub fn name(id: u8) -> &'static str {
    match id {
        1 => "macmahon",
        2 => "vuletic",
        3 => "stable_class",
        4 => "rank_series",
        5 => "stable_series",
        6 => "bb",
        7 => "tangent",
        8 => "fforacle",
        9 => "class_structure",
        _ => "unknown",
    }
}

pub fn limit(id: u8) -> Duration {
    Duration::from_secs(match id {
        1 => 5,
        2 | 4 => 60,
        8 => 600,
        _ => 30,
    })
}

/// Runs one check. Errors from the engine count as failures.
pub fn run(id: u8) -> Outcome {
    let start = Instant::now();
    let result = match id {
        1 => macmahon(),
        2 => vuletic_identity(),
        3 => stable_class(),
        4 => rank_series(),
        5 => stable_series(),
        6 => bb(),
        7 => tangent(),
        8 => fforacle(),
        9 => class_structure(),
        _ => Ok((false, json!({ "error": format!("no check with id {id}") }))),
    };
    let elapsed = start.elapsed();
    let (passed, detail) = result.unwrap_or_else(|e| (false, json!({ "error": e.to_string() })));
    Outcome {
        id,
        name: name(id),
        passed,
        detail,
        elapsed,
        limit: limit(id),
    }
}

/// Runs every check in order.
pub fn run_all() -> Vec<Outcome> {
    IDS.iter().map(|&id| run(id)).collect()
}

type Check = Result<(bool, Value)>;

const MACMAHON_ORDER: u32 = 8;

fn macmahon() -> Check {
    let enumerated: Vec<BigInt> = (0..=MACMAHON_ORDER)
        .map(|n| BigInt::from(plane_partitions(n, None).len()))
        .collect();
    let s = vuletic::macmahon_factors(MACMAHON_ORDER)
        .expand(&TruncationProfile::new(&[(Var::S, MACMAHON_ORDER)]))?;
    let expanded: Vec<BigInt> = (0..=MACMAHON_ORDER)
        .map(|k| s.coeff(&exps(&[(Var::S, k)])))
        .collect();
    Ok((
        enumerated == expanded,
        json!({
            "enumerated": enumerated.iter().map(json::int).collect::<Vec<_>>(),
            "expanded": expanded.iter().map(json::int).collect::<Vec<_>>(),
        }),
    ))
}

fn vuletic_identity() -> Check {
    let profile = TruncationProfile::new(&[(Var::Q, 6), (Var::T, 6), (Var::S, 6)]);
    let lhs = vuletic::lhs(&profile)?;
    let rhs = vuletic::rhs(&profile)?;
    let diff = lhs.first_difference(&rhs)?;
    Ok((
        diff.is_none(),
        json!({
            "profile": json::profile(&profile),
            "num_partitions": plane_partitions_up_to(6, None).len(),
            "first_difference": json::difference(&diff),
        }),
    ))
}

fn stable_class() -> Check {
    let entries = stable_class_check(5, 20)?;
    let failures: Vec<Value> = entries
        .iter()
        .filter(|e| !e.matches())
        .map(json::stable_class_entry)
        .collect();
    Ok((
        failures.is_empty(),
        json!({
            "max_weight": 5,
            "l_order": 20,
            "num_partitions": entries.len(),
            "factored_equal": entries.iter().filter(|e| e.factored_equal).count(),
            "failures": failures,
        }),
    ))
}

fn rank_series() -> Check {
    let cases = [
        (Rank::Finite(1), 6, 10),
        (Rank::Finite(2), 6, 10),
        (Rank::Finite(3), 6, 10),
        (Rank::Infinite, 5, 8),
    ];
    let results = cases
        .par_iter()
        .map(|&(r, t, q)| {
            let c = theorem3_check(r, t, q)?;
            let mut v = json::comparison(&c);
            v["r"] = json!(r.to_string());
            Ok((c.matches(), v))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        results.iter().all(|(ok, _)| *ok),
        Value::Array(results.into_iter().map(|(_, v)| v).collect()),
    ))
}

fn stable_series() -> Check {
    let c = corollary_check(6, 10)?;
    Ok((c.matches(), json::comparison(&c)))
}

fn bb() -> Check {
    let cases: Vec<(u32, u32)> = (1..=3).flat_map(|r| (0..=5).map(move |n| (r, n))).collect();
    let reports = cases
        .par_iter()
        .map(|&(r, n)| bb_identity_check(r, n))
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<Value> = reports
        .iter()
        .filter(|r| !r.matches())
        .map(json::bb)
        .collect();
    Ok((
        failures.is_empty(),
        json!({ "cases": reports.len(), "failures": failures }),
    ))
}

fn tangent() -> Check {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for r in 1..=3usize {
        for n in 0..=5u32 {
            for d in diagram_tuples(r, n) {
                let pi = partition_of_tuple(&d)?;
                let ch = tangent_character(&d);
                let expected = d_plus_formula(&pi, r as u32)? as usize;
                let size_ok = ch.len() == 2 * r * n as usize;
                let alphas = default_alpha(n as u64)..=(2 * n as i64 + 4);
                let bad_alpha: Vec<i64> = alphas.filter(|&a| ch.positive(a) != expected).collect();
                if !size_ok || !bad_alpha.is_empty() {
                    failures.push(json!({
                        "tuple": d.to_string(),
                        "size": ch.len(),
                        "expected_d_plus": expected,
                        "failing_alphas": bad_alpha,
                    }));
                }
                checked += 1;
            }
        }
    }
    Ok((
        failures.is_empty(),
        json!({ "tuples": checked, "failures": failures }),
    ))
}

/// Chains `ν ⊆ μ` with `μ₁ ≤ 3` and at most two parts.
pub fn oracle_chains() -> Vec<(YoungDiagram, YoungDiagram)> {
    let mut out = Vec::new();
    for w in 1..=6 {
        for mu in partitions_bounded(w, 3)
            .into_iter()
            .filter(|m| m.len() <= 2)
        {
            for vw in 0..=mu.weight() as u32 {
                for nu in partitions_bounded(vw, mu.row(0)) {
                    if nu.len() <= mu.len() && (0..mu.len()).all(|i| nu.row(i) <= mu.row(i)) {
                        out.push((mu.clone(), nu));
                    }
                }
            }
        }
    }
    out
}

/// Every surjective `h` when there are at most [`H_SAMPLES`], otherwise an
/// evenly spaced selection that includes the first and last.
fn h_choices(p: u8, rows: usize, cols: usize) -> Vec<FpMatrix> {
    let all = surjective_matrices(p, rows, cols);
    if all.len() <= H_SAMPLES {
        return all;
    }
    let step = (all.len() - 1) as f64 / (H_SAMPLES - 1) as f64;
    (0..H_SAMPLES)
        .map(|k| all[(k as f64 * step).round() as usize].clone())
        .collect()
}

fn fforacle() -> Check {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let mut skipped = Vec::new();
    for p in [2u32, 3] {
        for pi in plane_partitions_up_to(4, None) {
            let inst = QuiverInstance::Grid {
                partition: pi.clone(),
                p,
            };
            if inst.raw_size()? > DEFAULT_BUDGET as u128 {
                skipped.push(json!({ "grid": pi.to_string(), "p": p }));
                continue;
            }
            let report = oracle_vs_class(&inst, DEFAULT_BUDGET)?;
            if !report.matches() {
                failures.push(
                    json!({ "grid": pi.to_string(), "p": p, "report": json::oracle(&report) }),
                );
            }
            checked += 1;
        }
    }
    let chains = oracle_chains();
    for p in [2u32, 3] {
        let results = chains
            .par_iter()
            .map(|(mu, nu)| chain_case(p, mu, nu))
            .collect::<Result<Vec<_>>>()?;
        for (mu, nu, outcome) in results {
            match outcome {
                ChainOutcome::Skipped => skipped.push(json!({ "mu": mu, "nu": nu, "p": p })),
                ChainOutcome::Checked { counts, predicted } => {
                    checked += 1;
                    if counts.iter().any(|c| BigInt::from(*c) != predicted) {
                        failures.push(json!({
                            "mu": mu,
                            "nu": nu,
                            "p": p,
                            "counts": counts.iter().map(u64::to_string).collect::<Vec<_>>(),
                            "predicted": json::int(&predicted),
                        }));
                    }
                }
            }
        }
    }
    Ok((
        failures.is_empty(),
        json!({
            "budget": DEFAULT_BUDGET.to_string(),
            "checked": checked,
            "skipped": skipped,
            "failures": failures,
        }),
    ))
}

enum ChainOutcome {
    Skipped,
    Checked { counts: Vec<u64>, predicted: BigInt },
}

fn chain_case(
    p: u32,
    mu: &YoungDiagram,
    nu: &YoungDiagram,
) -> Result<(String, String, ChainOutcome)> {
    let base = ChainInstance::with_projections(p, mu.clone(), nu.clone())?;
    let label = (mu.to_string(), nu.to_string());
    if base.raw_size() > DEFAULT_BUDGET as u128 {
        return Ok((label.0, label.1, ChainOutcome::Skipped));
    }
    let predicted = class_surjective_chain(mu, nu)?.evaluate(p as i64)?;
    let instances = if mu.len() == 2 {
        h_choices(p as u8, nu.row(1) as usize, nu.row(0) as usize)
            .into_iter()
            .map(|h| ChainInstance::new(p, mu.clone(), nu.clone(), vec![h]))
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![base]
    };
    let counts = instances
        .iter()
        .map(|inst| count_chain_points(inst, DEFAULT_BUDGET))
        .collect::<Result<Vec<_>>>()?;
    Ok((
        label.0,
        label.1,
        ChainOutcome::Checked { counts, predicted },
    ))
}

fn class_structure() -> Check {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for r in 1..=4 {
        for pi in plane_partitions_up_to(5, Some(r)) {
            let class = class_fixed_component(r, &pi)?;
            let ok = class
                .polynomial()
                .is_some_and(|p| p.has_nonnegative_coeffs() && p.coeff(0) == BigInt::from(1));
            if !ok {
                failures.push(json!({ "r": r, "partition": pi.to_string(), "class": class.factors().to_string() }));
            }
            checked += 1;
        }
    }
    Ok((
        failures.is_empty(),
        json!({ "classes": checked, "failures": failures }),
    ))
}
