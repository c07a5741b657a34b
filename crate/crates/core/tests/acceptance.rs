//! The nine end-to-end checks with their runtime limits.
//! Prints one PASS/FAIL line per check and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Duration;

use macmahon::partitions::diagram_tuples;
use macmahon::suite;
use serde_json::{json, Value};

/// Pinned expectations on each check's report, beyond `passed`.
fn pinned(id: u8, d: &Value) -> Result<(), String> {
    let expect = |cond: bool, what: &str| if cond { Ok(()) } else { Err(what.to_string()) };
    match id {
        1 => expect(
            d["enumerated"] == json!(["1", "1", "3", "6", "13", "24", "48", "86", "160"]),
            "counts 1, 1, 3, 6, 13, 24, 48, 86, 160",
        ),
        2 => {
            expect(
                d["profile"] == json!({ "q": 6, "t": 6, "s": 6 }),
                "caps s, q, t = 6",
            )?;
            expect(
                d["num_partitions"] == 96,
                "96 plane partitions of weight ≤ 6",
            )
        }
        3 => {
            expect(d["l_order"] == 20, "L order 20")?;
            expect(
                d["num_partitions"] == 48,
                "48 plane partitions of weight ≤ 5",
            )
        }
        4 => {
            let cases = d.as_array().ok_or("array of cases")?;
            let ranks: Vec<&Value> = cases.iter().map(|c| &c["r"]).collect();
            expect(
                ranks == [&json!("1"), &json!("2"), &json!("3"), &json!("inf")],
                "ranks 1, 2, 3, inf",
            )?;
            expect(
                cases[..3]
                    .iter()
                    .all(|c| c["profile"] == json!({ "q": 10, "t": 6 })),
                "t ≤ 6, q ≤ 10",
            )?;
            expect(
                cases[3]["profile"] == json!({ "q": 8, "t": 5 }),
                "t ≤ 5, q ≤ 8 at r = inf",
            )
        }
        5 => expect(
            d["profile"] == json!({ "t": 6, "L": 10 }),
            "caps t = 6, L = 10",
        ),
        6 => expect(d["cases"] == 18, "r ≤ 3, n ≤ 5"),
        7 => {
            let expected: usize = (1..=3)
                .flat_map(|r| (0..=5).map(move |n| diagram_tuples(r, n).len()))
                .sum();
            expect(d["tuples"] == expected, "every tuple with r ≤ 3, n ≤ 5")
        }
        8 => {
            expect(d["budget"] == "100000000", "budget 10^8")?;
            expect(
                d["checked"].as_u64().unwrap_or(0) > 0,
                "some instances checked",
            )
        }
        9 => expect(
            d["classes"].as_u64().unwrap_or(0) > 0,
            "some classes checked",
        ),
        _ => Err("unknown check".into()),
    }
}

fn expected_limit(id: u8) -> Duration {
    Duration::from_secs(match id {
        1 => 5,
        2 => 60,
        3 => 30,
        4 => 60,
        5 => 30,
        6 => 30,
        7 => 30,
        8 => 600,
        9 => 30,
        _ => 0,
    })
}

fn main() -> ExitCode {
    let mut failed = 0;
    for id in suite::IDS {
        let o = suite::run(id);
        let problem = if !o.passed {
            Some(format!("check failed: {}", o.detail))
        } else if o.limit != expected_limit(id) {
            Some(format!("limit is {:?}", o.limit))
        } else if !o.within_limit() {
            Some(format!("exceeded limit: {:.2}s", o.elapsed.as_secs_f64()))
        } else {
            pinned(id, &o.detail).err().map(|w| format!("expected {w}"))
        };
        println!(
            "[{}] {} {:<16} {:>8.2}s (limit {}s)",
            if problem.is_none() { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.elapsed.as_secs_f64(),
            o.limit.as_secs()
        );
        if let Some(p) = problem {
            println!("    {p}");
            failed += 1;
        }
    }
    println!(
        "{} of {} checks passed",
        suite::IDS.len() - failed,
        suite::IDS.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
