//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Duration;

use serde_json::Value;
use weilkit_cli::{run_suite, run_suite_timed, Report, SuiteOptions, DEFAULT_SEED};

struct Criterion {
    id: u32,
    check: &'static str,
    budget_secs: u64,
    summary: &'static str,
    /// Literal values the report data must carry.
    expected: fn(&Value) -> bool,
}

fn no_failures(d: &Value) -> bool {
    d["failures"].as_array().is_some_and(Vec::is_empty)
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        check: "dual_basis",
        budget_secs: 1,
        summary: "dual bases exact on {3,5,7,11} x {1,2,3} x {1,2,3}",
        expected: |d| d["configurations"] == 36 && no_failures(d),
    },
    Criterion {
        id: 2,
        check: "restriction_blocks",
        budget_secs: 1,
        summary: "AB = BA = I for r in {1,2}, n in {2,3}, l in {3,5,7}",
        expected: |d| d["configurations"] == 24 && no_failures(d),
    },
    Criterion {
        id: 3,
        check: "restriction_homomorphism",
        budget_secs: 5,
        summary: "restriction is a homomorphism, rational, det = norm, round trip",
        expected: |d| d["pairs_per_configuration"] == 100 && no_failures(d),
    },
    Criterion {
        id: 4,
        check: "trace_descent",
        budget_secs: 5,
        summary: "Tr(phi) = psi with a unique lift for x^2 - 1 and x^2 + 1 mod 5",
        expected: |d| {
            d.as_array().is_some_and(|rows| {
                rows.len() == 2
                    && rows
                        .iter()
                        .all(|r| r["forms"] == 50 && r["perturbation_detected"] == 50)
            })
        },
    },
    Criterion {
        id: 5,
        check: "nondegeneracy_components",
        budget_secs: 5,
        summary: "nondegeneracy by components agrees with brute force",
        expected: |d| {
            d["random"] == 50 && d["planted"] == 10 && d["discrepancies"].as_array().is_some_and(Vec::is_empty)
        },
    },
    Criterion {
        id: 6,
        check: "symplectic_orders",
        budget_secs: 60,
        summary: "|Sp_2(F_5)| = 120, |Sp_2(F_9)| = 720, |Sp_4(F_3)| = 51840",
        expected: |d| {
            let orders: Vec<u64> = d["groups"]
                .as_array()
                .unwrap()
                .iter()
                .map(|g| g["closure"].as_u64().unwrap())
                .collect();
            orders == [120, 720, 51840]
        },
    },
    Criterion {
        id: 7,
        check: "similitude_index",
        budget_secs: 30,
        summary: "[GSp_2(F_l) : F_l^x Sp_2(F_l)] = 2 for l in {3,5,7}",
        expected: |d| {
            d.as_array()
                .is_some_and(|rows| rows.len() == 3 && rows.iter().all(|r| r["index"] == 2))
        },
    },
    Criterion {
        id: 8,
        check: "crt_product",
        budget_secs: 30,
        summary: "Sp_2 over F_5[x]/(x^2 - 11) has order 14400, inert F_9 case 720",
        expected: |d| d["split"]["order"] == 14400 && d["inert"]["order"] == 720 && d["split"]["samples"] == 1000,
    },
    Criterion {
        id: 9,
        check: "lifting_criterion",
        budget_secs: 60,
        summary: "20 random lifts to Z/25 generate all 15000 elements; kernel 125",
        expected: |d| {
            d["trials"] == 20
                && d["orders"].as_array().is_some_and(|o| o.iter().all(|n| *n == 15000))
                && d["kernel"]["size"] == 125
        },
    },
    Criterion {
        id: 10,
        check: "type_ii_splitting",
        budget_secs: 5,
        summary: "type II splitting for h in {1,3}, l in {5,7}",
        expected: |d| {
            d.as_array()
                .is_some_and(|rows| rows.len() == 4 && rows.iter().all(|r| r["rank_w"] == 2 * r["h"].as_u64().unwrap()))
        },
    },
    Criterion {
        id: 11,
        check: "lie_restriction",
        budget_secs: 5,
        summary: "dim restricted sp_2 = 6, derived algebra commutes, brackets preserved",
        expected: |d| d["dim_restricted_sp2"] == 6 && d["derived_commutes"] == true && d["brackets_preserved"] == 20,
    },
    Criterion {
        id: 12,
        check: "commutants",
        budget_secs: 60,
        summary: "commutants of order 120 and 120^2 in Sp_4(F_5)",
        expected: |d| d["matrix_algebra"]["order"] == 120 && d["idempotent_pair"]["order"] == 14400,
    },
];

fn line(label: &str, ok: bool, summary: &str, detail: String) -> bool {
    println!("{} {label}: {summary} ({detail})", if ok { "PASS" } else { "FAIL" });
    ok
}

fn evaluate(report: &Report, times: &[(&str, Duration)]) -> Vec<bool> {
    CRITERIA
        .iter()
        .map(|c| {
            let check = report.check(c.check).expect("suite lists every criterion");
            let elapsed = times.iter().find(|t| t.0 == c.check).map_or(Duration::MAX, |t| t.1);
            let in_budget = elapsed <= Duration::from_secs(c.budget_secs);
            let values = (c.expected)(&check.data);
            let ok = check.passed() && values && in_budget;
            let detail = format!(
                "{} in {:.3} s, budget {} s{}",
                check.name,
                elapsed.as_secs_f64(),
                c.budget_secs,
                if values { "" } else { ", unexpected data" }
            );
            line(&format!("criterion {:>2}", c.id), ok, c.summary, detail)
        })
        .collect()
}

fn main() -> ExitCode {
    let opts = SuiteOptions {
        seed: DEFAULT_SEED,
        mutation: None,
    };
    let (first, times) = run_suite_timed(&opts);
    let mut results = evaluate(&first, &times);
    let a = first.to_canonical_json();
    let b = run_suite(DEFAULT_SEED).to_canonical_json();
    results.push(line(
        "criterion 13",
        a == b,
        "run_suite twice with one seed gives byte-identical reports",
        format!("{} bytes", a.len()),
    ));
    let extra_ok = first.checks.len() >= 12 && first.passed();
    results.push(line(
        "suite",
        extra_ok,
        "suite report passes overall with at least 12 named checks",
        format!("{} checks", first.checks.len()),
    ));
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} lines passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
