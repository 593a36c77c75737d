//! Acceptance suite: runs every verification criterion at full population
//! size and prints one pass/fail line per criterion (visible with
//! `cargo test --test acceptance -- --nocapture`).

use boolcube::verify::{
    suite_corrected_chain, suite_energy_triple, suite_entropy, suite_fourfold_identity,
    suite_influence, suite_maj4, suite_norm_bound, suite_partition_ground_truths,
    suite_theorem1_literal, suite_transform, SuiteResult, VerifyConfig,
};
use std::time::{Duration, Instant};

fn full_config() -> VerifyConfig {
    VerifyConfig {
        exhaustive_n: 3,
        random_ns: (4..=10).collect(),
        samples: 1000,
        seed: 7,
        solver_budget: 2_000_000,
    }
}

struct Criterion {
    number: u32,
    result: SuiteResult,
    elapsed: Duration,
    /// Runtime target, where the criterion states one.
    time_limit: Option<Duration>,
}

fn run(number: u32, time_limit: Option<u64>, suite: impl FnOnce(&VerifyConfig) -> SuiteResult) -> Criterion {
    let cfg = full_config();
    let start = Instant::now();
    let result = suite(&cfg);
    Criterion {
        number,
        result,
        elapsed: start.elapsed(),
        time_limit: time_limit.map(Duration::from_secs),
    }
}

#[test]
fn acceptance_criteria() {
    let criteria = vec![
        run(1, Some(60), suite_energy_triple),
        run(2, None, suite_fourfold_identity),
        run(3, None, suite_transform),
        run(4, None, suite_influence),
        run(5, Some(120), suite_partition_ground_truths),
        run(6, None, suite_norm_bound),
        run(7, None, suite_corrected_chain),
        run(8, None, suite_theorem1_literal),
        run(9, None, suite_entropy),
        run(10, None, suite_maj4),
    ];

    let mut failed = Vec::new();
    for c in &criteria {
        let mut ok = c.result.passed();
        let mut timing = format!("{:.1}s", c.elapsed.as_secs_f64());
        if let Some(limit) = c.time_limit {
            timing.push_str(&format!(" (target {}s)", limit.as_secs()));
            if c.elapsed > limit {
                ok = false;
            }
        }
        println!(
            "criterion {:>2} [{}]: {} — {} cases, {timing}",
            c.number,
            c.result.name,
            if ok { "PASS" } else { "FAIL" },
            c.result.cases
        );
        for note in &c.result.notes {
            println!("               {note}");
        }
        for f in &c.result.failures {
            println!("               failure: {f}");
        }
        if !ok {
            failed.push(c.number);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
