//! All thirteen acceptance criteria at their stated tolerances.
//! Run with `cargo test -p ncdeform-cli --test acceptance -- --nocapture`.

use std::time::Instant;

use ncdeform_cli::suite::{run_criterion, run_suite, SuiteConfig, CRITERIA};

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let outcomes = run_suite(&SuiteConfig::default());
    for o in &outcomes {
        println!("criterion {:>2} {:<26} {}  {}", o.id, o.name, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("suite time {:.2?}", start.elapsed());
    assert_eq!(outcomes.len(), CRITERIA.len());
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn mutated_bracket_scale_fails_the_semiclassical_criterion() {
    // 1/(2π) instead of 1/(4π)
    let cfg = SuiteConfig { bracket_scale: 1.0 / (2.0 * std::f64::consts::PI), ..SuiteConfig::default() };
    let o = run_criterion(4, &cfg);
    println!("mutation control: criterion 4 {}  {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    assert!(!o.passed);
    assert!(o.detail.contains("not in"));
}

#[test]
fn partial_runs_match_the_full_run() {
    let full = run_suite(&SuiteConfig::default());
    let part = run_suite(&SuiteConfig { only: Some(vec![3, 8]), ..SuiteConfig::default() });
    assert_eq!(part.len(), 2);
    for o in part {
        assert_eq!(Some(&o), full.iter().find(|f| f.id == o.id));
    }
}

#[test]
fn other_seeds_pass_too() {
    for seed in [1, 2024] {
        let outcomes = run_suite(&SuiteConfig { seed, only: Some(vec![1, 2, 3, 5, 6, 7, 8, 9, 13]), ..SuiteConfig::default() });
        assert!(outcomes.iter().all(|o| o.passed), "seed {seed}: {outcomes:?}");
    }
}
