//! Runs every acceptance criterion at its full bound and prints one line each.

use rauzy::verify::{run_criterion, VerifyConfig, CRITERIA};

#[test]
fn acceptance_suite() {
    let cfg = VerifyConfig::default();
    let mut failed = Vec::new();
    for &(id, _) in &CRITERIA {
        let report = run_criterion(id, &cfg);
        println!("{report}");
        if !report.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
