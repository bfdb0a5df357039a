//! Build a discrepancy report for N(t) and summarize it per item.

use hybridnet::generators::RuleConfig;
use hybridnet::verify::{verify_model, VerifyOptions};

fn main() {
    let t = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let report = verify_model(t, &RuleConfig::default(), &VerifyOptions::default()).unwrap();
    for item in &report.items {
        println!(
            "{:<28} {:<13} hard={:<5} predicted={:<14} measured={}",
            item.name,
            format!("{:?}", item.status),
            item.hard,
            item.predicted.as_deref().unwrap_or("-"),
            item.measured.as_deref().unwrap_or("-"),
        );
    }
    println!("hard failures: {}", report.hard_failures);
}
