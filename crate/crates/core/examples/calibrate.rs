use hybridnet::generators::{calibrate_rules, hand_count_anchors, RuleConfig};

fn main() {
    let anchors = hand_count_anchors();
    let space = RuleConfig::space();
    let matches = calibrate_rules(&anchors, &space).unwrap();
    println!("{} of {} configurations reproduce the hand counts", matches.len(), space.len());
    for m in &matches {
        println!("  {}", m.fingerprint());
    }
    println!("default: {}", RuleConfig::default().fingerprint());
}
