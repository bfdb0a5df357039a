use hybridnet::generators::{generate_n, generate_n1, RuleConfig};
use hybridnet::spanning::max_leaf_with_count;

fn main() {
    let (n1, _) = generate_n(1, &RuleConfig::default()).unwrap();
    let (n2, _) = generate_n(2, &RuleConfig::default()).unwrap();
    let web = generate_n1(2).unwrap();
    for (name, g) in [("N(1)", &n1), ("N1(2)", &web), ("N(2)", &n2)] {
        let r = max_leaf_with_count(g, 200_000, 10_000_000).unwrap();
        println!(
            "{name}: max leaves {} (bound {}, exhaustive {}), optimal trees {:?}, nodes {}",
            r.max_leaves,
            r.upper_bound,
            r.exhaustive,
            r.count.map(|c| c.0.to_string()),
            r.expanded
        );
        println!("  witness edges {:?}", r.witness);
    }
}
