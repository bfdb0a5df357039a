//! Grow N(t) under the default rules and print it in every export format.

use hybridnet::generators::{generate_n, generate_n1, RuleConfig};
use hybridnet::io::{export, Format, GraphMeta};

fn main() {
    let config = RuleConfig::default();
    for t in 0..=4 {
        let (g, trace) = generate_n(t, &config).expect("t within bound");
        let last = trace.steps.last().copied().unwrap_or_default();
        println!(
            "N({t}): |V|={} |E|={} pendants={} rectangles={}",
            g.vertex_count(),
            g.edge_count(),
            last.pendants,
            last.theta
        );
    }

    let (g, _) = generate_n(1, &config).unwrap();
    let meta = GraphMeta::new("n", 1, config.fingerprint());
    for format in [Format::Edgelist, Format::Dot] {
        println!("\n{}", export(&g, &meta, format).unwrap());
    }

    let web = generate_n1(3).unwrap();
    println!("N1(3): |V|={} |E|={}", web.vertex_count(), web.edge_count());
}
