//! Closed-form predictions next to what the generator builds.

use hybridnet::closed_forms::{predict_clustering, predict_counts, predict_diameter, predict_n1, TableConvention};
use hybridnet::exact::rational_to_f64;
use hybridnet::generators::{generate_n, generate_n1, RuleConfig};

fn main() {
    let config = RuleConfig::default();
    for t in 0..=6 {
        let p = predict_counts(t).unwrap();
        let (g, _) = generate_n(t, &config).unwrap();
        let c = predict_clustering(t.max(1), TableConvention::GeneralRow).unwrap();
        println!(
            "t={t} predicted |V|={} |E|={} measured {}/{}  c_pred={:.4}{} D_pred={}",
            p.vertices.0,
            p.edges.0,
            g.vertex_count(),
            g.edge_count(),
            rational_to_f64(&c.average),
            if c.degenerate { " (degenerate)" } else { "" },
            predict_diameter(t)
        );
    }
    for t in 1..=6 {
        let (v, e) = predict_n1(t);
        let g = generate_n1(t).unwrap();
        println!("N1({t}): predicted {}/{} measured {}/{}", v.0, e.0, g.vertex_count(), g.edge_count());
    }
}
