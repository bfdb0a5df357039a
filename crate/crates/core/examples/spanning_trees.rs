//! Matrix-tree counts checked against enumeration, with the closed forms.

use hybridnet::closed_forms::{predict_spanning, TableConvention};
use hybridnet::generators::{generate_n, generate_n1, RuleConfig};
use hybridnet::spanning::{count_spanning_trees, enumerate_spanning_trees};
use hybridnet::closed_forms::trees::DEFAULT_MAX_BITS;

fn main() {
    let (n1, _) = generate_n(1, &RuleConfig::default()).unwrap();
    let web = generate_n1(2).unwrap();
    for (name, g) in [("N(1)", &n1), ("N1(2)", &web)] {
        let det = count_spanning_trees(g).unwrap();
        let en = enumerate_spanning_trees(g, 1_000_000).unwrap();
        println!("{name}: determinant {} enumeration {} leaves {:?}", det.count.0, en.count, en.leaf_histogram);
    }
    for t in 2..=3 {
        let (g, _) = generate_n(t, &RuleConfig::default()).unwrap();
        let measured = count_spanning_trees(&g).unwrap();
        let p = predict_spanning(t, TableConvention::GeneralRow, DEFAULT_MAX_BITS);
        println!("N({t}): measured {} predicted {:?}", measured.count.0, p.total.map(|v| v.value));
    }
}
