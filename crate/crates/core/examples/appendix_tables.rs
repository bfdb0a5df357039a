//! Degree tables of the Apollonian and Sierpinski networks, their cumulative
//! power-law fits and Zipf ratios.

use hybridnet::generators::{appendix_degree_table, AppendixModel};
use hybridnet::metrics::{powerlaw_fit, zipf_report, ZipfWeighting};

fn main() {
    let targets = [
        (AppendixModel::Apollonian, -(3f64.ln() / 2f64.ln())),
        (AppendixModel::Sierpinski, -(1.0 + 2f64.ln() / 3f64.ln())),
    ];
    for (model, target) in targets {
        let rows = appendix_degree_table(model, 10).unwrap();
        let fit = powerlaw_fit(&rows).unwrap();
        println!("{model:?} t=10: {} classes, slope {:.4} (asymptotic {:.4})", rows.len(), fit.slope, target);
        for w in [ZipfWeighting::VertexCount, ZipfWeighting::DegreeMass] {
            let z = zipf_report(&rows, 1.0, w).unwrap();
            println!(
                "  {w:?}: zipf-vs-cumulative slope {:.4}, ratio spread {:.4}",
                z.slope_vs_cumulative.unwrap_or(f64::NAN),
                z.spread
            );
        }
    }
}
