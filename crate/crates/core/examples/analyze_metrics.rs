use hybridnet::exact::rational_to_f64;
use hybridnet::generators::{generate_n, RuleConfig};
use hybridnet::metrics::{clustering_report, degree_report, distance_report, powerlaw_fit, DistanceMode};

fn main() {
    let config = RuleConfig::default();
    println!("t\t|V|\tavg-deg\tclustering\tdiameter\tapl\tslope");
    for t in 1..=5 {
        let (g, _) = generate_n(t, &config).unwrap();
        let deg = degree_report(&g).unwrap();
        let c = clustering_report(&g);
        let mode = if t <= 4 { DistanceMode::Exact } else { DistanceMode::Sampled(64) };
        let d = distance_report(&g, mode).unwrap();
        let slope = powerlaw_fit(&deg.classes).map(|f| format!("{:.3}", f.slope)).unwrap_or_else(|_| "-".into());
        println!(
            "{t}\t{}\t{:.3}\t{:.4}\t\t{}\t\t{:.3}\t{slope}",
            g.vertex_count(),
            rational_to_f64(&deg.average_degree),
            rational_to_f64(&c.average),
            d.diameter,
            d.apl.as_f64()
        );
    }
}
