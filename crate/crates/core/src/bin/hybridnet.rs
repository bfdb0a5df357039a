use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hybridnet::closed_forms::{self, iterate_mobius, solve_mobius, MobiusRecurrence, TableConvention};
use hybridnet::exact::{parse_rational, rational_to_f64, rational_to_string};
use hybridnet::generators::{self, Anchor, AppendixModel, RuleConfig};
use hybridnet::graph::LabeledGraph;
use hybridnet::io::{self, Format, GraphMeta};
use hybridnet::metrics::{self, DistanceMode, ZipfWeighting};
use hybridnet::spanning;
use hybridnet::verify::{verify_model, CheckGroup, VerifyOptions};

#[derive(Parser)]
#[command(name = "hybridnet", version, about = "Hybrid-growth network generator and checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    N,
    N1,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableModel {
    Apollonian,
    Sierpinski,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Edgelist,
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate N(t) or the pseudofractal web N1(t).
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        t: u32,
        /// Rule configuration as JSON (default: the calibrated rules).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: OutFormat,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree tables of the Apollonian and Sierpinski networks, with fits.
    Tables {
        #[arg(long, value_enum)]
        model: TableModel,
        #[arg(long)]
        t: u32,
    },
    /// Degree, clustering, Zipf and distance statistics of a graph file.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, conflicts_with = "sample")]
        exact_apl: bool,
        /// Number of BFS sources for sampled distances.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Closed-form predictions for N(t).
    Predict {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        row_literal: bool,
    },
    /// Solve a_{n+1} = (p a_n + q)/(r a_n + s); values accept `p/q`.
    Recurrence {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        #[arg(long)]
        n: usize,
    },
    /// Spanning-tree count by determinant, optionally by enumeration.
    Spanning {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        enumerate_cap: Option<u64>,
    },
    /// Maximum-leaf spanning tree by branch and bound.
    Mlst {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Measured-vs-predicted report; exits 1 on a hard mismatch.
    Verify {
        #[arg(long)]
        t: u32,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        groups: Vec<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List rule configurations reproducing the anchors in a JSON file.
    Calibrate {
        #[arg(long)]
        anchors: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Hard(String),
}

type Run = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Run {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn load_config(path: Option<&Path>) -> Result<RuleConfig, Failure> {
    let config = match path {
        Some(p) => serde_json::from_str(&read(p)?).map_err(usage)?,
        None => RuleConfig::default(),
    };
    config.validate().map_err(usage)?;
    Ok(config)
}

fn load_graph(path: &Path) -> Result<LabeledGraph, Failure> {
    let text = read(path)?;
    io::import(&text, io::sniff(&text)).map(|(g, _)| g).map_err(usage)
}

fn gen(model: Model, t: u32, config: Option<&Path>, format: OutFormat, out: Option<&Path>) -> Run {
    let (g, meta) = match model {
        Model::N => {
            let config = load_config(config)?;
            let (g, _) = generators::generate_n(t, &config).map_err(usage)?;
            (g, GraphMeta::new("n", t, config.fingerprint()))
        }
        Model::N1 => (generators::generate_n1(t).map_err(usage)?, GraphMeta::new("n1", t, "none")),
    };
    let format = match format {
        OutFormat::Edgelist => Format::Edgelist,
        OutFormat::Dot => Format::Dot,
        OutFormat::Json => Format::Json,
    };
    emit(out, &io::export(&g, &meta, format).map_err(usage)?)
}

fn tables(model: TableModel, t: u32) -> Run {
    let m = match model {
        TableModel::Apollonian => AppendixModel::Apollonian,
        TableModel::Sierpinski => AppendixModel::Sierpinski,
    };
    let rows = generators::appendix_degree_table(m, t).map_err(usage)?;
    println!("rank\tdegree\tcount");
    for r in &rows {
        println!("{}\t{}\t{}", r.rank, r.degree, r.count);
    }
    if let Ok(fit) = metrics::powerlaw_fit(&rows) {
        println!("cumulative slope\t{:.6}", fit.slope);
    }
    if let Ok(z) = metrics::zipf_report(&rows, 1.0, ZipfWeighting::VertexCount) {
        if let Some(s) = z.slope_vs_cumulative {
            println!("zipf-vs-cumulative slope\t{s:.6}");
        }
        println!("zipf ratio spread\t{:.6}", z.spread);
    }
    Ok(())
}

fn analyze(input: &Path, exact: bool, sample: Option<usize>) -> Run {
    let g = load_graph(input)?;
    let mode = match (exact, sample) {
        (_, Some(k)) => DistanceMode::Sampled(k),
        _ => DistanceMode::Exact,
    };
    let a = metrics::analyze(&g, mode).map_err(usage)?;
    emit(None, &json(&a))
}

fn predict(t: u32, row_literal: bool) -> Run {
    let conv = if row_literal {
        TableConvention::RowLiteral
    } else {
        TableConvention::GeneralRow
    };
    let p = closed_forms::predict_all(t, conv, closed_forms::trees::DEFAULT_MAX_BITS).map_err(usage)?;
    emit(None, &json(&p))
}

#[derive(Serialize)]
struct RecurrenceOut {
    solution: closed_forms::MobiusSolution,
    direct: Option<String>,
    direct_f64: Option<f64>,
}

fn recurrence(p: &str, q: &str, r: &str, s: &str, a1: &str, n: usize) -> Run {
    let rec = MobiusRecurrence {
        p: parse_rational(p).map_err(usage)?,
        q: parse_rational(q).map_err(usage)?,
        r: parse_rational(r).map_err(usage)?,
        s: parse_rational(s).map_err(usage)?,
        a1: parse_rational(a1).map_err(usage)?,
    };
    let solution = solve_mobius(&rec, n).map_err(usage)?;
    let direct = (n <= closed_forms::mobius::EXACT_POLE_CHECK)
        .then(|| iterate_mobius(&rec, n).ok())
        .flatten()
        .and_then(|v| v.last().cloned());
    emit(
        None,
        &json(&RecurrenceOut {
            solution,
            direct_f64: direct.as_ref().map(rational_to_f64),
            direct: direct.as_ref().map(rational_to_string),
        }),
    )
}

#[derive(Serialize)]
struct SpanningOut {
    determinant: spanning::SpanningCount,
    enumeration: Option<spanning::Enumeration>,
}

fn spanning_cmd(input: &Path, cap: Option<u64>) -> Run {
    let g = load_graph(input)?;
    let determinant = spanning::count_spanning_trees(&g).map_err(usage)?;
    let enumeration = cap.map(|c| spanning::enumerate_spanning_trees(&g, c)).transpose().map_err(usage)?;
    emit(None, &json(&SpanningOut { determinant, enumeration }))
}

fn mlst(input: &Path, budget: u64) -> Run {
    let g = load_graph(input)?;
    let r = spanning::max_leaf_spanning_tree(&g, budget).map_err(usage)?;
    emit(None, &json(&r))
}

fn verify(t: u32, groups: &[String], config: Option<&Path>, out: Option<&Path>) -> Run {
    let config = load_config(config)?;
    let mut opts = VerifyOptions::default();
    if !groups.is_empty() {
        opts.groups = groups.iter().map(|g| g.parse::<CheckGroup>()).collect::<Result<_, _>>().map_err(usage)?;
    }
    let report = verify_model(t, &config, &opts).map_err(usage)?;
    emit(out, &(report.to_json() + "\n"))?;
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::Hard(format!("{} hard item(s) mismatched", report.hard_failures)))
    }
}

fn calibrate(path: &Path) -> Run {
    let anchors: Vec<Anchor> = serde_json::from_str(&read(path)?).map_err(usage)?;
    let matches = generators::calibrate_rules(&anchors, &RuleConfig::space()).map_err(usage)?;
    let fingerprints: Vec<String> = matches.iter().map(RuleConfig::fingerprint).collect();
    #[derive(Serialize)]
    struct Out {
        matches: usize,
        fingerprints: Vec<String>,
        first: Option<RuleConfig>,
    }
    emit(
        None,
        &json(&Out {
            matches: matches.len(),
            fingerprints,
            first: matches.first().cloned(),
        }),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen {
            model,
            t,
            config,
            format,
            out,
        } => gen(*model, *t, config.as_deref(), *format, out.as_deref()),
        Command::Tables { model, t } => tables(*model, *t),
        Command::Analyze {
            input,
            exact_apl,
            sample,
        } => analyze(input, *exact_apl, *sample),
        Command::Predict { t, row_literal } => predict(*t, *row_literal),
        Command::Recurrence { p, q, r, s, a1, n } => recurrence(p, q, r, s, a1, *n),
        Command::Spanning { input, enumerate_cap } => spanning_cmd(input, *enumerate_cap),
        Command::Mlst { input, budget } => mlst(input, *budget),
        Command::Verify {
            t,
            groups,
            config,
            out,
        } => verify(*t, groups, config.as_deref(), out.as_deref()),
        Command::Calibrate { anchors } => calibrate(anchors),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Hard(msg)) => {
            eprintln!("hybridnet: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("hybridnet: {msg}");
            ExitCode::from(2)
        }
    }
}
