//! Command-line surface for the skein algebra toolkit.
//!
//! Exit codes: 0 when the requested identity/check holds (or the command
//! produced its output), 1 when an identity fails, 2 on usage or contract
//! errors. Progress and reports go to stdout as JSON lines.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use skeinalg::annulus::{calibrate, gz_nonvanishing, solve_e, Calibration};
use skeinalg::graph::{
    admissible_check, composable_check, five_term_paths, five_term_sides, graph_algebra,
    necklace, LabeledGraph, MutationStep, Sign,
};
use skeinalg::torus::{dilog_qt, pentagon_sides, GradeFunctional, QTElement, TorusAlgebra};
use skeinalg::{parse_scalar_expr, LaurentSA, RationalSA};

#[derive(Parser)]
#[command(
    name = "skeinalg",
    about = "q-dilogarithms, quantum tori, cubic planar graph mutation, and the solid-torus skein recursion",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the necklace graph of the given genus as JSON.
    Necklace {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Flip one edge of a graph and write the mutated graph.
    Mutate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check admissibility of a mutation sequence from the necklace graph.
    Admissible {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        steps: PathBuf,
    },
    /// Check composability of a mutation sequence under a grade functional.
    Composable {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        steps: PathBuf,
        /// JSON file with 2g integer weights; defaults to U_j ↦ 1, V_j ↦ 0.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Verify the pentagon identity up to total grade N.
    Pentagon {
        #[arg(long)]
        degree: i64,
    },
    /// Verify the genus-2 five-term identity up to grade N.
    FiveTerm {
        #[arg(long)]
        degree: i64,
    },
    /// Ordered product of dilogarithms over a list of classes.
    Wavefunction {
        #[arg(long)]
        classes: PathBuf,
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the skein recursion (○ - m - γl)·E = 0 up to the given degree.
    SkeinE {
        #[arg(long, default_value = "q^(1/2)", allow_hyphen_values = true)]
        gamma: String,
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "calibration.json")]
        calibration: PathBuf,
    },
    /// Search the convention space and write the unique passing calibration.
    Calibrate {
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify nonvanishing of the eigenvalues c_{λ,μ} for |λ|+|μ| ≤ bound.
    GzCheck {
        #[arg(long)]
        bound: u64,
    },
}

#[derive(serde::Deserialize)]
struct WavefunctionInput {
    genus: usize,
    classes: Vec<Vec<i64>>,
    #[serde(default)]
    scales: Option<Vec<String>>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<(), String> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| format!("serialization: {e}"))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_sign(text: &str) -> Result<Sign, String> {
    match text {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        other => Err(format!("sign must be + or -, got {other:?}")),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Necklace { genus, out } => {
            let graph = necklace(genus).map_err(|e| e.to_string())?;
            write_json(&out, &graph)?;
            println!(
                "{}",
                json!({
                    "event": "necklace",
                    "genus": genus,
                    "vertices": graph.map().vertex_count(),
                    "edges": graph.map().edge_count(),
                    "out": out.display().to_string(),
                })
            );
            Ok(0)
        }
        Command::Mutate {
            graph,
            edge,
            sign,
            out,
        } => {
            let g: LabeledGraph = read_json(&graph)?;
            let step = MutationStep {
                edge,
                sign: parse_sign(&sign)?,
            };
            let old_label = g.label(edge).map_err(|e| e.to_string())?.clone();
            let flipped = g.flip(step).map_err(|e| e.to_string())?;
            write_json(&out, &flipped)?;
            println!(
                "{}",
                json!({
                    "event": "mutate",
                    "edge": edge,
                    "sign": sign,
                    "old_label": old_label,
                    "new_label": flipped.label(edge).map_err(|e| e.to_string())?,
                    "out": out.display().to_string(),
                })
            );
            Ok(0)
        }
        Command::Admissible { genus, steps } => {
            let steps: Vec<MutationStep> = read_json(&steps)?;
            let report = admissible_check(genus, &steps).map_err(|e| e.to_string())?;
            for step in &report.steps {
                println!("{}", serde_json::to_string(step).unwrap());
            }
            println!(
                "{}",
                json!({"event": "admissible", "result": report.admissible})
            );
            Ok(if report.admissible { 0 } else { 1 })
        }
        Command::Composable {
            genus,
            steps,
            weights,
        } => {
            let steps: Vec<MutationStep> = read_json(&steps)?;
            let functional = match weights {
                Some(path) => {
                    let w: Vec<i64> = read_json(&path)?;
                    if w.len() != 2 * genus {
                        return Err(format!("expected {} weights, got {}", 2 * genus, w.len()));
                    }
                    GradeFunctional::new(w)
                }
                None => skeinalg::graph::standard_weights(genus),
            };
            let start = necklace(genus).map_err(|e| e.to_string())?;
            let ok = composable_check(&start, &steps, &functional).map_err(|e| e.to_string())?;
            println!("{}", json!({"event": "composable", "result": ok}));
            Ok(if ok { 0 } else { 1 })
        }
        Command::Pentagon { degree } => {
            let (lhs, rhs) = pentagon_sides(degree).map_err(|e| e.to_string())?;
            let ok = lhs == rhs;
            println!(
                "{}",
                json!({"event": "pentagon", "degree": degree, "result": ok})
            );
            if !ok {
                println!("{}", json!({"lhs": lhs, "rhs": rhs}));
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::FiveTerm { degree } => {
            let paths = five_term_paths().map_err(|e| e.to_string())?;
            println!(
                "{}",
                json!({
                    "event": "five-term-paths",
                    "prefix_class": paths.prefix_class,
                    "long_classes": paths.long_classes,
                    "short_classes": paths.short_classes,
                    "final_graphs_isomorphic": true,
                    "middle_is_u1u2_minus_v2": paths.middle_is_u1u2_minus_v2,
                })
            );
            let (lhs, rhs) = five_term_sides(degree).map_err(|e| e.to_string())?;
            let ok = lhs == rhs;
            println!(
                "{}",
                json!({"event": "five-term", "degree": degree, "result": ok})
            );
            if !ok {
                println!("{}", json!({"lhs": lhs, "rhs": rhs}));
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Wavefunction {
            classes,
            degree,
            out,
        } => {
            let input: WavefunctionInput = read_json(&classes)?;
            let algebra: TorusAlgebra = graph_algebra(input.genus).map_err(|e| e.to_string())?;
            let scales: Vec<LaurentSA> = match input.scales {
                Some(texts) => {
                    if texts.len() != input.classes.len() {
                        return Err("one scale per class required".into());
                    }
                    texts
                        .iter()
                        .map(|t| parse_scalar_expr(t))
                        .collect::<Result<_, _>>()?
                }
                None => vec![LaurentSA::one(); input.classes.len()],
            };
            let mut acc: QTElement<RationalSA> = QTElement::one(algebra.clone(), degree);
            for (v, scale) in input.classes.iter().zip(&scales) {
                let factor = dilog_qt(&algebra, v, degree, scale).map_err(|e| e.to_string())?;
                acc = factor.mul(&acc).map_err(|e| e.to_string())?;
            }
            match out {
                Some(path) => write_json(&path, &acc)?,
                None => println!("{}", serde_json::to_string(&acc).unwrap()),
            }
            Ok(0)
        }
        Command::SkeinE {
            gamma,
            degree,
            out,
            calibration,
        } => {
            let gamma = parse_scalar_expr(&gamma)?;
            let cal: Calibration =
                read_json(&calibration).map_err(|e| format!("{e}; run `skeinalg calibrate` first"))?;
            let series = solve_e(&gamma, degree, &cal);
            write_json(&out, &series)?;
            println!(
                "{}",
                json!({
                    "event": "skein-e",
                    "degree": degree,
                    "terms": series.coeffs().len(),
                    "out": out.display().to_string(),
                })
            );
            Ok(0)
        }
        Command::Calibrate { out } => {
            let cal = calibrate().map_err(|e| e.to_string())?;
            write_json(&out, &cal)?;
            println!(
                "{}",
                json!({
                    "event": "calibrate",
                    "sign_conv": cal.sign_conv,
                    "alpha": cal.alpha,
                    "beta": cal.beta,
                    "epsilon": cal.epsilon,
                    "out": out.display().to_string(),
                })
            );
            Ok(0)
        }
        Command::GzCheck { bound } => {
            let ok = gz_nonvanishing(bound);
            println!(
                "{}",
                json!({"event": "gz-check", "bound": bound, "result": ok})
            );
            Ok(if ok { 0 } else { 1 })
        }
    }
}
