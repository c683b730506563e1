//! Thin command-line front end: reads the JSON formats, calls the library,
//! prints JSON results on stdout. Exit codes: 0 success, 1 domain errors
//! (invalid input), 2 resource limits.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use hypercsp::decomp::{self, Decomposition, WidthMeasure};
use hypercsp::error::Error;
use hypercsp::json as wire;
use hypercsp::weights::{format_rational, parse_rational};
use hypercsp::{
    army_width, decompose_by_separators, enumerate_all, general_wins, generate_hn,
    generate_matching, generate_random, generate_tight, generate_universal, project_solutions,
    Assignment, CspInstance, FractionalWeighting, Hypergraph,
};

#[derive(Parser)]
#[command(
    name = "hypercsp",
    version,
    about = "Hypergraph widths, covers and CSP solving over exact rationals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum fractional edge cover of all vertices (value and witness)
    RhoStar { hypergraph: String },
    /// Maximum fractional independent set (value and witness)
    AlphaStar { hypergraph: String },
    /// Exact width with a witness decomposition
    Width {
        #[arg(long, value_parser = ["tree", "ghw", "fhw"])]
        measure: String,
        hypergraph: String,
    },
    /// Army width of the pursuit game
    Aw { hypergraph: String },
    /// Winner of the pursuit game at a fixed budget
    Game {
        #[arg(long)]
        budget: String,
        hypergraph: String,
    },
    /// Separator-based fractional decomposition of width <= 3r+2
    Decompose {
        #[arg(long)]
        budget: String,
        hypergraph: String,
    },
    /// Check a decomposition against a hypergraph
    Validate {
        hypergraph: String,
        decomposition: String,
    },
    /// Find one solution
    Solve {
        #[arg(long)]
        decomposition: Option<String>,
        instance: String,
    },
    /// Stream all solutions, one JSON object per line
    Enumerate {
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        decomposition: Option<String>,
        instance: String,
    },
    /// Count all solutions
    Count {
        #[arg(long)]
        decomposition: Option<String>,
        instance: String,
    },
    /// Stream the distinct restrictions of solutions to given variables
    Project {
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        #[arg(long)]
        decomposition: Option<String>,
        instance: String,
    },
    /// Emit a named hypergraph or instance as JSON
    #[command(subcommand)]
    Generate(GenerateCommand),
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// Instance over a hypergraph with <= N tuples per relation and exactly
    /// N^{rho*} solutions
    Tight { hypergraph: String, n0: u64 },
    /// The hypergraph H_n on the n-subsets of {1..2n}
    Hn { n: usize },
    /// k disjoint two-vertex edges
    Matching { k: usize },
    /// n vertices inside a single hyperedge
    Universal { n: usize },
    /// Seeded random instance
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        domain: usize,
        #[arg(long)]
        constraints: usize,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
        #[arg(long)]
        density: f64,
    },
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidArgument(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read '{path}': {e}")))
    }
}

fn load_hypergraph(path: &str) -> Result<Hypergraph, Error> {
    wire::parse_hypergraph(&read_input(path)?)
}

fn load_instance(path: &str) -> Result<CspInstance, Error> {
    wire::parse_instance(&read_input(path)?)
}

/// The decomposition used by the solving commands: the given file, or an
/// exact minimum-width fractional decomposition.
fn solving_decomposition(
    i: &CspInstance,
    path: &Option<String>,
) -> Result<decomp::FractionalHypertreeDecomposition, Error> {
    let h = i.hypergraph_of();
    match path {
        Some(p) => match wire::parse_decomposition(&h, &read_input(p)?)? {
            Decomposition::Fractional(f) => Ok(f),
            Decomposition::Generalized(g) => Ok(wire::fractional_from_generalized(&h, &g)),
            Decomposition::Tree(_) => Err(Error::InvalidArgument(
                "the solving commands need fractional guards on the decomposition".into(),
            )),
        },
        None => Ok(decomp::exact_fractional_width(&h)?.1),
    }
}

fn cover_witness_json(h: &Hypergraph, cover: &FractionalWeighting) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = cover
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, w)| !num_traits::Zero::is_zero(*w))
        .map(|(e, w)| {
            json!({
                "edge": h.edge_names(h.edge(e)),
                "weight": format_rational(w),
            })
        })
        .collect();
    serde_json::Value::Array(entries)
}

fn assignment_json(a: &Assignment) -> serde_json::Value {
    json!(a.0)
}

fn emit(value: serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("valid JSON")
    );
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::RhoStar { hypergraph } => {
            let h = load_hypergraph(&hypergraph)?;
            let (value, cover) = hypercsp::fractional_edge_cover(&h, &h.full_vertex_set())?;
            emit(json!({
                "value": format_rational(&value),
                "witness": cover_witness_json(&h, &cover),
            }));
        }
        Command::AlphaStar { hypergraph } => {
            let h = load_hypergraph(&hypergraph)?;
            let (value, weights) = hypercsp::fractional_independent_set(&h);
            let witness: serde_json::Map<String, serde_json::Value> = h
                .vertex_names()
                .iter()
                .zip(&weights)
                .map(|(v, w)| (v.clone(), json!(format_rational(w))))
                .collect();
            emit(json!({
                "value": format_rational(&value),
                "witness": witness,
            }));
        }
        Command::Width {
            measure,
            hypergraph,
        } => {
            let h = load_hypergraph(&hypergraph)?;
            let m = match measure.as_str() {
                "tree" => WidthMeasure::Tree,
                "ghw" => WidthMeasure::Generalized,
                _ => WidthMeasure::Fractional,
            };
            let (value, witness) = decomp::exact_width(&h, m)?;
            emit(json!({
                "measure": measure,
                "value": format_rational(&value),
                "witness": wire::decomposition_to_json(&h, &witness),
            }));
        }
        Command::Aw { hypergraph } => {
            let h = load_hypergraph(&hypergraph)?;
            let value = army_width(&h)?;
            emit(json!({ "value": format_rational(&value) }));
        }
        Command::Game { budget, hypergraph } => {
            let h = load_hypergraph(&hypergraph)?;
            let r = parse_rational(&budget)?;
            let wins = general_wins(&h, &r)?;
            emit(json!({
                "budget": format_rational(&r),
                "general_wins": wins,
            }));
        }
        Command::Decompose { budget, hypergraph } => {
            let h = load_hypergraph(&hypergraph)?;
            let r = parse_rational(&budget)?;
            match decompose_by_separators(&h, &r)? {
                Some(d) => {
                    let width = d.width();
                    emit(json!({
                        "success": true,
                        "width": format_rational(&width),
                        "decomposition":
                            wire::decomposition_to_json(&h, &Decomposition::Fractional(d)),
                    }));
                }
                None => emit(json!({
                    "success": false,
                    "reason": "no balanced separator within the budget",
                })),
            }
        }
        Command::Validate {
            hypergraph,
            decomposition,
        } => {
            let h = load_hypergraph(&hypergraph)?;
            let d = wire::parse_decomposition(&h, &read_input(&decomposition)?)?;
            let report = decomp::validate(&h, &d)?;
            emit(json!({
                "valid": report.valid,
                "width": format_rational(&report.width),
                "violations": report.violations,
                "special_condition": report.special_condition,
            }));
        }
        Command::Solve {
            decomposition,
            instance,
        } => {
            let i = load_instance(&instance)?;
            let d = solving_decomposition(&i, &decomposition)?;
            match hypercsp::solve_with_decomposition(&i, &d)? {
                Some(a) => emit(json!({ "satisfiable": true, "solution": assignment_json(&a) })),
                None => emit(json!({ "satisfiable": false })),
            }
        }
        Command::Enumerate {
            limit,
            decomposition,
            instance,
        } => {
            let i = load_instance(&instance)?;
            let d = solving_decomposition(&i, &decomposition)?;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for (k, a) in enumerate_all(&i, &d)?.enumerate() {
                if let Some(limit) = limit {
                    if k >= limit {
                        break;
                    }
                }
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&assignment_json(&a)).unwrap()
                )
                .map_err(|e| Error::InvalidArgument(format!("broken pipe: {e}")))?;
                out.flush().ok();
            }
        }
        Command::Count {
            decomposition,
            instance,
        } => {
            let i = load_instance(&instance)?;
            let d = solving_decomposition(&i, &decomposition)?;
            let count = enumerate_all(&i, &d)?.count();
            emit(json!({ "count": count }));
        }
        Command::Project {
            vars,
            decomposition,
            instance,
        } => {
            let i = load_instance(&instance)?;
            let d = solving_decomposition(&i, &decomposition)?;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for a in project_solutions(&i, &d, &vars)? {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&assignment_json(&a)).unwrap()
                )
                .map_err(|e| Error::InvalidArgument(format!("broken pipe: {e}")))?;
                out.flush().ok();
            }
        }
        Command::Generate(g) => match g {
            GenerateCommand::Tight { hypergraph, n0 } => {
                let h = load_hypergraph(&hypergraph)?;
                let i = generate_tight(&h, n0)?;
                println!("{}", wire::instance_to_string(&i));
            }
            GenerateCommand::Hn { n } => {
                println!("{}", wire::hypergraph_to_string(&generate_hn(n)?));
            }
            GenerateCommand::Matching { k } => {
                println!("{}", wire::hypergraph_to_string(&generate_matching(k)?));
            }
            GenerateCommand::Universal { n } => {
                println!("{}", wire::hypergraph_to_string(&generate_universal(n)?));
            }
            GenerateCommand::Random {
                seed,
                vars,
                domain,
                constraints,
                max_arity,
                density,
            } => {
                let i = generate_random(seed, vars, domain, constraints, max_arity, density)?;
                println!("{}", wire::instance_to_string(&i));
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimit(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
