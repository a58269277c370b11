use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use auslander_core::algebra::set_iso_seed;
use auslander_core::complex::vertex_module_classes;
use auslander_core::counting::consistency_report;
use auslander_core::exc::exceptional_sequence;
use auslander_core::export::{
    complex_csv, complex_json, complex_off, counts_csv, counts_json, node_label, poset_csv, poset_dot, poset_json,
    pretty,
};
use auslander_core::tilt::{homology_gate, predicted_dims, TiltingModules, TiltingPoset, DEFAULT_MAX_N_HOMOLOGY};
use auslander_core::{build_algebra, Error, Permutation, SigmaComplex};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

mod verify;

#[derive(Parser)]
#[command(name = "auslander", version, about = "Tilting modules of the Auslander algebra of K[x]/(x^n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Run the module-level checks.
    #[arg(long, global = true)]
    verify_homology: bool,
    /// Largest rank for module-level work without --force.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N_HOMOLOGY)]
    max_n_homology: usize,
    /// Allow module-level work above --max-n-homology.
    #[arg(long, global = true)]
    force: bool,
    /// Seed for the randomized isomorphism search and for sampling.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// c_n, t_n and p_{n,i} for ranks 1..=n.
    Counts {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Shorthand for --format csv.
        #[arg(long)]
        csv: bool,
    },
    /// The Hasse quiver of tilting modules.
    Poset {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// The simplicial complex of tilting summands.
    Complex {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Run the verification suite.
    Verify {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// The exceptional sequences E_w for all w in S_n.
    Exceptional {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Dimension vectors d(T_x) of all interval elements.
    Dimvec {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Csv,
    Off,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::HomologyGated { .. } => Failure::Usage(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    /// Verification failures found while producing `text`.
    failure: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failure: None }
    }
}

fn format_or(common: &Common, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = common.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<String> =
            allowed.iter().map(|a| a.to_possible_value().expect("named").get_name().to_string()).collect();
        Err(Failure::Usage(format!("this command supports --format {}", names.join("|"))))
    }
}

fn gate(common: &Common, n: usize) -> Result<(), Failure> {
    Ok(homology_gate(n, common.max_n_homology, common.force)?)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let common = &cli.common;
    match cli.command {
        Command::Counts { n, csv } => {
            let default = if csv { Format::Csv } else { Format::Json };
            let format = if csv { Format::Csv } else { format_or(common, default, &[Format::Json, Format::Csv])? };
            let reports: Vec<_> = (1..=n as usize).map(consistency_report).collect();
            let failure = reports.iter().find(|r| !r.consistent).map(|r| format!("counts disagree at n = {}", r.n));
            let text = match format {
                Format::Csv => counts_csv(&reports),
                _ => counts_json(&reports),
            };
            Ok(Output { text, failure })
        }
        Command::Poset { n } => {
            let n = n as usize;
            let format = format_or(common, Format::Dot, &[Format::Dot, Format::Json, Format::Csv])?;
            let poset = TiltingPoset::build(n);
            let failure = if common.verify_homology {
                gate(common, n)?;
                failure_of(verify::homological(n, common.seed)?)
            } else {
                None
            };
            let text = match format {
                Format::Json => poset_json(&poset),
                Format::Csv => poset_csv(&poset),
                _ => poset_dot(&poset),
            };
            Ok(Output { text, failure })
        }
        Command::Complex { n } => {
            let n = n as usize;
            let format = format_or(common, Format::Json, &[Format::Json, Format::Csv, Format::Off])?;
            let sigma = SigmaComplex::build(n);
            let failure = if common.verify_homology {
                gate(common, n)?;
                let mods = TiltingModules::build(n)?;
                let classes = vertex_module_classes(&sigma, &mods)?;
                classes.mismatch.map(|((a, i), (b, _))| {
                    let nodes = sigma.nodes();
                    format!(
                        "slot {i}: {} and {} disagree between vertex and iso classes",
                        node_label(&nodes[a]),
                        node_label(&nodes[b])
                    )
                })
            } else {
                None
            };
            let text = match format {
                Format::Csv => complex_csv(&sigma),
                Format::Off => complex_off(&sigma),
                _ => complex_json(&sigma),
            };
            Ok(Output { text, failure })
        }
        Command::Verify { n } => {
            let n = n as usize;
            let mut report = verify::combinatorial(n);
            if common.verify_homology {
                gate(common, n)?;
                report.outcomes.extend(verify::homological(n, common.seed)?.outcomes);
            }
            let failure = (!report.passed()).then(|| "verification failed".to_string());
            Ok(Output { text: report.render(), failure })
        }
        Command::Exceptional { n } => {
            let n = n as usize;
            format_or(common, Format::Json, &[Format::Json])?;
            gate(common, n)?;
            let alg = build_algebra(n)?;
            let mut sequences = Vec::new();
            for w in Permutation::all(n) {
                let seq = exceptional_sequence(&alg, &w)?;
                sequences.push(json!({ "w": w.to_string(), "modules": seq }));
            }
            Ok(Output::ok(pretty(&sequences)))
        }
        Command::Dimvec { n } => {
            let n = n as usize;
            let format = format_or(common, Format::Json, &[Format::Json, Format::Csv])?;
            let poset = TiltingPoset::build(n);
            let dims: Vec<Vec<Vec<i64>>> = poset.nodes().iter().map(predicted_dims).collect();
            let failure = if common.verify_homology {
                gate(common, n)?;
                let mods = TiltingModules::build(n)?;
                mods.objects.iter().zip(&dims).find(|(t, d)| &t.dim_vectors() != *d).map(|(t, d)| {
                    format!("{}: modules {:?}, formula {d:?}", node_label(t.index()), t.dim_vectors())
                })
            } else {
                None
            };
            let text = match format {
                Format::Csv => {
                    let mut out = String::from("node,slot,dims\n");
                    for (x, d) in poset.nodes().iter().zip(&dims) {
                        for (i, v) in d.iter().enumerate() {
                            let cells: Vec<String> = v.iter().map(i64::to_string).collect();
                            out.push_str(&format!("{},{},{}\n", node_label(x), i + 1, cells.join(" ")));
                        }
                    }
                    out
                }
                _ => {
                    let rows: Vec<_> = poset
                        .nodes()
                        .iter()
                        .zip(&dims)
                        .map(|(x, d)| json!({ "node": node_label(x), "dims": d }))
                        .collect();
                    pretty(&rows)
                }
            };
            Ok(Output { text, failure })
        }
    }
}

fn failure_of(report: verify::Report) -> Option<String> {
    report.outcomes.into_iter().find_map(|o| o.result.err().map(|e| format!("{}: {e}", o.name)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    set_iso_seed(cli.common.seed);
    let output = match run(&cli) {
        Ok(output) => output,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.common.output {
        Some(path) => fs::write(path, &output.text),
        None => std::io::stdout().write_all(output.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    match output.failure {
        Some(msg) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
