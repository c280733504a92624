//! `comet` — certifies finiteness of planar central configurations for
//! generic masses by computing the tropical prevariety of the
//! Albouy-Chenciner / Cayley-Menger system and checking that every
//! connected component has a pointed recession cone.
//!
//! Exit codes: 0 = certified / verification passed, 2 = inconclusive
//! verdict or failed verification checks, 1 = error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context as _};
use clap::{Parser, Subcommand};

use comet_core::certificate::{self, Certificate, ComplexDump};
use comet_core::equations::{build_system, VariableOrder};
use comet_core::pipeline::{run_certify, write_artifacts, ArithmeticMode, RunConfig};
use comet_core::verify::run_verify;

mod report;

#[derive(Parser)]
#[command(name = "comet", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full certification pipeline and write the run files.
    Certify {
        /// Number of bodies (>= 3).
        #[arg(long)]
        n: usize,
        /// Comma-separated mass valuations, rationals like 1,4,9/2,...
        #[arg(long, value_delimiter = ',')]
        valuations: Vec<String>,
        /// Equation families to include: ac, sac, cm.
        #[arg(long, value_delimiter = ',', default_value = "ac,sac,cm")]
        equations: Vec<String>,
        /// Arithmetic mode: checked64 (escalates on overflow) or big.
        #[arg(long, default_value = "checked64")]
        mode: String,
        /// Worker count (0 = all cores, 1 = sequential).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Allow repeated mass valuations (the genericity argument
        /// breaks; results are then heuristic).
        #[arg(long)]
        unsafe_valuations: bool,
        /// Output directory for certificate.json, complex.json,
        /// equations.json, run_meta.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check a certificate against its complex dump (substitution
    /// only, no LP solving).
    Verify {
        cert: PathBuf,
        complex: PathBuf,
    },
    /// Print the equation system.
    Equations {
        #[arg(long)]
        n: usize,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        dump: String,
        /// Equation families to include: ac, sac, cm.
        #[arg(long, value_delimiter = ',', default_value = "ac,sac,cm")]
        equations: Vec<String>,
    },
    /// Project a dumped complex onto 2 or 3 coordinates for figures
    /// (CSV on stdout: vertices, segments, rays).
    Report {
        complex: PathBuf,
        /// Comma-separated 0-based coordinate indices, e.g. 0,1 or 0,1,2.
        #[arg(long, value_delimiter = ',')]
        proj: Vec<usize>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::Certify {
            n,
            valuations,
            equations,
            mode,
            jobs,
            unsafe_valuations,
            out,
        } => {
            let mode = ArithmeticMode::parse(&mode)
                .with_context(|| format!("unknown mode {mode:?} (use checked64 or big)"))?;
            let config = RunConfig {
                n,
                valuations,
                equations: certificate::parse_selection(&equations)?,
                mode,
                jobs,
                unsafe_valuations,
            };
            let artifacts = run_certify(&config)?;
            write_artifacts(&out, &artifacts)?;
            println!(
                "verdict: {} ({} maximal cells, f-vector {:?})",
                artifacts.certificate.verdict,
                artifacts.certificate.maximal_cell_count,
                artifacts.certificate.f_vector
            );
            println!("wrote {}", out.display());
            Ok(if artifacts.certificate.verdict == "certified" {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Verify { cert, complex } => {
            let cert: Certificate = read_json(&cert)?;
            let complex: ComplexDump = read_json(&complex)?;
            let report = run_verify(&cert, &complex)?;
            for check in &report.checks {
                println!(
                    "{} {} ({})",
                    if check.passed { "PASS" } else { "FAIL" },
                    check.name,
                    check.detail
                );
            }
            Ok(if report.passed() {
                println!("verification passed");
                ExitCode::SUCCESS
            } else {
                println!("verification FAILED");
                ExitCode::from(2)
            })
        }
        Command::Equations { n, dump, equations } => {
            let selection = certificate::parse_selection(&equations)?;
            let system = build_system(n, &selection)?;
            match dump.as_str() {
                "json" => {
                    let dump = certificate::equations_dump(n, &system);
                    print!("{}", certificate::to_canonical_json(&dump)?);
                }
                "text" => {
                    let order = VariableOrder::new(n);
                    for p in &system {
                        println!("{}", p.render_text(&order));
                    }
                }
                other => bail!("unknown dump format {other:?} (use text or json)"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { complex, proj } => {
            let complex: ComplexDump = read_json(&complex)?;
            report::emit_csv(&complex, &proj, &mut std::io::stdout().lock())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
