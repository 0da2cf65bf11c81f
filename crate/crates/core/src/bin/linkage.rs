use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use linkage::harness::corpus::{designated, Wrt};
use linkage::harness::{run_corpus, suite_names, RunFlags};
use linkage::hominv::local_cohomology_table;
use linkage::linkage::{horizontal_linkage_check, ideal_linkage_check, lambda_wrt, transpose_wrt, LinkageOptions};
use linkage::module::FPModule;
use linkage::parse::{module_definition, parse_ideal, parse_module, parse_ring};
use linkage::ring::QRing;
use linkage::semidual::is_gorenstein;
use linkage::{Error, Result};

#[derive(Parser)]
#[command(name = "linkage", version, about = "Linkage of graded modules with respect to semidualizing modules")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Horizontal linkage check of one module.
    Check {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        module: PathBuf,
        /// `omega`, `self` or a module file.
        #[arg(long, default_value = "omega")]
        wrt: String,
        #[arg(long)]
        ideal: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Theorem suites over a corpus directory.
    Suite {
        /// A, B, C, L, a comma-separated list, or `all`.
        #[arg(long, default_value = "all")]
        name: String,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Record wall-clock times (the report is then no longer reproducible).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A single operation.
    Compute {
        #[arg(value_enum)]
        op: Op,
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value = "self")]
        wrt: String,
        /// Second argument of `ext`; defaults to the ring.
        #[arg(long)]
        with: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Lambda,
    Transpose,
    Ext,
    Localcoh,
}

fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Definition(format!("cannot read {}: {e}", p.display())))
}

fn load(ring: &Path, module: &Path) -> Result<(QRing, String, FPModule)> {
    let r = parse_ring(&read(ring)?)?;
    let (name, m) = parse_module(&read(module)?, &r)?;
    Ok((r, name, m))
}

fn describe(name: &str, m: &FPModule) -> Value {
    json!({ "definition": module_definition(name, m), "hilbert_series": m.hilbert_series().to_string() })
}

fn emit(v: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(v).expect("json values serialize") + "\n";
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn base_of(p: &Path) -> &Path {
    p.parent().unwrap_or(Path::new("."))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Check { ring, module, wrt, ideal, bound, trials, seed, out } => {
            let (r, name, m) = load(&ring, &module)?;
            let wrt = Wrt::parse(&wrt);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c_is_canonical = match wrt {
                Wrt::Omega => true,
                Wrt::SelfRing => is_gorenstein(&r),
                Wrt::Explicit(_) => false,
            };
            let opts = LinkageOptions { bound, trials, c_is_canonical, hypotheses: true };
            let mut v = json!({ "ring": r.to_string(), "module": name, "wrt": wrt.label(),
                "bounds": { "B": bound, "trials": trials, "seed": seed } });
            match ideal {
                Some(p) => {
                    let (iname, gens) = parse_ideal(&read(&p)?, &r)?;
                    let c = match &wrt {
                        Wrt::Omega => None,
                        other => Some(designated(&r, other, base_of(&p))?),
                    };
                    let rep = ideal_linkage_check(&gens, c.as_ref(), &m, &opts, &mut rng)?;
                    v["ideal"] = json!(iname);
                    v["quotient"] = json!(rep.quotient.to_string());
                    v["verdict"] = serde_json::to_value(&rep.report.verdict).unwrap();
                    v["hypotheses"] = serde_json::to_value(&rep.report.hypotheses).unwrap();
                    v["lambda"] = describe("lambda", &rep.report.lambda);
                    v["grade_module"] = json!(rep.grade_module);
                    v["grade_ideal"] = json!(rep.grade_ideal);
                }
                None => {
                    let c = designated(&r, &wrt, base_of(&module))?;
                    let rep = horizontal_linkage_check(&c, &m, &opts, &mut rng)?;
                    v["verdict"] = serde_json::to_value(&rep.verdict).unwrap();
                    v["hypotheses"] = serde_json::to_value(&rep.hypotheses).unwrap();
                    v["lambda"] = describe("lambda", &rep.lambda);
                    v["lambda_squared"] = describe("lambda2", &rep.lambda_squared);
                    v["twist"] = json!(rep.twist);
                }
            }
            emit(&v, out.as_deref())?;
            Ok(true)
        }
        Cmd::Suite { name, corpus, bound, trials, seed, timings, out } => {
            let suites = suite_names(&name)?;
            let report = run_corpus(&corpus, &suites, RunFlags { bound, trials, seed, timings })?;
            let text = report.to_json();
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
            for r in &report.results {
                eprintln!("{:<4}{:<32}{}", r.suite, r.item, r.status.label());
            }
            Ok(report.is_success())
        }
        Cmd::Compute { op, ring, module, wrt, with, index, out } => {
            let (r, name, m) = load(&ring, &module)?;
            let c = designated(&r, &Wrt::parse(&wrt), base_of(&module))?;
            let v = match op {
                Op::Lambda => describe(&format!("lambda_{name}"), &lambda_wrt(&c, &m)?),
                Op::Transpose => describe(&format!("tr_{name}"), &transpose_wrt(&c, &m)?),
                Op::Ext => {
                    let n = match with {
                        Some(p) => parse_module(&read(&p)?, &r)?.1,
                        None => FPModule::free(r.clone(), vec![0]),
                    };
                    describe(&format!("ext{index}"), &linkage::functors::ext(index, &m, &n)?)
                }
                Op::Localcoh => {
                    let t = local_cohomology_table(&m);
                    let rows: Vec<Value> = t
                        .modules
                        .iter()
                        .map(|h| {
                            json!({ "i": h.index, "zero": h.is_zero(), "finite_length": h.finite_length,
                                "length": h.length, "matlis_dual_hilbert_series": h.dual.to_string() })
                        })
                        .collect();
                    json!({ "module": name, "local_cohomology": rows })
                }
            };
            emit(&v, out.as_deref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
