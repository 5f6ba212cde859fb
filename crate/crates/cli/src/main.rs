//! wbc: exact computation and verification of weighted generalized inverses.
//!
//! Subcommands: `compute` and `check` evaluate one inverse kind on a context,
//! `oracle` enumerates every element satisfying the raw definition on finite
//! rings, `verify` runs a theorem suite over an instance space, and `replay`
//! re-runs a recorded suite failure.
//!
//! Exit codes: 0 success, 1 malformed input or unknown suite, 2 precondition
//! violation, 3 the requested inverse does not exist, 4 enumeration budget
//! exceeded, 5 suite or replay failures, 6 internal verification error.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wbc_core::error::Error;
use wbc_core::harness::{self, Instance, InstanceSpace, Mode};
use wbc_core::weighted::{
    along_d, annihilator_inverse, bc_exists, bc_inverse, bott_duffin, hybrid_exists,
    hybrid_inverse, InverseKind, InverseReport,
};
use wbc_core::RingSpec;

#[derive(Parser)]
#[command(
    name = "wbc",
    version,
    about = "Exact weighted (b,c)-inverses and their variants over Q, GF(p), and Z_n"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute an inverse and print the full report as JSON
    Compute {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Context JSON: a file path or an inline JSON object
        #[arg(long = "in")]
        input: String,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Existence check only (certificates, no value construction)
    Check {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate every element satisfying the raw definition (finite rings)
    Oracle {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a theorem verification suite over an instance space
    Verify {
        #[arg(long)]
        suite: String,
        /// Coefficient ring: q, gfp:P, or zn:N
        #[arg(long, default_value = "gfp:2")]
        ring: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// exhaustive or random
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run one recorded suite failure ({"suite": ..., "instance": {...}})
    Replay {
        #[arg(long = "in")]
        input: String,
    },
    /// List the available suites
    Suites,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Bc,
    Hybrid,
    Annihilator,
    BottDuffin,
    AlongD,
}

impl From<KindArg> for InverseKind {
    fn from(k: KindArg) -> InverseKind {
        match k {
            KindArg::Bc => InverseKind::Bc,
            KindArg::Hybrid => InverseKind::Hybrid,
            KindArg::Annihilator => InverseKind::Annihilator,
            KindArg::BottDuffin => InverseKind::BottDuffin,
            KindArg::AlongD => InverseKind::AlongD,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("error: {e}");
            println!("{}", json!({ "error": e.to_string(), "code": code }));
            code
        }
    };
    std::process::exit(code);
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precondition(_) | Error::NotIdempotent(_) | Error::FieldRequired(_) => 2,
        Error::BudgetExceeded(_) => 4,
        Error::InternalInconsistency(_) => 6,
        _ => 1,
    }
}

fn run(cmd: Cmd) -> Result<i32, Error> {
    match cmd {
        Cmd::Compute { kind, input, out } => {
            let inst = load_instance(&input)?;
            let report = compute(kind.into(), &inst)?;
            emit(&out, &serde_json::to_value(&report).expect("report serializes"))?;
            Ok(if report.exists { 0 } else { 3 })
        }
        Cmd::Check { kind, input, out } => {
            let inst = load_instance(&input)?;
            let (exists, certificates) = check(kind.into(), &inst)?;
            let value = json!({
                "kind": InverseKind::from(kind).as_str(),
                "exists": exists,
                "certificates": certificates,
            });
            emit(&out, &value)?;
            Ok(if exists { 0 } else { 3 })
        }
        Cmd::Oracle { kind, input, out } => {
            let inst = load_instance(&input)?;
            let hits = harness::oracle_search(kind.into(), &inst, harness::budget())?;
            emit(&out, &serde_json::to_value(&hits).expect("matrices serialize"))?;
            Ok(0)
        }
        Cmd::Verify {
            suite,
            ring,
            k,
            mode,
            seed,
            count,
            out,
        } => {
            let ring = parse_ring(&ring)?;
            let mode = match mode.as_str() {
                "exhaustive" => Mode::Exhaustive,
                "random" => Mode::Random { seed, count },
                other => {
                    return Err(Error::BadInput(format!(
                        "mode must be exhaustive or random, got {other:?}"
                    )))
                }
            };
            let space = InstanceSpace {
                ring,
                k,
                mode,
                constraints: Vec::new(),
            };
            let result = harness::run_suite(&suite, &space)?;
            emit(&out, &serde_json::to_value(&result).expect("result serializes"))?;
            Ok(if result.passed() { 0 } else { 5 })
        }
        Cmd::Replay { input } => {
            let value = load_json(&input)?;
            let suite = value
                .get("suite")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::BadInput("missing \"suite\"".into()))?
                .to_string();
            let inst_value = value
                .get("instance")
                .ok_or_else(|| Error::BadInput("missing \"instance\"".into()))?
                .clone();
            let inst = Instance::try_from(inst_value)?;
            let outcome = harness::replay(&suite, &inst)?;
            println!(
                "{}",
                serde_json::to_value(&outcome).expect("outcome serializes")
            );
            Ok(match outcome {
                harness::ReplayOutcome::Failed { .. } => 5,
                _ => 0,
            })
        }
        Cmd::Suites => {
            println!(
                "{}",
                serde_json::to_value(harness::suite_names()).expect("names serialize")
            );
            Ok(0)
        }
    }
}

fn compute(kind: InverseKind, inst: &Instance) -> Result<InverseReport, Error> {
    match kind {
        InverseKind::Bc => bc_inverse(&inst.weighted_context()?),
        InverseKind::Hybrid => hybrid_inverse(&inst.weighted_context()?),
        InverseKind::Annihilator => annihilator_inverse(&inst.weighted_context()?),
        InverseKind::BottDuffin => bott_duffin(&inst.bott_duffin_context()?),
        InverseKind::AlongD => along_d(
            inst.get("a")?,
            inst.get("d")?,
            inst.get("v")?,
            inst.get("w")?,
        ),
    }
}

fn check(kind: InverseKind, inst: &Instance) -> Result<(bool, Value), Error> {
    let cert_value = |c: Option<wbc_core::solve::Certificate>| -> Value {
        match c {
            Some(c) => serde_json::to_value(vec![c]).expect("certificate serializes"),
            None => json!([]),
        }
    };
    Ok(match kind {
        InverseKind::Bc => {
            let (exists, cert) = bc_exists(&inst.weighted_context()?);
            (exists, cert_value(cert))
        }
        InverseKind::Hybrid => {
            let (exists, cert) = hybrid_exists(&inst.weighted_context()?);
            (exists, cert_value(cert))
        }
        InverseKind::AlongD => {
            let d = inst.get("d")?.clone();
            let ctx = wbc_core::weighted::WeightedContext::new(
                inst.get("a")?.clone(),
                d.clone(),
                d,
                inst.get("v")?.clone(),
                inst.get("w")?.clone(),
            )?;
            let (exists, cert) = bc_exists(&ctx);
            (exists, cert_value(cert))
        }
        InverseKind::Annihilator => {
            let rep = annihilator_inverse(&inst.weighted_context()?)?;
            (rep.exists, serde_json::to_value(&rep.certificates).unwrap())
        }
        InverseKind::BottDuffin => {
            let rep = bott_duffin(&inst.bott_duffin_context()?)?;
            (rep.exists, serde_json::to_value(&rep.certificates).unwrap())
        }
    })
}

/// `--in` accepts a file path or an inline JSON object.
fn load_json(input: &str) -> Result<Value, Error> {
    let text = if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        fs::read_to_string(input)
            .map_err(|e| Error::BadInput(format!("cannot read {input:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::BadInput(format!("invalid JSON: {e}")))
}

fn load_instance(input: &str) -> Result<Instance, Error> {
    Instance::try_from(load_json(input)?)
}

fn parse_ring(spec: &str) -> Result<RingSpec, Error> {
    let bad = || Error::BadInput(format!("ring must be q, gfp:P, or zn:N, got {spec:?}"));
    match spec.split_once(':') {
        None if spec == "q" => Ok(RingSpec::rationals()),
        Some(("gfp", p)) => RingSpec::prime_field(p.parse().map_err(|_| bad())?),
        Some(("zn", n)) => RingSpec::modular(n.parse().map_err(|_| bad())?),
        _ => Err(bad()),
    }
}

fn emit(out: &Option<PathBuf>, value: &Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| Error::BadInput(format!("cannot write {path:?}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
