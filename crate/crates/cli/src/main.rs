use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use levelrank::branching::{branch, mirror_transport};
use levelrank::cyclotomic::Cyclotomic;
use levelrank::fusion::FusionRing;
use levelrank::partitions::Partition;
use levelrank::qdim::{Backend, DimValue, QuantumProduct};
use levelrank::smatrix::{central_charge, s_matrix};
use levelrank::verify::{run_suite, Suite, SuiteReport, SweepConfig};
use levelrank::weights::{tau_from_partition, LevelWeight};
use levelrank::Error;

#[derive(Parser)]
#[command(name = "levelrank", version, about = "Level-rank duality: branching rules, quantum dimensions, fusion")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Binary precision for floating-point work.
    #[arg(long, global = true, env = "LEVELRANK_PRECISION", default_value_t = 128,
          value_parser = clap::value_parser!(u32).range(32..))]
    precision: u32,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Shape {
    /// Rank of sl_n.
    #[arg(value_parser = clap::value_parser!(u32).range(2..))]
    n: u32,
    /// Level (and rank of the dual side).
    #[arg(value_parser = clap::value_parser!(u32).range(1..))]
    m: u32,
}

impl Shape {
    fn n(&self) -> usize {
        self.n as usize
    }
    fn m(&self) -> usize {
        self.m as usize
    }
}

#[derive(Args, Clone, Copy)]
#[group(multiple = false)]
struct LiteralKind {
    /// Read literals as affine weights `[a_0,...,a_{n-1}]`.
    #[arg(long)]
    weight: bool,
    /// Read literals as partitions `(λ_1,...)`.
    #[arg(long)]
    partition: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Decomposition of Λ_i under the conformal embedding.
    Branch {
        #[command(flatten)]
        shape: Shape,
        i: i64,
        /// Draw Young diagram pairs.
        #[arg(long)]
        young: bool,
    },
    /// The algebra A: same as `branch n m 0`.
    Etale {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        young: bool,
    },
    /// Image of a weight of C^i_{n,m} in C^i_{m,n}.
    Tau {
        #[command(flatten)]
        shape: Shape,
        #[arg(allow_negative_numbers = true)]
        i: i64,
        literal: String,
        #[command(flatten)]
        kind: LiteralKind,
    },
    /// Frobenius–Perron dimension of a simple object.
    Qdim {
        #[command(flatten)]
        shape: Shape,
        literal: String,
        #[command(flatten)]
        kind: LiteralKind,
        #[arg(long, value_enum, default_value = "exact")]
        backend: BackendArg,
    },
    /// Fusion product; without operands prints every product.
    Fuse {
        #[command(flatten)]
        shape: Shape,
        a: Option<String>,
        b: Option<String>,
        #[command(flatten)]
        kind: LiteralKind,
    },
    /// Modular S-matrix (always JSON).
    Smatrix {
        #[command(flatten)]
        shape: Shape,
    },
    /// Central charges of (sl_nm)_k and (sl_n)_mk ⊕ (sl_m)_nk.
    Cc {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
    },
    /// Transport a connected degree-zero object of C_{n,m} to C_{m,n}.
    Mirror {
        #[command(flatten)]
        shape: Shape,
        #[arg(required = true)]
        summands: Vec<String>,
        #[command(flatten)]
        kind: LiteralKind,
    },
    /// Run invariant suites and report counterexamples.
    Verify {
        /// Suite name or `all`.
        suite: String,
        /// Largest n and m to sweep.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..))]
        bound: u32,
    },
}

/// Rendered result: text for the terminal, JSON for `--json` and `--out`,
/// and whether a counterexample was found.
struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, failed: false }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn parse_literal(s: &str, kind: LiteralKind, n: usize, m: usize) -> levelrank::Result<LevelWeight> {
    let t = s.trim();
    let as_partition = kind.partition || (!kind.weight && !t.starts_with('['));
    if as_partition {
        let lambda: Partition = t.parse()?;
        LevelWeight::from_partition(&lambda, n, m)
    } else {
        let w: LevelWeight = t.parse()?;
        if w.rank() != n || w.level() != m {
            return Err(Error::LevelMismatch {
                weight: w.to_string(),
                found: w.level(),
                expected: m,
            });
        }
        Ok(w)
    }
}

fn weight_json(a: &LevelWeight) -> Value {
    json!({ "weight": a.labels(), "partition": a.to_partition().parts() })
}

fn dim_json(value: &DimValue, bits: usize) -> Value {
    match value {
        DimValue::Exact(x) => json!({
            "exact": to_json(x),
            "value": x.embed(bits).re.to_decimal_string(),
        }),
        DimValue::Float(r) => json!({ "value": r.to_decimal_string() }),
    }
}

fn branch_output(n: usize, m: usize, i: i64, young: bool) -> levelrank::Result<Output> {
    let table = branch(n, m, i)?;
    let text = if young { table.young() } else { table.to_string() };
    Ok(Output::ok(text, to_json(&table)))
}

fn run(cli: &Cli) -> levelrank::Result<Output> {
    let bits = cli.precision as usize;
    match &cli.command {
        Command::Branch { shape, i, young } => branch_output(shape.n(), shape.m(), *i, *young),
        Command::Etale { shape, young } => branch_output(shape.n(), shape.m(), 0, *young),
        Command::Tau { shape, i, literal, kind } => {
            let (n, m) = (shape.n(), shape.m());
            let a = parse_literal(literal, *kind, n, m)?;
            let image = if kind.partition || literal.trim().starts_with('(') {
                tau_from_partition(&literal.parse()?, n, m, *i)?
            } else {
                a.tau(*i)?
            };
            let text = format!("{a} ↦ {image}    {} ↦ {}", a.to_partition(), image.to_partition());
            Ok(Output::ok(text, json!({ "source": weight_json(&a), "image": weight_json(&image), "i": i })))
        }
        Command::Qdim { shape, literal, kind, backend } => {
            let (n, m) = (shape.n(), shape.m());
            let a = parse_literal(literal, *kind, n, m)?;
            let lambda = a.to_partition();
            let product = QuantumProduct::stanley(&lambda, n, m)?;
            let value = match backend {
                BackendArg::Exact => DimValue::Exact(product.evaluate()),
                BackendArg::Float => DimValue::Float(product.evaluate_float(bits)),
            };
            let (exact, decimal) = match &value {
                DimValue::Exact(x) => (Some(x.to_string()), x.embed(bits).re.to_decimal_string()),
                DimValue::Float(r) => (None, r.to_decimal_string()),
            };
            let mut text = format!("dim {a} = {product}");
            if let Some(e) = exact {
                text.push_str(&format!("\n  = {e}"));
            }
            text.push_str(&format!("\n  ≈ {decimal}"));
            let backend_json = match backend {
                BackendArg::Exact => to_json(&Backend::Exact),
                BackendArg::Float => to_json(&Backend::Float { bits }),
            };
            let mut j = weight_json(&a);
            j["product"] = json!(product.to_string());
            j["backend"] = backend_json;
            j["dimension"] = dim_json(&value, bits);
            Ok(Output::ok(text, j))
        }
        Command::Fuse { shape, a, b, kind } => {
            let (n, m) = (shape.n(), shape.m());
            let ring = FusionRing::new(n, m)?;
            let pairs: Vec<(LevelWeight, LevelWeight)> = match (a, b) {
                (Some(a), Some(b)) => vec![(parse_literal(a, *kind, n, m)?, parse_literal(b, *kind, n, m)?)],
                (None, None) => {
                    let ws = ring.weights();
                    let mut all = Vec::new();
                    for (x, a) in ws.iter().enumerate() {
                        for b in &ws[x..] {
                            all.push((a.clone(), b.clone()));
                        }
                    }
                    all
                }
                _ => return Err(Error::InvalidArgument("fuse needs two operands or none".into())),
            };
            let mut text = Vec::new();
            let mut records = Vec::new();
            for (a, b) in &pairs {
                let product = ring.fuse(a, b)?;
                text.push(format!("{a} ⊗ {b} = {product}"));
                records.push(json!({ "a": a, "b": b, "product": to_json(&*product) }));
            }
            let j = if records.len() == 1 { records.remove(0)["product"].take() } else { Value::Array(records) };
            Ok(Output::ok(text.join("\n"), j))
        }
        Command::Smatrix { shape } => {
            let s = s_matrix(shape.n(), shape.m(), bits)?;
            let j = to_json(&s);
            let text = serde_json::to_string_pretty(&j).expect("valid JSON");
            Ok(Output::ok(text, j))
        }
        Command::Cc { n, m, k } => {
            let c = central_charge(*n as usize, *m as usize, *k as usize)?;
            let text = format!(
                "c((sl_{})_{k}) = {}\nc((sl_{n})_{} ⊕ (sl_{m})_{}) = {}\n{}",
                n * m,
                c.ambient,
                m * k,
                n * k,
                c.pair,
                if c.equal() { "equal" } else { "not equal" }
            );
            let mut j = to_json(&c);
            j["equal"] = json!(c.equal());
            Ok(Output::ok(text, j))
        }
        Command::Mirror { shape, summands, kind } => {
            let (n, m) = (shape.n(), shape.m());
            let source: Vec<LevelWeight> = summands
                .iter()
                .map(|s| parse_literal(s, *kind, n, m))
                .collect::<levelrank::Result<_>>()?;
            let report = mirror_transport(&source)?;
            let show = |xs: &[LevelWeight]| xs.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" + ");
            let text = format!(
                "{}\n  ↦ {}\nclosed under duals: {}\ntrivial twists: {}\ndimension preserved: {} ({})",
                show(&report.source),
                show(&report.image),
                report.closed_under_duals,
                report.trivial_twists,
                report.dimension_preserved,
                fmt_dim(&report.dimension)
            );
            Ok(Output {
                text,
                json: to_json(&report),
                failed: !report.holds(),
            })
        }
        Command::Verify { suite, bound } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let config = SweepConfig {
                bound: *bound as usize,
                bits,
            };
            let reports: Vec<SuiteReport> = suites
                .into_iter()
                .map(|s| run_suite(s, config))
                .collect::<levelrank::Result<_>>()?;
            let failed = reports.iter().any(|r| !r.passed());
            let mut lines: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
            let passed = reports.iter().filter(|r| r.passed()).count();
            lines.push(format!("{passed}/{} suites passed", reports.len()));
            Ok(Output {
                text: lines.join("\n"),
                json: to_json(&reports),
                failed,
            })
        }
    }
}

fn fmt_dim(x: &Cyclotomic) -> String {
    format!("≈ {}", x.to_f64())
}

/// Library errors caused by the input are usage errors; the rest are
/// computational failures.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InsufficientPrecision { .. } | Error::ToleranceExceeded { .. } | Error::DivisionByZero(_) | Error::ConductorMismatch(..) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global() {
            eprintln!("levelrank: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("valid JSON"));
            } else {
                println!("{}", out.text);
            }
            if let Some(path) = &cli.out {
                let body = serde_json::to_string_pretty(&out.json).expect("valid JSON");
                if let Err(e) = fs::write(path, body + "\n") {
                    eprintln!("levelrank: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(u8::from(out.failed))
        }
        Err(e) => {
            eprintln!("levelrank: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
