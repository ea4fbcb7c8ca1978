//! Command-line driver for the covering-map library.
//!
//! Exit codes: 0 success, 1 input/parse failure, 2 membership failure,
//! 3 genericity failure under `--strategy shirokov --strict`,
//! 4 unsupported strategy/signature combination.

mod report;

use clap::{Args, Parser, Subcommand};
use report::{fmt_f64, real_matrix};
use serde::Serialize;
use serde_json::Value;
use spincover_core::bases;
use spincover_core::corpus;
use spincover_core::error::Error as CoreError;
use spincover_core::group::{
    givens_product, polar_decompose_n1, so_plus_membership, Signature,
};
use spincover_core::inversion::{invert, Strategy};
use spincover_core::mat::Mat;
use spincover_core::verify;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "spincover", about = "Compute and invert the double covers of SO+(p,q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invert the covering map at a target matrix
    Invert(JobArgs),
    /// Factor a target into standard and hyperbolic plane rotations
    Decompose(JobArgs),
    /// Polar-decompose a target in SO+(n,1), n in 2..=4
    Polar(JobArgs),
    /// Check the one-vector basis catalog and export it
    VerifyBases {
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also check every iterative extension up to n = 10 (slower)
        #[arg(long)]
        extensions: bool,
    },
    /// Race the inversion strategies on a generated corpus
    Bench(BenchArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Signature as `p,q`; must match the input file when both are given
    #[arg(long)]
    signature: Option<String>,
    /// One of auto, givens, polar, agnostic, shirokov
    #[arg(long, default_value = "auto")]
    strategy: String,
    /// Input JSON: {"signature": [p, q], "matrix": [[...], ...]}
    #[arg(long)]
    input: PathBuf,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Tolerance override for membership and residual checks
    #[arg(long)]
    tol: Option<f64>,
    /// Fail instead of falling back when the chosen strategy cannot proceed
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Signature as `p,q` (default: all of 2,1 2,2 3,2 4,1)
    #[arg(long)]
    signature: Option<String>,
    /// Targets per signature
    #[arg(long, default_value_t = 50)]
    count: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match &e {
            CoreError::Membership { .. } => 2,
            CoreError::Genericity(_) => 3,
            CoreError::Unsupported(_)
            | CoreError::FactorNotTabulated(_)
            | CoreError::NotCataloged(..) => 4,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

fn parse_signature_flag(s: &str) -> Result<Signature, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::new(1, format!("bad signature '{s}', expected 'p,q'")));
    }
    let p = parts[0]
        .trim()
        .parse::<usize>()
        .map_err(|e| Failure::new(1, format!("bad signature '{s}': {e}")))?;
    let q = parts[1]
        .trim()
        .parse::<usize>()
        .map_err(|e| Failure::new(1, format!("bad signature '{s}': {e}")))?;
    Ok(Signature::new(p, q))
}

struct JobInput {
    sig: Signature,
    matrix: Mat<f64>,
    strategy: Strategy,
    tol: f64,
    strict: bool,
}

fn load_job(args: &JobArgs) -> Result<JobInput, Failure> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Failure::new(1, format!("cannot read {}: {e}", args.input.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::new(1, format!("input is not valid JSON: {e}")))?;
    let sig_arr = value
        .get("signature")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Failure::new(1, "missing \"signature\": [p, q]"))?;
    if sig_arr.len() != 2 {
        return Err(Failure::new(1, "\"signature\" must have two entries"));
    }
    let p = sig_arr[0]
        .as_u64()
        .ok_or_else(|| Failure::new(1, "signature entries must be non-negative integers"))?
        as usize;
    let q = sig_arr[1]
        .as_u64()
        .ok_or_else(|| Failure::new(1, "signature entries must be non-negative integers"))?
        as usize;
    let file_sig = Signature::new(p, q);
    if let Some(flag) = &args.signature {
        let flag_sig = parse_signature_flag(flag)?;
        if flag_sig != file_sig {
            return Err(Failure::new(
                1,
                format!("--signature {flag_sig} disagrees with the input file ({file_sig})"),
            ));
        }
    }
    let rows = value
        .get("matrix")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Failure::new(1, "missing \"matrix\""))?;
    let n = file_sig.n();
    if rows.len() != n {
        return Err(Failure::new(
            1,
            format!("matrix has {} rows, signature {file_sig} needs {n}", rows.len()),
        ));
    }
    let mut matrix = Mat::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Failure::new(1, "matrix rows must be arrays"))?;
        if row.len() != n {
            return Err(Failure::new(
                1,
                format!("matrix row {i} has {} entries, expected {n}", row.len()),
            ));
        }
        for (j, v) in row.iter().enumerate() {
            matrix[(i, j)] = v
                .as_f64()
                .ok_or_else(|| Failure::new(1, "matrix entries must be numbers"))?;
        }
    }
    let strategy = Strategy::parse(&args.strategy)
        .ok_or_else(|| Failure::new(4, format!("unknown strategy '{}'", args.strategy)))?;
    Ok(JobInput {
        sig: file_sig,
        matrix,
        strategy,
        tol: args.tol.unwrap_or(1e-9),
        strict: args.strict,
    })
}

fn emit(report: &impl Serialize, output: &Option<PathBuf>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|e| Failure::new(1, format!("serialization failure: {e}")))?;
    match output {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::new(1, format!("cannot write {}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct JobEcho {
    command: &'static str,
    signature: [usize; 2],
    strategy: String,
    tolerance: String,
    input_matrix: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct InvertReport {
    job: JobEcho,
    strategy_used: &'static str,
    preimage: Option<report::SpinElementJson>,
    preimage_negated: Option<report::SpinElementJson>,
    blade_preimage: Option<Vec<report::BladeTerm>>,
    blade_preimage_negated: Option<Vec<report::BladeTerm>>,
    factors: Option<Vec<report::FactorJson>>,
    polar_v: Option<Vec<Vec<String>>>,
    polar_p: Option<Vec<Vec<String>>>,
    residual: String,
    oracle_residual: String,
    warnings: Vec<String>,
}

fn run_invert(args: &JobArgs) -> Result<(), Failure> {
    let job = load_job(args)?;
    let out = invert(&job.matrix, job.sig, job.strategy, job.tol, job.strict)?;
    let report = InvertReport {
        job: JobEcho {
            command: "invert",
            signature: [job.sig.p, job.sig.q],
            strategy: args.strategy.clone(),
            tolerance: fmt_f64(job.tol),
            input_matrix: real_matrix(&job.matrix),
        },
        strategy_used: out.strategy.name(),
        preimage: out.spin_pair.as_ref().map(|p| report::spin_element(&p.plus)),
        preimage_negated: out.spin_pair.as_ref().map(|p| report::spin_element(&p.minus)),
        blade_preimage: out.blade_preimage.as_ref().map(report::multivector),
        blade_preimage_negated: out
            .blade_preimage
            .as_ref()
            .map(|mv| report::multivector(&mv.neg())),
        factors: out.factors.as_ref().map(|f| report::factors(f)),
        polar_v: out.polar_factors.as_ref().map(|(v, _)| real_matrix(v)),
        polar_p: out.polar_factors.as_ref().map(|(_, p)| real_matrix(p)),
        residual: fmt_f64(out.residual),
        oracle_residual: fmt_f64(out.oracle_residual),
        warnings: out.warnings,
    };
    emit(&report, &args.output)
}

#[derive(Serialize)]
struct DecomposeReport {
    job: JobEcho,
    factors: Vec<report::FactorJson>,
    factor_count: usize,
    reconstruction_residual: String,
    warnings: Vec<String>,
}

fn run_decompose(args: &JobArgs) -> Result<(), Failure> {
    let job = load_job(args)?;
    let factors = spincover_core::group::givens_decompose(&job.matrix, job.sig, job.tol)?;
    let back = givens_product(&factors, job.sig)?;
    let report = DecomposeReport {
        job: JobEcho {
            command: "decompose",
            signature: [job.sig.p, job.sig.q],
            strategy: args.strategy.clone(),
            tolerance: fmt_f64(job.tol),
            input_matrix: real_matrix(&job.matrix),
        },
        factor_count: factors.len(),
        reconstruction_residual: fmt_f64(back.max_diff(&job.matrix)),
        factors: report::factors(&factors),
        warnings: Vec::new(),
    };
    emit(&report, &args.output)
}

#[derive(Serialize)]
struct PolarReport {
    job: JobEcho,
    v: Vec<Vec<String>>,
    p: Vec<Vec<String>>,
    q: Vec<Vec<String>>,
    vp_residual: String,
    orthogonality_residual: String,
    exp_q_residual: String,
    v_in_group: bool,
    p_in_group: bool,
    warnings: Vec<String>,
}

fn run_polar(args: &JobArgs) -> Result<(), Failure> {
    let job = load_job(args)?;
    let out = polar_decompose_n1(&job.matrix, job.sig, job.tol)?;
    let n = job.sig.n();
    let report = PolarReport {
        job: JobEcho {
            command: "polar",
            signature: [job.sig.p, job.sig.q],
            strategy: args.strategy.clone(),
            tolerance: fmt_f64(job.tol),
            input_matrix: real_matrix(&job.matrix),
        },
        v: real_matrix(&out.v),
        p: real_matrix(&out.p),
        q: real_matrix(&out.q),
        vp_residual: fmt_f64(out.v.mul(&out.p).max_diff(&job.matrix)),
        orthogonality_residual: fmt_f64(
            out.v.transpose().mul(&out.v).max_diff(&Mat::identity(n)),
        ),
        exp_q_residual: fmt_f64(out.q.expm().max_diff(&out.p)),
        v_in_group: so_plus_membership(&out.v, job.sig, job.tol.max(1e-9)).ok,
        p_in_group: so_plus_membership(&out.p, job.sig, job.tol.max(1e-9)).ok,
        warnings: Vec::new(),
    };
    emit(&report, &args.output)
}

#[derive(Serialize)]
struct BasisCheckJson {
    name: String,
    signature: [usize; 2],
    field: &'static str,
    dimension: usize,
    verbatim_exhibit: bool,
    axioms_ok: bool,
    bp_ok: bool,
    issues: Vec<String>,
}

#[derive(Serialize)]
struct CatalogEntryJson {
    name: String,
    signature: [usize; 2],
    field: &'static str,
    /// entries as exact rational strings, each quaternion as [w, x, y, z]
    matrices: Vec<Vec<Vec<[String; 4]>>>,
}

#[derive(Serialize)]
struct DiscrepancyJson {
    id: &'static str,
    summary: &'static str,
}

#[derive(Serialize)]
struct VerifyBasesReport {
    command: &'static str,
    checks: Vec<BasisCheckJson>,
    extension_checks: Vec<BasisCheckJson>,
    discrepancies: Vec<DiscrepancyJson>,
    catalog: Vec<CatalogEntryJson>,
}

fn field_name(f: bases::ScalarField) -> &'static str {
    match f {
        bases::ScalarField::Real => "real",
        bases::ScalarField::Complex => "complex",
        bases::ScalarField::Quaternion => "quaternion",
    }
}

fn check_one(b: &bases::OneVectorBasis) -> BasisCheckJson {
    let ax = bases::check_axioms(b);
    let bp = bases::check_bp(b);
    let mut issues: Vec<String> = ax.issues.iter().map(|i| format!("{i:?}")).collect();
    issues.extend(bp.issues.iter().map(|i| format!("{i:?}")));
    BasisCheckJson {
        name: b.name.clone(),
        signature: [b.sig.p, b.sig.q],
        field: field_name(b.field),
        dimension: b.dim(),
        verbatim_exhibit: b.verbatim_exhibit,
        axioms_ok: ax.ok(),
        bp_ok: bp.ok(),
        issues,
    }
}

fn run_verify_bases(output: &Option<PathBuf>, extensions: bool) -> Result<(), Failure> {
    let mut checks = Vec::new();
    let mut catalog_json = Vec::new();
    for b in bases::catalog() {
        checks.push(check_one(b));
        let matrices = b
            .mats
            .iter()
            .map(|m| {
                (0..m.rows())
                    .map(|i| {
                        (0..m.cols())
                            .map(|j| {
                                let q = m[(i, j)];
                                [
                                    q.w.to_string(),
                                    q.x.to_string(),
                                    q.y.to_string(),
                                    q.z.to_string(),
                                ]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        catalog_json.push(CatalogEntryJson {
            name: b.name.clone(),
            signature: [b.sig.p, b.sig.q],
            field: field_name(b.field),
            matrices,
        });
    }
    let mut extension_checks = Vec::new();
    if extensions {
        for root in bases::catalog().iter().filter(|b| !b.verbatim_exhibit) {
            let mut cur = root.clone();
            while cur.sig.n() + 2 <= 10 {
                cur = bases::ic1_extend(&cur);
                extension_checks.push(check_one(&cur));
            }
            if root.sig.q == 0 && root.sig.p + 8 <= 10 {
                extension_checks.push(check_one(&bases::ic2_extend(root)?));
            }
            if root.sig.p == 0 && root.sig.q + 8 <= 10 {
                extension_checks.push(check_one(&bases::ic3_extend(root)?));
            }
        }
    }
    let report = VerifyBasesReport {
        command: "verify-bases",
        checks,
        extension_checks,
        discrepancies: verify::known_discrepancies()
            .iter()
            .map(|d| DiscrepancyJson {
                id: d.id,
                summary: d.summary,
            })
            .collect(),
        catalog: catalog_json,
    };
    emit(&report, output)
}

#[derive(Serialize)]
struct BenchStrategyJson {
    strategy: &'static str,
    targets: usize,
    median_nanos: u128,
    max_residual: String,
}

#[derive(Serialize)]
struct BenchSignatureJson {
    signature: [usize; 2],
    strategies: Vec<BenchStrategyJson>,
}

#[derive(Serialize)]
struct BenchReport {
    command: &'static str,
    seed: u64,
    count: usize,
    results: Vec<BenchSignatureJson>,
}

fn run_bench(args: &BenchArgs) -> Result<(), Failure> {
    let seed = std::env::var("SPINCOVER_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(0);
    let sigs: Vec<Signature> = match &args.signature {
        Some(s) => vec![parse_signature_flag(s)?],
        None => vec![
            Signature::new(2, 1),
            Signature::new(2, 2),
            Signature::new(3, 2),
            Signature::new(4, 1),
        ],
    };
    let mut results = Vec::new();
    for sig in sigs {
        let mut rng = corpus::rng_from_seed(seed);
        let targets: Vec<Mat<f64>> = (0..args.count)
            .map(|_| corpus::random_so_plus(sig, sig.n() * (sig.n() - 1) / 2, &mut rng))
            .collect();
        let mut strategies = Vec::new();
        for strategy in Strategy::applicable(sig) {
            let mut times: Vec<u128> = Vec::with_capacity(targets.len());
            let mut max_residual = 0.0f64;
            for x in &targets {
                let start = std::time::Instant::now();
                let out = invert(x, sig, strategy, 1e-9, false)?;
                times.push(start.elapsed().as_nanos());
                max_residual = max_residual.max(out.oracle_residual);
            }
            times.sort_unstable();
            strategies.push(BenchStrategyJson {
                strategy: strategy.name(),
                targets: targets.len(),
                median_nanos: times[times.len() / 2],
                max_residual: fmt_f64(max_residual),
            });
        }
        results.push(BenchSignatureJson {
            signature: [sig.p, sig.q],
            strategies,
        });
    }
    let report = BenchReport {
        command: "bench",
        seed,
        count: args.count,
        results,
    };
    emit(&report, &args.output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invert(args) => run_invert(args),
        Command::Decompose(args) => run_decompose(args),
        Command::Polar(args) => run_polar(args),
        Command::VerifyBases { output, extensions } => run_verify_bases(output, *extensions),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
