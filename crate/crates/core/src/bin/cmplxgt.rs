//! Command-line harness: matrix construction and verification, outcome
//! simulation, decoding, and seeded experiment batches.
//!
//! Exit codes: 0 success, 2 config/usage, 3 construction failure,
//! 4 verification failure, 5 budget exceeded, 6 data file errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use cmplxgt::decode::{algorithm1, algorithm2};
use cmplxgt::experiment::{
    config_from_map, expand_sweep, parse_config_text, run_experiment, sweep, write_sweep_csv,
    ExperimentError, PointStatus,
};
use cmplxgt::matrix::{
    build_t, kautz_singleton, random_disjunct, read_gtmat_file, sample_verify_disjunct,
    verify_disjunct, write_gtmat_file, ConstructOptions, DisjunctParams, MatrixError,
    VerificationKind, VerifyBudget,
};
use cmplxgt::model::{
    encode, inject_errors, read_gtout_file, read_gtset_file, write_gtout_file, ErrorBudget,
    TestMode,
};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cmplxgt",
    version,
    about = "Non-adaptive complex group testing: matrices, outcomes, decoders, experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    Random,
    KautzSingleton,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Ccmplx,
    Gcmplx,
}

impl From<Mode> for TestMode {
    fn from(m: Mode) -> TestMode {
        match m {
            Mode::Ccmplx => TestMode::Ccmplx,
            Mode::Gcmplx => TestMode::Gcmplx,
        }
    }
}

#[derive(Args)]
struct VerifyOpts {
    /// Verification strategy for constructed/loaded matrices
    #[arg(long, value_enum, default_value = "exhaustive")]
    verify: CheckMode,
    /// Cap on exhaustive column-subset checks
    #[arg(long, default_value_t = 10_000_000)]
    verify_budget: u64,
    /// Monte-Carlo trials when sampling
    #[arg(long, default_value_t = 100_000)]
    sample_trials: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a disjunct matrix, verify it, and save it
    GenMatrix {
        #[arg(long, value_enum, default_value = "random")]
        kind: MatrixKind,
        /// Number of items (columns)
        #[arg(short, long)]
        n: usize,
        /// Excluded-column budget
        #[arg(short, long)]
        d: usize,
        /// Included-column budget
        #[arg(short, long, default_value_t = 1)]
        r: usize,
        /// Witness-row budget
        #[arg(short, long, default_value_t = 1)]
        z: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3.0)]
        row_constant: f64,
        #[arg(long, default_value_t = 8)]
        max_attempts: u32,
        #[command(flatten)]
        verify: VerifyOpts,
        /// Output matrix file
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a matrix file against disjunctness parameters
    Verify {
        /// Matrix file to check
        #[arg(long)]
        matrix: PathBuf,
        #[arg(short, long)]
        d: usize,
        #[arg(short, long, default_value_t = 1)]
        r: usize,
        #[arg(short, long, default_value_t = 1)]
        z: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        verify: VerifyOpts,
    },
    /// Simulate test outcomes for a complex set under a composed design
    Encode {
        /// Complex set file (GTSET)
        #[arg(long)]
        set: PathBuf,
        /// Outer matrix file (GTMAT)
        #[arg(long)]
        outer: PathBuf,
        /// Inner matrix file (GTMAT)
        #[arg(long)]
        inner: PathBuf,
        #[arg(long, value_enum, default_value = "ccmplx")]
        mode: Mode,
        /// Outcome bit flips to inject
        #[arg(short, long, default_value_t = 0)]
        errors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output outcome file (GTOUT)
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decode an outcome file back to positive complexes
    Decode {
        /// Outcome file (GTOUT)
        #[arg(long)]
        outcome: PathBuf,
        #[arg(long)]
        outer: PathBuf,
        #[arg(long)]
        inner: PathBuf,
        /// Witness-row budget the outer matrix was built for
        #[arg(short, long)]
        z: usize,
        /// ccmplx runs the classical decoder, gcmplx the generalized one
        #[arg(long, value_enum, default_value = "ccmplx")]
        mode: Mode,
        /// Output JSON file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run one experiment from a config file
    Run {
        /// key=value config file
        #[arg(short, long)]
        config: Option<PathBuf>,
        /// Override or supply config keys (repeatable)
        #[arg(short = 'D', long = "define", value_name = "KEY=VALUE")]
        define: Vec<String>,
    },
    /// Run a grid of experiments (comma-separated values expand)
    Sweep {
        #[arg(short, long)]
        config: Option<PathBuf>,
        #[arg(short = 'D', long = "define", value_name = "KEY=VALUE")]
        define: Vec<String>,
        /// Re-run points whose output files already exist
        #[arg(long)]
        force: bool,
        /// Write an aggregate CSV over completed points
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn matrix_exit(e: &MatrixError) -> u8 {
    match e {
        MatrixError::BudgetExceeded { .. } => 5,
        MatrixError::ConstructionFailed { .. } | MatrixError::Infeasible { .. } => 3,
        MatrixError::Parse { .. } | MatrixError::Io(_) => 6,
        _ => 2,
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn construct_options(v: &VerifyOpts, row_constant: f64, max_attempts: u32) -> ConstructOptions {
    let budget = match v.verify {
        CheckMode::Exhaustive => VerifyBudget {
            max_pair_checks: v.verify_budget as u128,
        },
        CheckMode::Sampled => VerifyBudget { max_pair_checks: 0 },
    };
    ConstructOptions {
        row_constant,
        max_attempts,
        budget,
        sample_trials: v.sample_trials,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::GenMatrix {
            kind,
            n,
            d,
            r,
            z,
            seed,
            row_constant,
            max_attempts,
            verify,
            output,
        } => {
            let params = match DisjunctParams::new(d, r, z) {
                Ok(p) => p,
                Err(e) => return fail(2, e),
            };
            let opts = construct_options(&verify, row_constant, max_attempts);
            let built = match kind {
                MatrixKind::Random => random_disjunct(n, &params, seed, &opts),
                MatrixKind::KautzSingleton => {
                    if r != 1 || z != 1 {
                        return fail(2, "kautz-singleton builds classical (d,1;1] matrices only");
                    }
                    kautz_singleton(n, d, &opts)
                }
            };
            let built = match built {
                Ok(b) => b,
                Err(e) => return fail(matrix_exit(&e), e),
            };
            let verification = match built.verification {
                VerificationKind::Exhaustive => "exhaustive".to_string(),
                VerificationKind::Sampled { trials } => format!("sampled:{trials}"),
            };
            let meta = vec![
                (
                    "kind".to_string(),
                    match kind {
                        MatrixKind::Random => "random".to_string(),
                        MatrixKind::KautzSingleton => "kautz-singleton".to_string(),
                    },
                ),
                ("seed".to_string(), seed.to_string()),
                ("params".to_string(), format!("({d},{r};{z}]")),
                ("verification".to_string(), verification.clone()),
                ("attempts".to_string(), built.attempts.to_string()),
            ];
            if let Err(e) = write_gtmat_file(&built.matrix, &meta, &output) {
                return fail(6, e);
            }
            println!(
                "wrote {}x{} ({d},{r};{z}]-disjunct matrix to {} ({verification} verification, {} attempt(s))",
                built.matrix.rows(),
                built.matrix.cols(),
                output.display(),
                built.attempts
            );
            ExitCode::SUCCESS
        }
        Command::Verify {
            matrix,
            d,
            r,
            z,
            seed,
            verify,
        } => {
            let (mat, _) = match read_gtmat_file(&matrix) {
                Ok(m) => m,
                Err(e) => return fail(6, e),
            };
            let params = match DisjunctParams::new(d, r, z) {
                Ok(p) => p,
                Err(e) => return fail(2, e),
            };
            match verify.verify {
                CheckMode::Exhaustive => {
                    let budget = VerifyBudget {
                        max_pair_checks: verify.verify_budget as u128,
                    };
                    match verify_disjunct(&mat, &params, &budget) {
                        Ok(out) => match out.counterexample() {
                            None => {
                                println!("PASS: matrix is ({d},{r};{z}]-disjunct (exhaustive)");
                                ExitCode::SUCCESS
                            }
                            Some(c) => {
                                println!(
                                    "FAIL: S1={:?} S2={:?} has only {} witness row(s), need {z}",
                                    c.excluded, c.included, c.witness_rows
                                );
                                ExitCode::from(4)
                            }
                        },
                        Err(e) => fail(matrix_exit(&e), e),
                    }
                }
                CheckMode::Sampled => {
                    match sample_verify_disjunct(&mat, &params, verify.sample_trials, seed) {
                        Ok(out) => {
                            if out.passed {
                                println!(
                                    "PASS: no violation in {} sampled pairs (not a proof)",
                                    out.trials_run
                                );
                                ExitCode::SUCCESS
                            } else {
                                let c = out.violation.expect("violation recorded");
                                println!(
                                    "FAIL: S1={:?} S2={:?} has only {} witness row(s), need {z}",
                                    c.excluded, c.included, c.witness_rows
                                );
                                ExitCode::from(4)
                            }
                        }
                        Err(e) => fail(matrix_exit(&e), e),
                    }
                }
            }
        }
        Command::Encode {
            set,
            outer,
            inner,
            mode,
            errors,
            seed,
            output,
        } => {
            let d = match read_gtset_file(&set) {
                Ok(d) => d,
                Err(e) => return fail(6, e),
            };
            let (g, _) = match read_gtmat_file(&outer) {
                Ok(m) => m,
                Err(e) => return fail(6, e),
            };
            let (m, _) = match read_gtmat_file(&inner) {
                Ok(m) => m,
                Err(e) => return fail(6, e),
            };
            let t = match build_t(&g, &m) {
                Ok(t) => t,
                Err(e) => return fail(2, e),
            };
            let y = match encode(&t, &d, mode.into()) {
                Ok(y) => y,
                Err(e) => return fail(2, e),
            };
            let (y, flips) = match inject_errors(&y, &ErrorBudget::random(errors), seed) {
                Ok(r) => r,
                Err(e) => return fail(2, e),
            };
            if let Err(e) = write_gtout_file(&y, &output) {
                return fail(6, e);
            }
            println!(
                "wrote {} tests ({} blocks x (2*{}+1)) to {}; flips at {:?}",
                y.len(),
                y.blocks(),
                y.inner_len(),
                output.display(),
                flips
            );
            ExitCode::SUCCESS
        }
        Command::Decode {
            outcome,
            outer,
            inner,
            z,
            mode,
            output,
        } => {
            let y = match read_gtout_file(&outcome) {
                Ok(y) => y,
                Err(e) => return fail(6, e),
            };
            let (g, _) = match read_gtmat_file(&outer) {
                Ok(m) => m,
                Err(e) => return fail(6, e),
            };
            let (m, _) = match read_gtmat_file(&inner) {
                Ok(m) => m,
                Err(e) => return fail(6, e),
            };
            let t = match build_t(&g, &m) {
                Ok(t) => t,
                Err(e) => return fail(2, e),
            };
            let result = match mode {
                Mode::Ccmplx => algorithm1(&y, &t, z),
                Mode::Gcmplx => algorithm2(&y, &t, z),
            };
            let result = match result {
                Ok(r) => r,
                Err(e) => return fail(2, e),
            };
            let json = result.to_json();
            match output {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, json + "\n") {
                        return fail(6, e);
                    }
                    println!(
                        "recovered {} complex(es) -> {}",
                        result.complexes.len(),
                        path.display()
                    );
                }
                None => println!("{json}"),
            }
            ExitCode::SUCCESS
        }
        Command::Run { config, define } => match load_map(config, define) {
            Ok(map) => match config_from_map(&map).and_then(|cfg| run_experiment(&cfg)) {
                Ok(report) => {
                    print!("{}", report.to_jsonl());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e.exit_code() as u8, e),
            },
            Err(e) => fail(e.exit_code() as u8, e),
        },
        Command::Sweep {
            config,
            define,
            force,
            csv,
        } => {
            let map = match load_map(config, define) {
                Ok(m) => m,
                Err(e) => return fail(e.exit_code() as u8, e),
            };
            let points = match expand_sweep(&map) {
                Ok(p) => p,
                Err(e) => return fail(e.exit_code() as u8, e),
            };
            let results = sweep(&points, force);
            let mut first_failure: Option<u8> = None;
            for p in &results {
                let label = format!(
                    "n={} d={} r={} s={} z={} e={} mode={:?}",
                    p.config.n,
                    p.config.d,
                    p.config.r,
                    p.config.s,
                    p.config.z,
                    p.config.errors,
                    p.config.mode
                );
                match &p.status {
                    PointStatus::Completed(r) => println!(
                        "done {label}: success {}/{}",
                        r.aggregate.successes, r.aggregate.trials
                    ),
                    PointStatus::SkippedExisting => println!("skip {label}: output exists"),
                    PointStatus::Failed(e) => {
                        eprintln!("fail {label}: {e}");
                        first_failure.get_or_insert(e.exit_code() as u8);
                    }
                }
            }
            if let Some(path) = csv {
                let mut buf = Vec::new();
                if let Err(e) = write_sweep_csv(&results, &mut buf) {
                    return fail(6, e);
                }
                if let Err(e) = std::fs::write(&path, buf) {
                    return fail(6, e);
                }
            }
            match first_failure {
                None => ExitCode::SUCCESS,
                Some(code) => ExitCode::from(code),
            }
        }
    }
}

fn load_map(
    config: Option<PathBuf>,
    define: Vec<String>,
) -> Result<BTreeMap<String, String>, ExperimentError> {
    let mut map = match config {
        Some(path) => parse_config_text(&std::fs::read_to_string(path)?)?,
        None => BTreeMap::new(),
    };
    for kv in define {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| ExperimentError::Config(format!("override '{kv}' is not key=value")))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    if map.is_empty() {
        return Err(ExperimentError::Config(
            "no configuration given: pass --config FILE and/or -D key=value".into(),
        ));
    }
    Ok(map)
}
