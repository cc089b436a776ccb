use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use aomega::complexes::{ComplexJson, IntComplex, Integers};
use aomega::decalage::eta_subcomplex;
use aomega::qderham::{compare_with_torus_pipeline, q_de_rham_table};
use aomega::suite::{run_suite, SessionConfig, SUITES};
use aomega::torus::{
    ainf_omega_torus, etale_rank_torus, specialize_de_rham, specialize_hodge_tate,
    tilde_omega_torus, torus_semicontinuity,
};
use aomega::witt_ainf::{
    check_notation_identities, teichmuller_digits, AinfModel, TruncatedWittElement, WittJson,
};
use aomega::Error;

/// Environment variable naming the default output directory.
const OUT_DIR_ENV: &str = "AOMEGA_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "aomega",
    version,
    about = "Exact models of the decalage functor, A_inf and the q-de Rham complex of the torus",
    after_help = "Reports are JSON. Without --out they go to stdout, or to $AOMEGA_OUT_DIR/<command>.json when that variable is set.\nExit codes: 0 all checks pass, 1 a check failed, 2 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// A_inf notation identities.
    Ainf {
        #[command(subcommand)]
        command: AinfCommand,
    },
    /// Truncated Witt vectors.
    Witt {
        #[command(subcommand)]
        command: WittCommand,
    },
    /// The decalage functor on complexes over Z.
    Leta {
        #[command(subcommand)]
        command: LetaCommand,
    },
    /// The torus pipeline on a finite grading box.
    Torus {
        #[command(subcommand)]
        command: TorusCommand,
    },
    /// The q-de Rham complex of the torus.
    Qderham {
        #[command(subcommand)]
        command: QderhamCommand,
    },
    /// Runs a named verification suite.
    Run(RunArgs),
}

#[derive(Subcommand)]
enum AinfCommand {
    /// Checks the identities between mu, xi, xi~, phi, theta and theta~.
    Verify {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Random samples per identity.
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum WittCommand {
    /// Reads a Witt vector as JSON on stdin and prints its Teichmuller digits.
    Digits {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        precision: u32,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum LetaCommand {
    /// Reads a complex over Z as JSON on stdin and prints eta_f of it.
    Apply {
        /// The element f, a nonzero integer.
        #[arg(long, allow_hyphen_values = true)]
        f: BigInt,
        #[command(flatten)]
        out: Out,
    },
    /// Runs the decalage suite on random complexes.
    Verify {
        /// Suite name; `s5` and `s5-leta` are accepted.
        #[arg(long, default_value = "s5-leta")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Stage {
    Tilde,
    Ainf,
    Dr,
    Ht,
    Etale,
    Semicont,
}

#[derive(Args)]
struct BoxArgs {
    /// The prime, at most 13.
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// The depth n: exponents live in p^{-n} Z; 1 to 3.
    #[arg(long, default_value_t = 1)]
    depth: u32,
    /// The torus dimension d, at most 4.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// The box bound B: gradings in [-B, B]^d; at most 8.
    #[arg(long, default_value_t = 2)]
    bound: u32,
}

impl BoxArgs {
    fn config(&self) -> SessionConfig {
        SessionConfig {
            p: self.p,
            depth: self.depth,
            dim: self.dim,
            bound: self.bound,
            ..SessionConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum TorusCommand {
    /// Runs one stage and prints its rank and divisor tables.
    Run {
        #[command(flatten)]
        grading: BoxArgs,
        #[arg(long, value_enum)]
        stage: Stage,
        #[command(flatten)]
        out: Out,
    },
    /// Runs every stage with its cross-checks.
    All {
        #[command(flatten)]
        grading: BoxArgs,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum QderhamCommand {
    /// Homology of each graded block.
    Table {
        #[command(flatten)]
        grading: BoxArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Compares each block with the A Omega summand of the same grading.
    Compare {
        #[command(flatten)]
        grading: BoxArgs,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct RunArgs {
    /// One of s2-notation, s5-leta, s4-torus-decomp, s6-tilde-omega,
    /// s7-specializations, s7-qderham, s8-semicontinuity, witt.
    #[arg(long)]
    suite: String,
    #[command(flatten)]
    grading: BoxArgs,
    /// Witt vector precision m, 1 to 4.
    #[arg(long, default_value_t = 3)]
    precision: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random instances per check.
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[command(flatten)]
    out: Out,
}

#[derive(Args)]
struct Out {
    /// Output file; defaults to stdout or $AOMEGA_OUT_DIR.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Check,
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit<T: Serialize>(out: &Out, name: &str, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    text.push('\n');
    let path = match (&out.out, std::env::var_os(OUT_DIR_ENV)) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(PathBuf::from(dir).join(format!("{name}.json"))),
        (None, None) => None,
    };
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
            }
            std::fs::write(&p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            eprintln!("wrote {}", p.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn verdict(passed: bool) -> Result<(), Failure> {
    if passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn read_stdin<T: serde::de::DeserializeOwned>() -> Result<T, Failure> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Failure::Io(e.to_string()))?;
    serde_json::from_str(&s).map_err(|e| Failure::Usage(format!("bad JSON on stdin: {e}")))
}

#[derive(Serialize)]
struct DigitsReport {
    p: u64,
    precision: u32,
    digits: Vec<aomega::witt_ainf::PerfectionJson>,
}

#[derive(Serialize)]
struct StageSummary {
    stage: String,
    passed: bool,
    total_cells: u64,
    killed_cells: u64,
    free_rank_table: Vec<usize>,
    anomalies: Vec<String>,
}

#[derive(Serialize)]
struct TorusAll {
    config: SessionConfig,
    stages: Vec<StageSummary>,
    semicontinuity: aomega::torus::SemicontinuityReport,
    passed: bool,
}

fn summary(r: &aomega::torus::TorusCohomologyResult) -> StageSummary {
    StageSummary {
        stage: r.stage.clone(),
        passed: r.passed,
        total_cells: r.total_cells,
        killed_cells: r.killed_cells,
        free_rank_table: r.free_rank_table.clone(),
        anomalies: r.anomalies.clone(),
    }
}

fn execute(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Ainf {
            command:
                AinfCommand::Verify {
                    p,
                    depth,
                    instances,
                    seed,
                    out,
                },
        } => {
            SessionConfig {
                p,
                depth,
                seed,
                instances,
                ..SessionConfig::default()
            }
            .validate()?;
            let r = check_notation_identities(&AinfModel::new(p, depth)?, instances, seed);
            emit(&out, "ainf-verify", &r)?;
            verdict(r.passed)
        }
        Command::Witt {
            command: WittCommand::Digits { p, precision, out },
        } => {
            SessionConfig {
                p,
                precision,
                ..SessionConfig::default()
            }
            .validate()?;
            let json: WittJson = read_stdin()?;
            if json.p != p || json.precision != precision {
                return Err(Failure::Usage(format!(
                    "input has p = {}, precision = {}; flags say p = {p}, precision = {precision}",
                    json.p, json.precision
                )));
            }
            let w = TruncatedWittElement::from_json(&json)?;
            let digits = teichmuller_digits(&w).iter().map(|d| d.to_json()).collect();
            emit(
                &out,
                "witt-digits",
                &DigitsReport {
                    p,
                    precision,
                    digits,
                },
            )
        }
        Command::Leta {
            command: LetaCommand::Apply { f, out },
        } => {
            let json: ComplexJson = read_stdin()?;
            let k = IntComplex::from_json(Integers, &json)?;
            let eta = eta_subcomplex(&k, &f)?;
            emit(&out, "leta-apply", &eta.to_json())
        }
        Command::Leta {
            command:
                LetaCommand::Verify {
                    suite,
                    instances,
                    seed,
                    p,
                    out,
                },
        } => {
            if suite != "s5" && suite != "s5-leta" {
                return Err(Failure::Usage(format!(
                    "leta verify runs s5 or s5-leta, not {suite:?}"
                )));
            }
            let config = SessionConfig {
                p,
                seed,
                instances,
                ..SessionConfig::default()
            };
            let r = run_suite("s5-leta", &config)?;
            emit(&out, "s5-leta", &r)?;
            verdict(r.passed)
        }
        Command::Torus {
            command:
                TorusCommand::Run {
                    grading,
                    stage,
                    out,
                },
        } => {
            let b = grading.config().grading_box()?;
            let needs_ainf = |b| -> Result<_, Failure> { Ok(ainf_omega_torus(b)?) };
            let (name, r) = match stage {
                Stage::Tilde => ("torus-tilde", tilde_omega_torus(&b)?),
                Stage::Ainf => ("torus-ainf", needs_ainf(&b)?),
                Stage::Ht => ("torus-ht", specialize_hodge_tate(&needs_ainf(&b)?)?),
                Stage::Dr => ("torus-dr", specialize_de_rham(&needs_ainf(&b)?)?),
                Stage::Etale => ("torus-etale", etale_rank_torus(&needs_ainf(&b)?)?),
                Stage::Semicont => {
                    let s = torus_semicontinuity(&needs_ainf(&b)?);
                    emit(&out, "torus-semicont", &s)?;
                    return verdict(s.holds());
                }
            };
            emit(&out, name, &r)?;
            verdict(r.passed)
        }
        Command::Torus {
            command: TorusCommand::All { grading, out },
        } => {
            let config = grading.config();
            let b = config.grading_box()?;
            let tilde = tilde_omega_torus(&b)?;
            let a = ainf_omega_torus(&b)?;
            let ht = specialize_hodge_tate(&a)?;
            let dr = specialize_de_rham(&a)?;
            let et = etale_rank_torus(&a)?;
            let semicontinuity = torus_semicontinuity(&a);
            let stages: Vec<_> = [&tilde, &a, &ht, &dr, &et]
                .into_iter()
                .map(summary)
                .collect();
            let passed = stages.iter().all(|s| s.passed) && semicontinuity.holds();
            emit(
                &out,
                "torus-all",
                &TorusAll {
                    config,
                    stages,
                    semicontinuity,
                    passed,
                },
            )?;
            verdict(passed)
        }
        Command::Qderham {
            command: QderhamCommand::Table { grading, out },
        } => {
            grading.config().grading_box()?;
            let t = q_de_rham_table(grading.p, grading.depth, grading.dim, grading.bound)?;
            emit(&out, "qderham-table", &t)
        }
        Command::Qderham {
            command: QderhamCommand::Compare { grading, out },
        } => {
            grading.config().grading_box()?;
            let r =
                compare_with_torus_pipeline(grading.p, grading.depth, grading.dim, grading.bound)?;
            emit(&out, "qderham-compare", &r)?;
            verdict(r.passed)
        }
        Command::Run(args) => {
            if !SUITES.contains(&args.suite.as_str()) {
                return Err(Failure::Usage(format!(
                    "unknown suite {:?}; expected one of {}",
                    args.suite,
                    SUITES.join(", ")
                )));
            }
            let config = SessionConfig {
                precision: args.precision,
                seed: args.seed,
                instances: args.instances,
                ..args.grading.config()
            };
            let r = run_suite(&args.suite, &config)?;
            emit(&args.out, &args.suite, &r)?;
            verdict(r.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = execute(cli.command);
    eprintln!("wall-clock {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => {
            eprintln!("check failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
