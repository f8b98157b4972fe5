use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use kszlab::dirichlet::{bohr_lift, prime_stats, DirichletPoly};
use kszlab::harness::{run_experiment, suite_specs, ExperimentSpec, Report};
use kszlab::interp::{k_functional_l1_l2, k_functional_weighted_linf};
use kszlab::norms::{l_hn_norm, marcinkiewicz_norm, orlicz_seq_norm, weak_norm, WeightSequence};
use kszlab::{Complex64, Error};

#[derive(Parser)]
#[command(name = "kszlab", version, about = "Subgaussian KSZ inequality laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One-shot norm computations; reads a JSON object from stdin.
    Norms {
        #[command(subcommand)]
        which: NormCommand,
    },
    /// Prints prime statistics and the Bohr lift of a Dirichlet polynomial.
    Lift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        stats_only: bool,
    },
    /// Runs Monte Carlo experiments.
    Experiment {
        #[command(subcommand)]
        which: ExperimentCommand,
    },
}

#[derive(Subcommand)]
enum NormCommand {
    /// `{"x": [...], "q": 2}`
    Weak,
    /// `{"x": [...], "w": [...]}`
    Marcinkiewicz,
    /// `{"x": [...], "phi": {"kind": "power", "p": 2}}` or `{"kind": "exp", "r": 2}`
    OrliczSeq,
    /// `{"xi": [...]}`
    LHn,
    /// `{"x": [...], "t": 1}` for (l1, l2), or `{"xi": [...], "s": 1, "t": 1, "k_lo": 0}` for the weighted couple
    KFunctional,
}

#[derive(Subcommand)]
enum ExperimentCommand {
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Exit with status 4 when a registered band is violated.
        #[arg(long)]
        check: bool,
    },
    Suite {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        check: bool,
    },
}

/// A real number or an `[re, im]` pair.
#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl From<&Scalar> for Complex64 {
    fn from(s: &Scalar) -> Self {
        match s {
            Scalar::Real(v) => Complex64::new(*v, 0.0),
            Scalar::Complex([re, im]) => Complex64::new(*re, *im),
        }
    }
}

fn vector(v: &[Scalar]) -> Vec<Complex64> {
    v.iter().map(Complex64::from).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeakInput {
    x: Vec<Scalar>,
    q: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MarcinkiewiczInput {
    x: Vec<Scalar>,
    w: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum PhiSpec {
    /// `φ(u) = u^p`
    Power { p: f64 },
    /// `φ(u) = e^{u^r} − 1`
    Exp { r: f64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrliczInput {
    x: Vec<Scalar>,
    phi: PhiSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LhnInput {
    xi: Vec<Scalar>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum KInput {
    Weighted { xi: Vec<Scalar>, s: f64, t: f64, k_lo: i32 },
    L1L2 { x: Vec<Scalar>, t: f64 },
}

#[derive(Deserialize)]
struct DirichletInput {
    /// `[n, a_n]` pairs.
    coeffs: Vec<(u64, Scalar)>,
}

fn invalid_input(e: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(e.to_string())
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(invalid_input)
}

fn run_norm(which: NormCommand, text: &str) -> Result<Value, Error> {
    let value = match which {
        NormCommand::Weak => {
            let i: WeakInput = parse(text)?;
            weak_norm(&vector(&i.x), i.q)?
        }
        NormCommand::Marcinkiewicz => {
            let i: MarcinkiewiczInput = parse(text)?;
            marcinkiewicz_norm(&vector(&i.x), &WeightSequence::new(i.w)?)?
        }
        NormCommand::OrliczSeq => {
            let i: OrliczInput = parse(text)?;
            let x = vector(&i.x);
            match i.phi {
                PhiSpec::Power { p } if p >= 1.0 => orlicz_seq_norm(&x, &|u: f64| u.powf(1.0 / p))?,
                PhiSpec::Power { p } => return Err(invalid_input(format!("power Young function needs p >= 1, got {p}"))),
                PhiSpec::Exp { r } if r >= 1.0 => orlicz_seq_norm(&x, &|u: f64| u.ln_1p().powf(1.0 / r))?,
                PhiSpec::Exp { r } => return Err(invalid_input(format!("exponential Young function needs r >= 1, got {r}"))),
            }
        }
        NormCommand::LHn => {
            let i: LhnInput = parse(text)?;
            l_hn_norm(&vector(&i.xi))?
        }
        NormCommand::KFunctional => match parse::<KInput>(text)? {
            KInput::L1L2 { x, t } => k_functional_l1_l2(t, &vector(&x))?,
            KInput::Weighted { xi, s, t, k_lo } => k_functional_weighted_linf(s, t, &vector(&xi), k_lo)?,
        },
    };
    Ok(json!({ "value": value }))
}

fn run_lift(input: &PathBuf, stats_only: bool) -> Result<Value, Error> {
    let text = std::fs::read_to_string(input).map_err(|e| invalid_input(format!("{}: {e}", input.display())))?;
    let i: DirichletInput = parse(&text)?;
    let d = DirichletPoly::new(i.coeffs.iter().map(|(n, a)| (*n, Complex64::from(a))))?;
    let stats = prime_stats(&d.support())?;
    let mut out = json!({ "stats": stats });
    if !stats_only {
        let p = bohr_lift(&d)?;
        let terms: Vec<Value> = p
            .terms()
            .map(|(alpha, c)| json!({ "alpha": alpha.0, "coeff": [c.re, c.im] }))
            .collect();
        out["poly"] = json!({
            "n": p.n(),
            "flavor": p.flavor(),
            "degree": p.degree(),
            "terms": terms,
        });
    }
    Ok(out)
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Error> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(invalid_input("--threads must be at least 1")),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().map_err(invalid_input)?;
            Ok(pool.install(f))
        }
    }
}

fn report_violations(report: &Report) -> bool {
    let v = report.band_violations();
    for msg in &v {
        eprintln!("{}: band violation: {msg}", report.meta.spec.id);
    }
    !v.is_empty()
}

enum Outcome {
    Ok,
    BandViolation,
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Norms { which } => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            println!("{}", run_norm(which, &text)?);
        }
        Command::Lift { input, stats_only } => {
            println!("{}", serde_json::to_string_pretty(&run_lift(&input, stats_only)?)?);
        }
        Command::Experiment { which } => match which {
            ExperimentCommand::Run {
                config,
                out,
                csv,
                threads,
                seed,
                check,
            } => {
                let text = std::fs::read_to_string(&config).map_err(|e| invalid_input(format!("{}: {e}", config.display())))?;
                let mut spec = ExperimentSpec::from_json(&text)?;
                if let Some(s) = seed {
                    spec.seed = s;
                }
                let start = Instant::now();
                let report = with_threads(threads, || run_experiment(&spec))??;
                std::fs::write(&out, report.to_json()?)?;
                if let Some(path) = csv {
                    report.write_csv(std::fs::File::create(path)?)?;
                }
                eprintln!("{}: {} rows in {:.2?}", spec.id, report.rows.len(), start.elapsed());
                if check && report_violations(&report) {
                    return Ok(Outcome::BandViolation);
                }
            }
            ExperimentCommand::Suite { out, threads, check } => {
                std::fs::create_dir_all(&out)?;
                let mut violated = false;
                for spec in suite_specs() {
                    let start = Instant::now();
                    let report = with_threads(threads, || run_experiment(&spec))??;
                    std::fs::write(out.join(format!("{}.json", spec.id)), report.to_json()?)?;
                    eprintln!("{}: {} rows in {:.2?}", spec.id, report.rows.len(), start.elapsed());
                    if check {
                        violated |= report_violations(&report);
                    }
                }
                if violated {
                    return Ok(Outcome::BandViolation);
                }
            }
        },
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::BandViolation) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
