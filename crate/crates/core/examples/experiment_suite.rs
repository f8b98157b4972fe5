//! Runs one small experiment in memory, then the registered suite into a
//! directory given on the command line (default `suite-out`).

use std::path::PathBuf;

use kszlab::harness::{ksz_matrix_statistic, run_experiment, run_suite, sign_pattern_witness, ExperimentSpec};
use kszlab::norms::OrliczExponent;
use kszlab::subgaussian::GeneratorSpec;

fn main() -> kszlab::Result<()> {
    let witness = sign_pattern_witness(6)?;
    let stat = ksz_matrix_statistic(&witness, GeneratorSpec::rademacher(), OrliczExponent::new(2.0)?, 1000, 9)?;
    println!(
        "sign-pattern witness 6 x {}: lhs {:.4} +- {:.4}, rhs {:.4}",
        witness.cols(),
        stat.lhs,
        stat.stderr,
        stat.rhs
    );

    let spec = ExperimentSpec::from_json(
        r#"{"id": "E4_SpectralBilinear", "family": {"kind": "GaussianReal"}, "r": 2, "sizes": [8, 16, 32, 64], "trials": 50, "seed": 1}"#,
    )?;
    let report = run_experiment(&spec)?;
    for row in &report.rows {
        println!("n = {:>3}: lhs {:>8.4}, rhs {:>8.4}, ratio {:.4}", row.size, row.lhs, row.rhs, row.ratio);
    }
    if let Some(s) = report.mean_slope {
        println!("slope of the mean: {:.3} +- {:.3}", s.value, s.half_width);
    }
    println!("band violations: {:?}", report.band_violations());

    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("suite-out"));
    for r in run_suite(&dir)? {
        let status = if r.band_violations().is_empty() { "ok" } else { "outside band" };
        println!("{}: {} rows, {status}", r.meta.spec.id, r.rows.len());
    }
    println!("reports written to {}", dir.display());
    Ok(())
}
