use std::io::Write;

use serde::{Deserialize, Serialize};

use super::ExperimentSpec;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Twice the standard error of the slope.
    pub half_width: f64,
}

/// Ordinary least squares of `log y` on `log x`.
pub fn fit_slope(points: &[(f64, f64)]) -> Result<SlopeFit> {
    if points.len() < 3 {
        return invalid(format!("fit_slope needs at least 3 points, got {}", points.len()));
    }
    if points.iter().any(|(x, y)| !(*x > 0.0) || !(*y > 0.0) || !x.is_finite() || !y.is_finite()) {
        return invalid("fit_slope needs positive finite coordinates");
    }
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let n = points.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return invalid("fit_slope needs distinct x values");
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let se = if points.len() > 2 { (rss / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok(SlopeFit {
        slope,
        intercept,
        half_width: 2.0 * se,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub size: u64,
    /// Size variable the slopes are fitted against.
    pub driver: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub stderr: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slope {
    pub value: f64,
    pub half_width: f64,
}

impl From<SlopeFit> for Slope {
    fn from(f: SlopeFit) -> Self {
        Slope {
            value: f.slope,
            half_width: f.half_width,
        }
    }
}

/// Acceptance bands registered for an experiment.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Bands {
    /// Admissible range of the slope of `log mean` against `log driver`.
    pub mean_slope: Option<(f64, f64)>,
    /// Every row must have `ratio ≥ ratio_min`.
    pub ratio_min: Option<f64>,
    /// Every row must have `ratio ≤ ratio_cap`.
    pub ratio_cap: Option<f64>,
    /// `|slope of log ratio|` must not exceed this.
    pub ratio_trend: Option<f64>,
    /// Largest admissible `max/min` over all per-trial ratios.
    pub ratio_band_width: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub spec: ExperimentSpec,
    pub version: String,
    pub trials: usize,
    pub lhs: String,
    pub rhs: String,
    pub driver: String,
    pub bands: Bands,
    /// `(min, max)` of the per-trial ratios, when the experiment has them.
    pub ratio_band: Option<(f64, f64)>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<Row>,
    /// Slope of `log lhs` against `log driver`.
    pub slope: Option<Slope>,
    pub mean_slope: Option<Slope>,
    pub ratio_slope: Option<Slope>,
    pub meta: Meta,
}

impl Report {
    pub(crate) fn assemble(rows: Vec<Row>, meta: Meta) -> Result<Self> {
        let fit = |f: &dyn Fn(&Row) -> f64| -> Option<Slope> {
            let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.driver, f(r))).collect();
            fit_slope(&pts).ok().map(Slope::from)
        };
        Ok(Report {
            slope: fit(&|r| r.lhs),
            mean_slope: fit(&|r| r.mean),
            ratio_slope: fit(&|r| r.ratio),
            rows,
            meta,
        })
    }

    /// Pretty JSON; identical inputs give identical bytes.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Columns `size, lhs, rhs, ratio, stderr`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["size", "lhs", "rhs", "ratio", "stderr"]).map_err(csv_error)?;
        for r in &self.rows {
            w.serialize((r.size, r.lhs, r.rhs, r.ratio, r.stderr)).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Descriptions of every registered band the report falls outside of.
    pub fn band_violations(&self) -> Vec<String> {
        let b = &self.meta.bands;
        let mut out = Vec::new();
        if let Some((lo, hi)) = b.mean_slope {
            match self.mean_slope {
                Some(s) if s.value >= lo && s.value <= hi => {}
                Some(s) => out.push(format!("mean slope {} outside [{lo}, {hi}]", s.value)),
                None => out.push("mean slope needs at least 3 sizes".into()),
            }
        }
        for r in &self.rows {
            if let Some(min) = b.ratio_min {
                if !(r.ratio >= min) {
                    out.push(format!("size {}: ratio {} below {min}", r.size, r.ratio));
                }
            }
            if let Some(cap) = b.ratio_cap {
                if !(r.ratio <= cap) {
                    out.push(format!("size {}: ratio {} above cap {cap}", r.size, r.ratio));
                }
            }
        }
        if let Some(t) = b.ratio_trend {
            match self.ratio_slope {
                Some(s) if s.value.abs() <= t => {}
                Some(s) => out.push(format!("ratio trend {} outside ±{t}", s.value)),
                None => out.push("ratio trend needs at least 3 sizes".into()),
            }
        }
        if let (Some(w), Some((lo, hi))) = (b.ratio_band_width, self.meta.ratio_band) {
            if !(hi <= w * lo) {
                out.push(format!("ratio band [{lo}, {hi}] wider than a factor {w}"));
            }
        }
        out
    }
}

fn csv_error(e: csv::Error) -> crate::Error {
    crate::Error::Io(e.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgaussian::stream_rng;
    use rand::Rng;

    #[test]
    fn slope_examples() {
        let f = fit_slope(&[(1.0, 1.0), (2.0, 2.0), (4.0, 4.0)]).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-15 && f.intercept.abs() < 1e-15);
        let pts: Vec<(f64, f64)> = [1.0, 2.0, 4.0, 8.0].iter().map(|x: &f64| (*x, x.powf(1.5))).collect();
        let f = fit_slope(&pts).unwrap();
        assert!((f.slope - 1.5).abs() < 1e-12);
        assert!(f.half_width < 1e-12);
        assert!(fit_slope(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_slope(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]).is_err());
        assert!(fit_slope(&[(1.0, 1.0), (2.0, 0.0), (3.0, 3.0)]).is_err());
    }

    #[test]
    fn noisy_power_law() {
        let mut rng = stream_rng(5, 0);
        for _ in 0..200 {
            let pts: Vec<(f64, f64)> = (0..8)
                .map(|k| {
                    let x = 2f64.powi(k);
                    (x, x.sqrt() * (1.0 + (rng.random::<f64>() * 0.1 - 0.05)))
                })
                .collect();
            let s = fit_slope(&pts).unwrap().slope;
            assert!((0.4..=0.6).contains(&s));
        }
    }
}
