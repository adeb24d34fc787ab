//! Convergence rows, rate fits and CSV reports.

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::logc::LogComplex;
use crate::C64;

use super::config::Experiment;

pub const CSV_HEADER: [&str; 8] = [
    "k",
    "exact_logmod",
    "exact_phase",
    "pred_logmod",
    "pred_phase",
    "ratio_re",
    "ratio_im",
    "abs_ratio_err",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub k: usize,
    pub exact: LogComplex,
    pub predicted: LogComplex,
    /// `exact / predicted`.
    pub ratio: C64,
    /// `| |exact/predicted| − 1 |`.
    pub abs_ratio_error: f64,
}

impl ConvergenceRow {
    pub fn new(k: usize, exact: LogComplex, predicted: LogComplex) -> Self {
        let ratio = (exact / predicted).to_complex();
        ConvergenceRow {
            k,
            exact,
            predicted,
            ratio,
            abs_ratio_error: (ratio.norm() - 1.0).abs(),
        }
    }

    /// `|ratio − 1|`, sensitive to phase as well as modulus.
    pub fn ratio_defect(&self) -> f64 {
        (self.ratio - C64::new(1.0, 0.0)).norm()
    }
}

pub fn write_csv(path: &Path, rows: &[ConvergenceRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.k.to_string(),
            r.exact.log_mod.to_string(),
            r.exact.phase.to_string(),
            r.predicted.log_mod.to_string(),
            r.predicted.phase.to_string(),
            r.ratio.re.to_string(),
            r.ratio.im.to_string(),
            r.abs_ratio_error.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<ConvergenceRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    let float = |s: &str| -> Result<f64> {
        s.parse::<f64>()
            .map_err(|_| Error::Config(format!("bad number {s:?} in report")))
    };
    reader
        .records()
        .map(|rec| {
            let rec = rec?;
            if rec.len() != CSV_HEADER.len() {
                return Err(Error::Config(format!("row has {} fields", rec.len())));
            }
            Ok(ConvergenceRow {
                k: rec[0]
                    .parse()
                    .map_err(|_| Error::Config(format!("bad k {:?}", &rec[0])))?,
                exact: LogComplex {
                    log_mod: float(&rec[1])?,
                    phase: float(&rec[2])?,
                },
                predicted: LogComplex {
                    log_mod: float(&rec[3])?,
                    phase: float(&rec[4])?,
                },
                ratio: C64::new(float(&rec[5])?, float(&rec[6])?),
                abs_ratio_error: float(&rec[7])?,
            })
        })
        .collect()
}

/// Ordinary least-squares line `y ≈ slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    pub points: usize,
}

pub fn least_squares(xs: &[f64], ys: &[f64]) -> Option<RateFit> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    Some(RateFit {
        slope,
        intercept,
        residual: (ss / nf).sqrt(),
        points: n,
    })
}

/// Slope of `log|ratio − 1|` against `log k` over the upper half of the rows.
pub fn fit_rate(rows: &[ConvergenceRow]) -> Option<RateFit> {
    let upper = &rows[rows.len() / 2..];
    let (xs, ys): (Vec<f64>, Vec<f64>) = upper
        .iter()
        .map(|r| ((r.k as f64).ln(), r.ratio_defect().ln()))
        .filter(|(_, y)| y.is_finite())
        .unzip();
    least_squares(&xs, &ys)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assertion {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Assertion {
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Assertion {
            name: name.into(),
            value,
            threshold,
            passed: value <= threshold,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Assertion {
            name: name.into(),
            value,
            threshold,
            passed: value >= threshold,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub experiment: Experiment,
    pub seed: u64,
    pub rows: Vec<ConvergenceRow>,
    pub fit: Option<RateFit>,
    pub assertions: Vec<Assertion>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(experiment: Experiment, seed: u64) -> Self {
        ExperimentReport {
            experiment,
            seed,
            rows: Vec::new(),
            fit: None,
            assertions: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "experiment: {} (seed {})", self.experiment.name(), self.seed)?;
        if !self.rows.is_empty() {
            writeln!(f, "{:>8} {:>14} {:>14} {:>12}", "k", "|ratio|", "arg ratio", "|ratio-1|")?;
            for r in &self.rows {
                writeln!(
                    f,
                    "{:>8} {:>14.8} {:>14.3e} {:>12.3e}",
                    r.k,
                    r.ratio.norm(),
                    r.ratio.arg(),
                    r.ratio_defect()
                )?;
            }
        }
        if let Some(fit) = &self.fit {
            writeln!(
                f,
                "fit: slope {:.4}, intercept {:.4}, rms residual {:.3e} over {} points",
                fit.slope, fit.intercept, fit.residual, fit.points
            )?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        for a in &self.assertions {
            writeln!(
                f,
                "[{}] {}: {:.6e} (threshold {:.6e})",
                if a.passed { "PASS" } else { "FAIL" },
                a.name,
                a.value,
                a.threshold
            )?;
        }
        write!(f, "overall: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_squares_recovers_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| -0.5 * x + 2.0).collect();
        let fit = least_squares(&xs, &ys).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-14 && (fit.intercept - 2.0).abs() < 1e-14);
        assert!(fit.residual < 1e-14);
        assert!(least_squares(&[1.0], &[1.0]).is_none());
    }

    #[test]
    fn row_ratio_identity() {
        let e = LogComplex::new(3.2, 0.4);
        let p = LogComplex::new(3.1, -0.2);
        let r = ConvergenceRow::new(10, e, p);
        let back = LogComplex::from_complex(r.ratio) * p;
        assert!(back.rel_diff(&e) < 1e-12);
    }
}
