//! TOML experiment configuration.
//!
//! ```toml
//! experiment = "diagonal"          # diagonal | offdiag | translated | decay | selection | crosscheck | gaussian | phase
//! model = "projective"             # projective | affine
//! weights = [[-1, 1]]              # one integer row per torus coordinate
//! point = ["0.7071067811865476", "0.7071067811865476"]
//! irrep = [0]
//! k_schedule = [100, 200, 400]
//! method = "weightsum"             # weightsum | quadrature (exact side)
//! output_path = "diagonal.csv"
//! seed = 7
//!
//! [displacements]                  # chart coordinates
//! w = ["0.3+0.2j"]
//! v = ["-0.1+0.4j"]
//!
//! [tolerances]
//! final_ratio = 0.01
//! slope = -0.9
//! ```
//!
//! Optional keys: `g0` (torus angles) and `h0` (unit complex) for
//! `translated`, `partner` (a second point) for `decay`, `trials` and
//! `trials_g2` for the randomized experiments.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::ComplexVec;
use crate::torus::{on_zero_level, IrrepLabel, Model, TorusElement, WeightMatrix};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Diagonal,
    #[serde(alias = "offdiagonal")]
    Offdiag,
    Translated,
    Decay,
    Selection,
    Crosscheck,
    Gaussian,
    Phase,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Diagonal => "diagonal",
            Experiment::Offdiag => "offdiag",
            Experiment::Translated => "translated",
            Experiment::Decay => "decay",
            Experiment::Selection => "selection",
            Experiment::Crosscheck => "crosscheck",
            Experiment::Gaussian => "gaussian",
            Experiment::Phase => "phase",
        }
    }

    fn needs_zero_level(&self) -> bool {
        matches!(self, Experiment::Diagonal | Experiment::Offdiag | Experiment::Translated)
    }

    fn needs_schedule(&self) -> bool {
        matches!(
            self,
            Experiment::Diagonal | Experiment::Offdiag | Experiment::Translated | Experiment::Decay | Experiment::Selection
        )
    }
}

/// Evaluation route for the exact side of a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Weightsum,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Bound on `|ratio − 1|` at the largest k.
    pub final_ratio: f64,
    /// Upper bound on the fitted log-log slope of `|ratio − 1|`.
    pub slope: f64,
    /// Expected exponential decay rate, if asserted.
    pub decay_rate: Option<f64>,
    /// Relative tolerance on the decay rate.
    pub decay_rel: f64,
    /// Upper bound on `log|Π(x, y)| / k` at the largest k for a partner point.
    pub off_locus: f64,
    /// Bound on quadrature values of vanishing kernels, relative to `Π_k(x, x)`.
    pub selection_zero: f64,
    pub crosscheck: f64,
    pub gaussian: f64,
    pub phase: f64,
    pub frame: f64,
    /// Agreement required of finite-difference derivative checks.
    pub finite_difference: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            final_ratio: 0.05,
            slope: -0.4,
            decay_rate: None,
            decay_rel: 0.1,
            off_locus: -0.1,
            selection_zero: 1e-12,
            crosscheck: 1e-10,
            gaussian: 1e-8,
            phase: 1e-14,
            frame: 1e-6,
            finite_difference: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDisplacements {
    #[serde(default)]
    w: Vec<String>,
    #[serde(default)]
    v: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    experiment: Experiment,
    #[serde(default = "default_model")]
    model: Model,
    #[serde(default = "default_weights")]
    weights: Vec<Vec<i64>>,
    #[serde(default)]
    point: Vec<String>,
    #[serde(default)]
    irrep: Vec<i64>,
    #[serde(default)]
    k_schedule: Vec<usize>,
    #[serde(default)]
    displacements: RawDisplacements,
    #[serde(default)]
    tolerances: Tolerances,
    #[serde(default)]
    output_path: Option<PathBuf>,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    method: Method,
    #[serde(default)]
    g0: Option<Vec<f64>>,
    #[serde(default)]
    h0: Option<String>,
    #[serde(default)]
    partner: Option<Vec<String>>,
    #[serde(default)]
    trials: Option<usize>,
    #[serde(default)]
    trials_g2: Option<usize>,
}

fn default_model() -> Model {
    Model::Projective
}

fn default_weights() -> Vec<Vec<i64>> {
    vec![vec![-1, 1]]
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub model: Model,
    pub weights: WeightMatrix,
    pub point: ComplexVec,
    pub irrep: IrrepLabel,
    /// Chart displacements `(w, v)`.
    pub displacements: (ComplexVec, ComplexVec),
    pub k_schedule: Vec<usize>,
    pub tolerances: Tolerances,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    pub method: Method,
    pub g0: Option<TorusElement>,
    pub h0: Option<C64>,
    pub partner: Option<ComplexVec>,
    pub trials: usize,
    pub trials_g2: usize,
}

/// Parses `"re+imj"`, `"re"`, `"imj"` (an `i` suffix is also accepted).
pub fn parse_complex(s: &str) -> Result<C64> {
    let err = || Error::Config(format!("cannot parse complex number {s:?}"));
    let t = s.trim().replace(' ', "");
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix('j').or_else(|| t.strip_suffix('i')) else {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| err());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let parse_im = |s: &str| -> Result<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| err()),
        }
    };
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| err())?;
            Ok(C64::new(re, parse_im(&body[i..])?))
        }
        None => Ok(C64::new(0.0, parse_im(body)?)),
    }
}

pub fn format_complex(c: C64) -> String {
    format!("{}{:+}j", c.re, c.im)
}

pub fn parse_complex_list(items: &[String]) -> Result<ComplexVec> {
    items
        .iter()
        .map(|s| parse_complex(s))
        .collect::<Result<Vec<_>>>()
        .map(ComplexVec::new)
}

/// Parses a weight matrix written as rows separated by `;`, e.g. `"-1,1;0,2"`.
pub fn parse_weights(s: &str) -> Result<WeightMatrix> {
    let rows = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Config(format!("bad weight entry {e:?}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    WeightMatrix::new(rows)
}

pub fn parse_int_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|e| {
            e.trim()
                .parse::<T>()
                .map_err(|_| Error::Config(format!("bad integer {e:?}")))
        })
        .collect()
}

/// Splits a comma-separated list of complex numbers.
pub fn parse_point(s: &str) -> Result<ComplexVec> {
    let items: Vec<String> = s.split(',').map(str::to_string).collect();
    parse_complex_list(&items)
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let weights = WeightMatrix::new(raw.weights)?;
        let point = if raw.point.is_empty() {
            let s = (1.0 / weights.dim() as f64).sqrt();
            ComplexVec::new(vec![C64::new(s, 0.0); weights.dim()])
        } else {
            parse_complex_list(&raw.point)?
        };
        let irrep = if raw.irrep.is_empty() {
            IrrepLabel::trivial(weights.rank())
        } else {
            IrrepLabel::new(raw.irrep)
        };
        let chart_dim = match raw.model {
            Model::Affine => weights.dim(),
            Model::Projective => weights.dim() - 1,
        };
        let disp = |items: &[String]| -> Result<ComplexVec> {
            if items.is_empty() {
                Ok(ComplexVec::zeros(chart_dim))
            } else {
                parse_complex_list(items)
            }
        };
        let config = ExperimentConfig {
            experiment: raw.experiment,
            model: raw.model,
            weights,
            point,
            irrep,
            displacements: (disp(&raw.displacements.w)?, disp(&raw.displacements.v)?),
            k_schedule: raw.k_schedule,
            tolerances: raw.tolerances,
            output_path: raw.output_path,
            seed: raw.seed,
            method: raw.method,
            g0: raw.g0.map(TorusElement::new),
            h0: raw.h0.as_deref().map(parse_complex).transpose()?,
            partner: raw.partner.as_deref().map(parse_complex_list).transpose()?,
            trials: raw.trials.unwrap_or(50),
            trials_g2: raw.trials_g2.unwrap_or(20),
        };
        config.normalized()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    /// Normalizes projective points and checks the experiment's preconditions.
    pub fn normalized(mut self) -> Result<Self> {
        if self.model == Model::Projective {
            self.point = self.point.normalized()?;
            if let Some(p) = &self.partner {
                self.partner = Some(p.normalized()?);
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        self.weights.check_point(&self.point)?;
        if let Some(p) = &self.partner {
            self.weights.check_point(p)?;
        }
        if self.irrep.rank() != self.weights.rank() {
            return Err(Error::RankMismatch {
                expected: self.weights.rank(),
                got: self.irrep.rank(),
            });
        }
        if let Some(g0) = &self.g0 {
            self.weights.check_rank(g0.rank())?;
        }
        if self.k_schedule.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("k_schedule must be strictly increasing".into()));
        }
        if self.k_schedule.first() == Some(&0) {
            return Err(Error::Config("k_schedule entries must be positive".into()));
        }
        if self.experiment.needs_schedule() && self.k_schedule.is_empty() {
            return Err(Error::EmptySchedule);
        }
        let on_level = on_zero_level(&self.weights, &self.point, self.model)?;
        if self.experiment.needs_zero_level() && !on_level {
            return Err(Error::NotOnZeroLevel(format!(
                "the {} experiment needs a point on the zero level",
                self.experiment.name()
            )));
        }
        if self.experiment == Experiment::Decay && on_level {
            return Err(Error::OnZeroLevel);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_strings() {
        let cases = [
            ("1.5+2j", C64::new(1.5, 2.0)),
            ("-0.25-1e-3j", C64::new(-0.25, -1e-3)),
            ("3", C64::new(3.0, 0.0)),
            ("-2j", C64::new(0.0, -2.0)),
            ("1e-5+2.5E+2j", C64::new(1e-5, 250.0)),
            ("j", C64::new(0.0, 1.0)),
            ("0.5-i", C64::new(0.5, -1.0)),
        ];
        for (s, c) in cases {
            assert_eq!(parse_complex(s).unwrap(), c, "{s}");
        }
        assert!(parse_complex("abc").is_err());
        let z = C64::new(-0.1234567890123, 9.87e-20);
        assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
    }

    #[test]
    fn loads_minimal_config() {
        let c = ExperimentConfig::from_toml_str(
            "experiment = \"diagonal\"\nk_schedule = [2, 4]\n[tolerances]\nslope = -0.9\n",
        )
        .unwrap();
        assert_eq!(c.weights.rows(), vec![vec![-1, 1]]);
        assert!((c.point.norm() - 1.0).abs() < 1e-15);
        assert_eq!(c.tolerances.slope, -0.9);
        assert_eq!(c.tolerances.final_ratio, 0.05);
    }

    #[test]
    fn rejects_bad_schedules_and_levels() {
        assert!(ExperimentConfig::from_toml_str("experiment = \"diagonal\"\nk_schedule = [4, 2]\n").is_err());
        assert!(matches!(
            ExperimentConfig::from_toml_str("experiment = \"decay\"\nk_schedule = [2, 4]\n"),
            Err(Error::OnZeroLevel)
        ));
        assert!(matches!(
            ExperimentConfig::from_toml_str(
                "experiment = \"diagonal\"\npoint = [\"0.9486832980505138\", \"0.31622776601683794\"]\nk_schedule = [2]\n"
            ),
            Err(Error::NotOnZeroLevel(_))
        ));
        assert!(ExperimentConfig::from_toml_str("experiment = \"diagonal\"\nbogus = 1\nk_schedule = [2]\n").is_err());
    }

    #[test]
    fn weight_and_list_overrides() {
        let w = parse_weights("-1,1;0,2").unwrap();
        assert_eq!(w.rows(), vec![vec![-1, 1], vec![0, 2]]);
        assert_eq!(parse_int_list::<usize>("1, 2,3").unwrap(), vec![1, 2, 3]);
        let p = parse_point("1+0j,0-1j").unwrap();
        assert_eq!(p[1], C64::new(0.0, -1.0));
    }
}
