//! Heisenberg charts on the circle bundles of the two models.
//!
//! A chart is described by a holomorphic local frame `σ(u)` of the ambient
//! line over a neighbourhood of the center, written in the ambient
//! coordinates (`ℂ^{d+1}` for projective space, `(z, λ)` for the Heisenberg
//! group), together with a unitary identification of chart coordinates with
//! tangent vectors at the center. Bundle points are `e^{iθ} σ(u) / |σ(u)|`.

use crate::error::{Error, Result};
use crate::hermitian::ComplexVec;
use crate::kernels::BundlePoint;
use crate::torus::{
    act_unchecked, fiber_multipliers, generators_at, stabilizer_of, Model, Stabilizer, TorusElement,
    WeightMatrix,
};
use crate::C64;

/// Radius of validity of projective-line charts.
pub const P1_CHART_RADIUS: f64 = 0.5;
/// Step for first-order central differences.
pub const GRADIENT_STEP: f64 = 1e-4;
/// Coarse step for the extrapolated second-order differences.
pub const HESSIAN_STEP: f64 = 2e-2;

/// Holomorphic multiplicative perturbation `p(u) = 1 + coeff·u_coord³` of a
/// chart frame. It leaves the frame conditions at the center intact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    pub coeff: C64,
    pub coord: usize,
}

impl Perturbation {
    fn eval(&self, u: &ComplexVec) -> C64 {
        C64::new(1.0, 0.0) + self.coeff * u[self.coord].powi(3)
    }
}

#[derive(Debug, Clone)]
struct Symmetry {
    weights: WeightMatrix,
    stabilizer: Stabilizer,
    multipliers: Vec<C64>,
}

#[derive(Debug, Clone)]
enum Geometry {
    /// Center `z₁` of the Heisenberg group.
    Bargmann { z1: ComplexVec },
    /// Center `x ∈ S³` and the unit tangent direction `y = (−x̄₁, x̄₀)`.
    Line { x: ComplexVec, y: ComplexVec },
}

/// Value of a frame in ambient coordinates.
#[derive(Debug, Clone, PartialEq)]
struct Ambient {
    z: ComplexVec,
    lambda: C64,
}

impl Ambient {
    // affine frames carry the section in `lambda`, projective ones in `z`
    fn scale(&self, model: Model, s: C64) -> Ambient {
        match model {
            Model::Affine => Ambient {
                z: self.z.clone(),
                lambda: self.lambda * s,
            },
            Model::Projective => Ambient {
                z: self.z.scale(s),
                lambda: self.lambda,
            },
        }
    }

    fn add(&self, model: Model, other: &Ambient) -> Ambient {
        match model {
            Model::Affine => Ambient {
                z: self.z.clone(),
                lambda: self.lambda + other.lambda,
            },
            Model::Projective => Ambient {
                z: self.z.add(&other.z),
                lambda: self.lambda,
            },
        }
    }

    fn distance(&self, other: &Ambient) -> f64 {
        (self.z.sub(&other.z).norm_sqr() + (self.lambda - other.lambda).norm_sqr()).sqrt()
    }

    fn size(&self) -> f64 {
        (self.z.norm_sqr() + self.lambda.norm_sqr()).sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct Chart {
    geometry: Geometry,
    center: BundlePoint,
    perturbation: Option<Perturbation>,
    symmetry: Option<Symmetry>,
    averaged: bool,
    radius: f64,
}

/// `φ_{z₁}(w, θ) = φ₀(z₁ + w, ω₀(w, z₁) + θ)`.
pub fn bargmann_chart(z1: &ComplexVec) -> Chart {
    Chart {
        geometry: Geometry::Bargmann { z1: z1.clone() },
        center: BundlePoint::Heisenberg {
            z: z1.clone(),
            theta: 0.0,
        },
        perturbation: None,
        symmetry: None,
        averaged: false,
        radius: f64::INFINITY,
    }
}

/// Bargmann chart whose frame is perturbed and then averaged over the
/// stabilizer of `z₁`.
pub fn bargmann_chart_equivariant(
    z1: &ComplexVec,
    w: &WeightMatrix,
    perturbation: Option<Perturbation>,
    average: bool,
) -> Result<Chart> {
    let mut chart = bargmann_chart(z1);
    chart.symmetry = Some(symmetry_at(w, z1, Model::Affine)?);
    chart.set_perturbation(perturbation)?;
    chart.averaged = average;
    Ok(chart)
}

/// Chart on the circle bundle of `ℙ¹` centered at the unit vector `x`, with
/// frame averaged over the stabilizer of `[x]`.
pub fn p1_chart(x: &ComplexVec, w: &WeightMatrix) -> Result<Chart> {
    p1_chart_with(x, w, None, true)
}

pub fn p1_chart_with(
    x: &ComplexVec,
    w: &WeightMatrix,
    perturbation: Option<Perturbation>,
    average: bool,
) -> Result<Chart> {
    if x.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: x.dim(),
        });
    }
    let x = x.normalized()?;
    let y = ComplexVec::new(vec![-x[1].conj(), x[0].conj()]);
    let mut chart = Chart {
        geometry: Geometry::Line { x: x.clone(), y },
        center: BundlePoint::Sphere(x.clone()),
        perturbation: None,
        symmetry: Some(symmetry_at(w, &x, Model::Projective)?),
        averaged: average,
        radius: P1_CHART_RADIUS,
    };
    chart.set_perturbation(perturbation)?;
    let report = verify_frame(&chart);
    if average && !report.passes(1e-6) {
        return Err(Error::FrameVerification(format!("{report:?}")));
    }
    Ok(chart)
}

fn symmetry_at(w: &WeightMatrix, z: &ComplexVec, model: Model) -> Result<Symmetry> {
    let stabilizer = stabilizer_of(w, z, model)?;
    let multipliers = fiber_multipliers(w, &stabilizer, z)?;
    Ok(Symmetry {
        weights: w.clone(),
        stabilizer,
        multipliers,
    })
}

impl Chart {
    fn set_perturbation(&mut self, p: Option<Perturbation>) -> Result<()> {
        if let Some(p) = p {
            if p.coord >= self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    got: p.coord + 1,
                });
            }
        }
        self.perturbation = p;
        Ok(())
    }

    pub fn model(&self) -> Model {
        self.center.model()
    }

    pub fn center(&self) -> &BundlePoint {
        &self.center
    }

    /// Complex dimension of the chart coordinates.
    pub fn dim(&self) -> usize {
        match &self.geometry {
            Geometry::Bargmann { z1 } => z1.dim(),
            Geometry::Line { .. } => 1,
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn stabilizer(&self) -> Option<&Stabilizer> {
        self.symmetry.as_ref().map(|s| &s.stabilizer)
    }

    pub fn multipliers(&self) -> Option<&[C64]> {
        self.symmetry.as_ref().map(|s| s.multipliers.as_slice())
    }

    pub fn is_averaged(&self) -> bool {
        self.averaged
    }

    fn check_coords(&self, u: &ComplexVec) -> Result<()> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: u.dim(),
            });
        }
        Ok(())
    }

    /// Unitary map from chart vectors to ambient tangent vectors at the center.
    pub fn tangent_frame(&self, w: &ComplexVec) -> Result<ComplexVec> {
        self.check_coords(w)?;
        Ok(match &self.geometry {
            Geometry::Bargmann { .. } => w.clone(),
            Geometry::Line { y, .. } => y.scale(w[0]),
        })
    }

    /// Inverse of [`Chart::tangent_frame`] on the horizontal tangent space.
    pub fn to_chart_coords(&self, v: &ComplexVec) -> Result<ComplexVec> {
        match &self.geometry {
            Geometry::Bargmann { z1 } => {
                if v.dim() != z1.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: z1.dim(),
                        got: v.dim(),
                    });
                }
                Ok(v.clone())
            }
            Geometry::Line { y, .. } => {
                if v.dim() != 2 {
                    return Err(Error::DimensionMismatch {
                        expected: 2,
                        got: v.dim(),
                    });
                }
                Ok(ComplexVec::new(vec![v.herm(y)]))
            }
        }
    }

    /// Infinitesimal generators of the action at the center, in chart coordinates.
    pub fn generators(&self, w: &WeightMatrix) -> Result<Vec<ComplexVec>> {
        match &self.geometry {
            Geometry::Bargmann { z1 } => generators_at(w, z1, Model::Affine),
            Geometry::Line { x, .. } => generators_at(w, x, Model::Projective)?
                .iter()
                .map(|v| self.to_chart_coords(v))
                .collect(),
        }
    }

    /// Chart coordinates of the image of the base point `u` under `t`.
    fn act_coords(&self, w: &WeightMatrix, t: &TorusElement, u: &ComplexVec) -> ComplexVec {
        match &self.geometry {
            Geometry::Bargmann { .. } => act_unchecked(w, t.angles(), u),
            Geometry::Line { x, y } => {
                let p = act_unchecked(w, t.angles(), &x.add(&y.scale(u[0])));
                ComplexVec::new(vec![p.herm(y) / p.herm(x)])
            }
        }
    }

    fn act_ambient(&self, w: &WeightMatrix, t: &TorusElement, s: &Ambient) -> Ambient {
        Ambient {
            z: act_unchecked(w, t.angles(), &s.z),
            lambda: s.lambda,
        }
    }

    fn raw_frame(&self, u: &ComplexVec) -> Ambient {
        let p = self
            .perturbation
            .map_or(C64::new(1.0, 0.0), |p| p.eval(u));
        match &self.geometry {
            Geometry::Bargmann { z1 } => {
                // |f|² e^{‖z₁+u‖²} = e^{‖u‖²}
                let f = (-u.herm(z1) - C64::new(0.5 * z1.norm_sqr(), 0.0)).exp();
                Ambient {
                    z: z1.add(u),
                    lambda: f * p,
                }
            }
            Geometry::Line { x, y } => Ambient {
                z: x.add(&y.scale(u[0])).scale(p),
                lambda: C64::new(1.0, 0.0),
            },
        }
    }

    fn frame_unchecked(&self, u: &ComplexVec) -> Ambient {
        match (&self.symmetry, self.averaged) {
            (Some(sym), true) => {
                let order = sym.stabilizer.order() as f64;
                let mut acc: Option<Ambient> = None;
                for (t, h) in sym.stabilizer.elements().iter().zip(&sym.multipliers) {
                    let pre = self.act_coords(&sym.weights, &t.inverse(), u);
                    let term = self
                        .act_ambient(&sym.weights, t, &self.raw_frame(&pre))
                        .scale(self.model(), h.conj() / order);
                    acc = Some(match acc {
                        None => term,
                        Some(a) => a.add(self.model(), &term),
                    });
                }
                let mut out = acc.expect("stabilizer contains the identity");
                if self.model() == Model::Affine {
                    // the base coordinate is fixed by the stabilizer
                    out.z = self.raw_frame(u).z;
                }
                out
            }
            _ => self.raw_frame(u),
        }
    }

    /// `log ‖σ(u)‖²` in the bundle metric.
    pub fn log_frame_norm(&self, u: &ComplexVec) -> Result<f64> {
        self.check_coords(u)?;
        Ok(self.log_norm_unchecked(&self.frame_unchecked(u)))
    }

    fn log_norm_unchecked(&self, s: &Ambient) -> f64 {
        match &self.geometry {
            Geometry::Bargmann { .. } => s.lambda.norm_sqr().ln() + s.z.norm_sqr(),
            Geometry::Line { .. } => s.z.norm_sqr().ln(),
        }
    }

    /// The bundle point `ρ(u, θ) = e^{iθ}σ(u)/|σ(u)|`.
    pub fn eval(&self, u: &ComplexVec, theta: f64) -> Result<BundlePoint> {
        self.check_coords(u)?;
        if u.iter().all(|c| *c == C64::new(0.0, 0.0)) {
            return Ok(self.center.rotate_fiber(C64::from_polar(1.0, theta)));
        }
        let s = self.frame_unchecked(u);
        Ok(match &self.geometry {
            Geometry::Bargmann { .. } => BundlePoint::Heisenberg {
                z: s.z,
                theta: s.lambda.arg() + theta,
            },
            Geometry::Line { .. } => {
                let n = s.z.norm();
                BundlePoint::Sphere(s.z.scale(C64::from_polar(1.0 / n, theta)))
            }
        })
    }

    /// The scaled point `x + w/√k`.
    pub fn chart_point(&self, k: usize, w: &ComplexVec) -> Result<BundlePoint> {
        self.check_coords(w)?;
        let u = w.scale_real(1.0 / (k as f64).sqrt());
        if u.norm() >= self.radius {
            return Err(Error::OutsideChart {
                norm: u.norm(),
                radius: self.radius,
            });
        }
        self.eval(&u, 0.0)
    }
}

pub fn chart_point(chart: &Chart, k: usize, w: &ComplexVec) -> Result<BundlePoint> {
    chart.chart_point(k, w)
}

/// Residuals of the preferred-frame conditions at the chart center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameReport {
    /// `|log ‖σ(0)‖²|`.
    pub norm: f64,
    /// Euclidean norm of the gradient of `log ‖σ‖²` at the center.
    pub gradient: f64,
    /// Largest entry of the real Hessian of `log ‖σ‖²` minus `2·I`.
    pub hessian_defect: f64,
    /// Largest relative defect of `μ_g σ(u) = h_g σ(g·u)` over the
    /// stabilizer and a set of sample points.
    pub equivariance: f64,
}

impl FrameReport {
    pub fn max(&self) -> f64 {
        self.norm
            .max(self.gradient)
            .max(self.hessian_defect)
            .max(self.equivariance)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

fn real_direction(dim: usize, j: usize, step: f64) -> ComplexVec {
    let mut v = ComplexVec::zeros(dim).into_inner();
    v[j / 2] = if j.is_multiple_of(2) {
        C64::new(step, 0.0)
    } else {
        C64::new(0.0, step)
    };
    ComplexVec::new(v)
}

pub fn verify_frame(chart: &Chart) -> FrameReport {
    let m = chart.dim();
    let f = |u: &ComplexVec| chart.log_norm_unchecked(&chart.frame_unchecked(u));
    let zero = ComplexVec::zeros(m);
    let f0 = f(&zero);

    let gradient = (0..2 * m)
        .map(|j| {
            let e = real_direction(m, j, GRADIENT_STEP);
            (f(&e) - f(&e.scale_real(-1.0))) / (2.0 * GRADIENT_STEP)
        })
        .map(|d| d * d)
        .sum::<f64>()
        .sqrt();

    let second = |i: usize, j: usize, h: f64| -> f64 {
        let ei = real_direction(m, i, h);
        let ej = real_direction(m, j, h);
        if i == j {
            (f(&ei) - 2.0 * f0 + f(&ei.scale_real(-1.0))) / (h * h)
        } else {
            (f(&ei.add(&ej)) - f(&ei.sub(&ej)) - f(&ej.sub(&ei)) + f(&ei.add(&ej).scale_real(-1.0)))
                / (4.0 * h * h)
        }
    };
    let mut hessian_defect: f64 = 0.0;
    for i in 0..2 * m {
        for j in 0..2 * m {
            let coarse = second(i, j, HESSIAN_STEP);
            let fine = second(i, j, HESSIAN_STEP / 2.0);
            let d = (4.0 * fine - coarse) / 3.0;
            let target = if i == j { 2.0 } else { 0.0 };
            hessian_defect = hessian_defect.max((d - target).abs());
        }
    }

    let mut equivariance: f64 = 0.0;
    if let Some(sym) = &chart.symmetry {
        for s in 0..4 {
            let u = ComplexVec::new(
                (0..m)
                    .map(|l| C64::from_polar(0.1 / (m as f64).sqrt(), 0.7 + 1.3 * s as f64 + 0.4 * l as f64))
                    .collect(),
            );
            let base = chart.frame_unchecked(&u);
            for (t, h) in sym.stabilizer.elements().iter().zip(&sym.multipliers) {
                let lhs = chart.act_ambient(&sym.weights, t, &base);
                let rhs = chart
                    .frame_unchecked(&chart.act_coords(&sym.weights, t, &u))
                    .scale(chart.model(), *h);
                equivariance = equivariance.max(lhs.distance(&rhs) / base.size());
            }
        }
    }

    FrameReport {
        norm: f0.abs(),
        gradient,
        hessian_defect,
        equivariance,
    }
}
