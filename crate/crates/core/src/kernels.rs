//! Exact level-k Szegő kernels and their isotypic projections.
//!
//! Two independent evaluation routes are provided for the equivariant kernel:
//! summation over the monomial weight spaces, and trapezoid quadrature of the
//! character-weighted full kernel over the torus.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hermitian::{check_dims, psi2_unchecked, ComplexVec};
use crate::logc::{ln_factorial, LogComplex, LogSum};
use crate::torus::{act_unchecked, IrrepLabel, Model, WeightMatrix, IRREP_DIM};
use crate::C64;

/// Largest `d` (for `d + 1` coordinates) accepted by [`enumerate_indices`].
pub const MAX_ENUM_DIM: usize = 4;
/// Affine series terms this many nats below the running maximum are dropped.
pub const SERIES_CUTOFF_NATS: f64 = 40.0;
/// Relative agreement required between successive quadrature refinements.
pub const QUADRATURE_REL_TOL: f64 = 1e-12;
/// Cap on the total number of quadrature nodes.
pub const QUADRATURE_MAX_NODES: usize = 1 << 20;

/// A point of the circle bundle `X` in one of the two models.
#[derive(Debug, Clone, PartialEq)]
pub enum BundlePoint {
    /// Unit vector in ℂ^{d+1} over `[z] ∈ ℙᵈ`.
    Sphere(ComplexVec),
    /// `φ₀(z, θ) = (z, e^{−‖z‖²/2 + iθ})` in the reduced Heisenberg group.
    Heisenberg { z: ComplexVec, theta: f64 },
}

impl BundlePoint {
    pub fn model(&self) -> Model {
        match self {
            BundlePoint::Sphere(_) => Model::Projective,
            BundlePoint::Heisenberg { .. } => Model::Affine,
        }
    }

    /// The base coordinates (the sphere vector or the Heisenberg `z`).
    pub fn base(&self) -> &ComplexVec {
        match self {
            BundlePoint::Sphere(x) => x,
            BundlePoint::Heisenberg { z, .. } => z,
        }
    }

    /// `μ_t` for the torus element with the given angles.
    pub fn act(&self, w: &WeightMatrix, angles: &[f64]) -> BundlePoint {
        match self {
            BundlePoint::Sphere(x) => BundlePoint::Sphere(act_unchecked(w, angles, x)),
            BundlePoint::Heisenberg { z, theta } => BundlePoint::Heisenberg {
                z: act_unchecked(w, angles, z),
                theta: *theta,
            },
        }
    }

    /// Fiber rotation `r_h` by a unit complex number.
    pub fn rotate_fiber(&self, h: C64) -> BundlePoint {
        match self {
            BundlePoint::Sphere(x) => BundlePoint::Sphere(x.scale(h)),
            BundlePoint::Heisenberg { z, theta } => BundlePoint::Heisenberg {
                z: z.clone(),
                theta: theta + h.arg(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    exponents: Vec<usize>,
}

impl MultiIndex {
    pub fn new(exponents: Vec<usize>) -> Self {
        MultiIndex { exponents }
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().sum()
    }

    pub fn ln_factorial(&self) -> f64 {
        self.exponents.iter().map(|&j| ln_factorial(j as u64)).sum()
    }
}

/// `Σ_l j_l log(a_l) (+ conj for b)`, i.e. `log(a^J · conj(b)^J)`; zero when a
/// needed coordinate vanishes.
fn log_monomial_pair(j: &[usize], a: &[C64], b: &[C64]) -> LogComplex {
    let mut log_mod = 0.0;
    let mut phase = 0.0;
    for (l, &e) in j.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let p = a[l] * b[l].conj();
        if p.norm() == 0.0 {
            return LogComplex::ZERO;
        }
        log_mod += e as f64 * p.norm().ln();
        phase += e as f64 * p.arg();
    }
    LogComplex::new(log_mod, phase)
}

fn log_monomial(j: &[usize], z: &[C64]) -> LogComplex {
    let mut log_mod = 0.0;
    let mut phase = 0.0;
    for (l, &e) in j.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if z[l].norm() == 0.0 {
            return LogComplex::ZERO;
        }
        log_mod += e as f64 * z[l].norm().ln();
        phase += e as f64 * z[l].arg();
    }
    LogComplex::new(log_mod, phase)
}

/// `(k/π)^n · e^{k[i(θ−θ') + ψ₂(w, v)]}`.
pub fn bargmann_kernel(k: u64, w: &ComplexVec, theta: f64, v: &ComplexVec, theta_prime: f64) -> Result<LogComplex> {
    check_dims(w, v)?;
    let n = w.dim() as f64;
    let kf = k as f64;
    let psi = psi2_unchecked(w, v);
    Ok(LogComplex::new(
        n * (kf / PI).ln() + kf * psi.re,
        kf * (theta - theta_prime + psi.im),
    ))
}

/// `ln((k+d)! / (π^d J!))`, the squared normalization of `s_J`.
fn ln_section_norm_sqr(k: usize, d: usize, j: &MultiIndex) -> f64 {
    ln_factorial((k + d) as u64) - d as f64 * PI.ln() - j.ln_factorial()
}

/// `s_J^k(z) = sqrt((k+d)!/(π^d J!)) z^J`.
pub fn monomial_section(k: usize, j: &MultiIndex, z: &ComplexVec) -> Result<LogComplex> {
    if j.exponents.len() != z.dim() {
        return Err(Error::DimensionMismatch {
            expected: j.exponents.len(),
            got: z.dim(),
        });
    }
    if j.degree() != k {
        return Err(Error::DegreeMismatch {
            expected: k,
            got: j.degree(),
        });
    }
    let d = z.dim() - 1;
    let norm = LogComplex::from_real_log(0.5 * ln_section_norm_sqr(k, d, j));
    Ok(norm * log_monomial(&j.exponents, z))
}

/// `((k+d)!/(π^d k!)) ⟨x, y⟩^k`.
pub fn projective_kernel(k: usize, x: &ComplexVec, y: &ComplexVec) -> Result<LogComplex> {
    check_dims(x, y)?;
    let d = x.dim() - 1;
    let c = ln_factorial((k + d) as u64) - d as f64 * PI.ln() - ln_factorial(k as u64);
    Ok(LogComplex::from_real_log(c) * LogComplex::from_complex(x.herm(y)).powi(k as i64))
}

/// The full level-k kernel `Π_k(p, q)` in the model of the points.
pub fn full_kernel(k: usize, p: &BundlePoint, q: &BundlePoint) -> Result<LogComplex> {
    match (p, q) {
        (BundlePoint::Sphere(x), BundlePoint::Sphere(y)) => projective_kernel(k, x, y),
        (
            BundlePoint::Heisenberg { z: a, theta: ta },
            BundlePoint::Heisenberg { z: b, theta: tb },
        ) => bargmann_kernel(k as u64, a, *ta, b, *tb),
        _ => Err(Error::Config("kernel arguments come from different models".into())),
    }
}

fn satisfies(w: &WeightMatrix, pi: &IrrepLabel, j: &[usize]) -> bool {
    w.monomial_weight(j) == pi.weights
}

fn enumerate_into(
    prefix: &mut Vec<usize>,
    coords: usize,
    remaining: usize,
    out: &mut Vec<MultiIndex>,
    filter: &dyn Fn(&[usize]) -> bool,
) {
    if prefix.len() + 1 == coords {
        prefix.push(remaining);
        if filter(prefix) {
            out.push(MultiIndex::new(prefix.clone()));
        }
        prefix.pop();
        return;
    }
    for j in 0..=remaining {
        prefix.push(j);
        enumerate_into(prefix, coords, remaining - j, out, filter);
        prefix.pop();
    }
}

/// All `J ∈ ℕ^{d+1}` with `|J| = k` (and `−W·J = ϖ` when constrained), in
/// lexicographic order.
pub fn enumerate_indices(
    d: usize,
    k: usize,
    constraint: Option<(&WeightMatrix, &IrrepLabel)>,
) -> Result<Vec<MultiIndex>> {
    if d > MAX_ENUM_DIM {
        return Err(Error::EnumerationTooLarge { dim: d });
    }
    if let Some((w, pi)) = constraint {
        if w.dim() != d + 1 {
            return Err(Error::DimensionMismatch {
                expected: d + 1,
                got: w.dim(),
            });
        }
        if w.rank() != pi.rank() {
            return Err(Error::RankMismatch {
                expected: w.rank(),
                got: pi.rank(),
            });
        }
    }
    let filter = |j: &[usize]| constraint.is_none_or(|(w, pi)| satisfies(w, pi, j));
    let mut out = Vec::new();
    enumerate_into(&mut Vec::with_capacity(d + 1), d + 1, k, &mut out, &filter);
    Ok(out)
}

fn check_kernel_args(w: &WeightMatrix, pi: &IrrepLabel, p: &BundlePoint, q: &BundlePoint) -> Result<()> {
    if p.model() != q.model() {
        return Err(Error::Config("kernel arguments come from different models".into()));
    }
    check_dims(p.base(), q.base())?;
    if p.base().dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim(),
            got: p.base().dim(),
        });
    }
    if pi.rank() != w.rank() {
        return Err(Error::RankMismatch {
            expected: w.rank(),
            got: pi.rank(),
        });
    }
    Ok(())
}

/// Equivariant kernel `Π_{ϖ,k}(p, q)` by summing over the weight space `−W·J = ϖ`.
pub fn equivariant_kernel_weightsum(
    w: &WeightMatrix,
    pi: &IrrepLabel,
    k: usize,
    p: &BundlePoint,
    q: &BundlePoint,
) -> Result<LogComplex> {
    check_kernel_args(w, pi, p, q)?;
    match (p, q) {
        (BundlePoint::Sphere(x), BundlePoint::Sphere(y)) => {
            let d = x.dim() - 1;
            let indices = enumerate_indices(d, k, Some((w, pi)))?;
            let base = ln_factorial((k + d) as u64) - d as f64 * PI.ln();
            let sum: LogSum = indices
                .iter()
                .map(|j| {
                    LogComplex::from_real_log(base - j.ln_factorial())
                        * log_monomial_pair(j.exponents(), x, y)
                })
                .collect();
            Ok(LogComplex::from_real_log(IRREP_DIM.ln()) * sum.total())
        }
        (
            BundlePoint::Heisenberg { z: a, theta: ta },
            BundlePoint::Heisenberg { z: b, theta: tb },
        ) => affine_weightsum(w, pi, k, a, *ta, b, *tb),
        _ => unreachable!(),
    }
}

fn affine_weightsum(
    w: &WeightMatrix,
    pi: &IrrepLabel,
    k: usize,
    a: &ComplexVec,
    ta: f64,
    b: &ComplexVec,
    tb: f64,
) -> Result<LogComplex> {
    let n = a.dim();
    if n > MAX_ENUM_DIM + 1 {
        return Err(Error::EnumerationTooLarge { dim: n - 1 });
    }
    let kf = k as f64;
    let ln_k = kf.ln();
    // Σ_{|J|=D} |k^D a^J b̄^J / J!| = (kS)^D / D!
    let s: f64 = (0..n).map(|l| a[l].norm() * b[l].norm()).sum();
    let ks = kf * s;
    let degree_cap = (ks + 60.0 * ks.sqrt() + 200.0).ceil() as usize;

    let mut sum = LogSum::new();
    let mut running_max = f64::NEG_INFINITY;
    let filter = |j: &[usize]| satisfies(w, pi, j);
    for degree in 0..=degree_cap {
        let degree_bound = degree as f64 * ks.ln() - ln_factorial(degree as u64);
        if degree as f64 >= ks && degree > 0 && degree_bound < running_max - SERIES_CUTOFF_NATS {
            break;
        }
        let mut indices = Vec::new();
        enumerate_into(&mut Vec::with_capacity(n), n, degree, &mut indices, &filter);
        for j in &indices {
            let term = LogComplex::from_real_log(degree as f64 * ln_k - j.ln_factorial())
                * log_monomial_pair(j.exponents(), a, b);
            if term.is_zero() {
                continue;
            }
            running_max = running_max.max(term.log_mod);
            if term.log_mod >= running_max - SERIES_CUTOFF_NATS {
                sum.add(term);
            }
        }
    }
    let prefactor = LogComplex::new(
        IRREP_DIM.ln() + n as f64 * (kf / PI).ln() - 0.5 * kf * (a.norm_sqr() + b.norm_sqr()),
        kf * (ta - tb),
    );
    Ok(prefactor * sum.total())
}

/// Outcome of the torus quadrature, with the node count that converged.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOutcome {
    pub value: LogComplex,
    pub nodes_per_dim: usize,
    pub total_nodes: usize,
}

/// Node count beyond which the trapezoid rule sees no aliasing of the
/// integrand's significant Fourier modes.
fn bandwidth_floor(w: &WeightMatrix, pi: &IrrepLabel, k: usize, p: &BundlePoint, q: &BundlePoint) -> usize {
    let spread = match (p, q) {
        (BundlePoint::Sphere(_), _) => k as f64,
        (BundlePoint::Heisenberg { z: a, .. }, BundlePoint::Heisenberg { z: b, .. }) => {
            let ks = k as f64 * (0..a.dim()).map(|l| a[l].norm() * b[l].norm()).sum::<f64>();
            ks + 12.0 * ks.sqrt() + 12.0
        }
        _ => unreachable!(),
    };
    (0..w.rank())
        .map(|i| (pi.weights[i].unsigned_abs() as f64 + w.max_abs_weight(i) as f64 * spread).ceil() as usize + 1)
        .max()
        .unwrap_or(1)
}

/// Trapezoid rule on `N^g` nodes for `∫ conj χ_ϖ(t) Π_k(μ_{t⁻¹} p, q) dt`,
/// returning the mean and the largest log-modulus of the integrand.
fn trapezoid(w: &WeightMatrix, pi: &IrrepLabel, k: usize, p: &BundlePoint, q: &BundlePoint, n: usize) -> (LogComplex, f64) {
    let g = w.rank();
    let total = n.pow(g as u32);
    let kf = k as f64;
    let dim = p.base().dim();

    // per-coordinate products x_l conj(y_l) and constant log-prefactor
    let (pairs, const_log, const_phase, offset): (Vec<C64>, f64, f64, C64) = match (p, q) {
        (BundlePoint::Sphere(x), BundlePoint::Sphere(y)) => {
            let d = dim - 1;
            let c = ln_factorial((k + d) as u64) - d as f64 * PI.ln() - ln_factorial(k as u64);
            ((0..dim).map(|l| x[l] * y[l].conj()).collect(), c, 0.0, C64::new(0.0, 0.0))
        }
        (BundlePoint::Heisenberg { z: a, theta: ta }, BundlePoint::Heisenberg { z: b, theta: tb }) => (
            (0..dim).map(|l| a[l] * b[l].conj()).collect(),
            dim as f64 * (kf / PI).ln(),
            kf * (ta - tb),
            C64::new(-0.5 * (a.norm_sqr() + b.norm_sqr()), 0.0),
        ),
        _ => unreachable!(),
    };
    let projective = matches!(p, BundlePoint::Sphere(_));

    let step = 2.0 * PI / n as f64;
    let mut idx = vec![0usize; g];
    let mut angles = vec![0.0; g];
    let mut sum = LogSum::new();
    for _ in 0..total {
        for i in 0..g {
            angles[i] = step * idx[i] as f64;
        }
        // ⟨μ_{t⁻¹} p, q⟩ coordinates carry e^{−i⟨w_l, θ⟩}
        let inner: C64 = pairs
            .iter()
            .enumerate()
            .map(|(l, c)| c * C64::from_polar(1.0, -w.pairing(l, &angles)))
            .sum();
        let char_phase: f64 = -(0..g).map(|i| pi.weights[i] as f64 * angles[i]).sum::<f64>();
        let term = if projective {
            LogComplex::from_complex(inner).powi(k as i64)
        } else {
            LogComplex::exp(kf * (inner + offset))
        };
        sum.add(term * LogComplex::new(const_log, const_phase + char_phase));

        for i in 0..g {
            idx[i] += 1;
            if idx[i] < n {
                break;
            }
            idx[i] = 0;
        }
    }
    let mean = LogComplex::from_real_log(IRREP_DIM.ln() - (total as f64).ln()) * sum.total();
    (mean, sum.max_log() + IRREP_DIM.ln())
}

/// Equivariant kernel by character-projection quadrature over the torus,
/// doubling the per-dimension node count until two refinements agree.
pub fn equivariant_kernel_quadrature_detailed(
    w: &WeightMatrix,
    pi: &IrrepLabel,
    k: usize,
    p: &BundlePoint,
    q: &BundlePoint,
    nodes: usize,
) -> Result<QuadratureOutcome> {
    check_kernel_args(w, pi, p, q)?;
    let g = w.rank() as u32;
    let mut n = nodes.max(1).max(bandwidth_floor(w, pi, k, p, q));
    if n.checked_pow(g).is_none_or(|t| t > QUADRATURE_MAX_NODES) {
        n = 1;
        while (2 * n).pow(g) <= QUADRATURE_MAX_NODES {
            n *= 2;
        }
        n /= 2;
    }
    let (mut prev, _) = trapezoid(w, pi, k, p, q, n);
    loop {
        let next_n = 2 * n;
        let total = next_n.pow(g);
        if total > QUADRATURE_MAX_NODES {
            return Err(Error::QuadratureNotConverged {
                nodes: n.pow(g),
                previous: prev.to_complex(),
                last: prev.to_complex(),
            });
        }
        let (cur, scale_log) = trapezoid(w, pi, k, p, q, next_n);
        let m = scale_log.max(cur.log_mod).max(prev.log_mod);
        let diff = (cur.to_complex_scaled(m) - prev.to_complex_scaled(m)).norm();
        // node phases carry an absolute error of order k·ε
        let noise = 16.0 * f64::EPSILON * (k as f64 + 1.0) * (scale_log - m).exp();
        if diff <= QUADRATURE_REL_TOL * cur.to_complex_scaled(m).norm() + noise {
            return Ok(QuadratureOutcome {
                value: cur,
                nodes_per_dim: next_n,
                total_nodes: total,
            });
        }
        if (2 * next_n).pow(g) > QUADRATURE_MAX_NODES {
            return Err(Error::QuadratureNotConverged {
                nodes: total,
                previous: prev.to_complex(),
                last: cur.to_complex(),
            });
        }
        prev = cur;
        n = next_n;
    }
}

pub fn equivariant_kernel_quadrature(
    w: &WeightMatrix,
    pi: &IrrepLabel,
    k: usize,
    p: &BundlePoint,
    q: &BundlePoint,
    nodes: usize,
) -> Result<LogComplex> {
    equivariant_kernel_quadrature_detailed(w, pi, k, p, q, nodes).map(|o| o.value)
}
