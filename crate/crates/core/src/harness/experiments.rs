//! The experiments behind each CLI subcommand.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::asymptotics::{a_factor_general, gaussian_orbit_integral, gaussian_orbit_quadrature, leading_term};
use crate::charts::{bargmann_chart, p1_chart, verify_frame, Chart};
use crate::error::{Error, Result};
use crate::hermitian::{build_split_frame, model_phase, split, ComplexVec, SplitFrame};
use crate::kernels::{
    enumerate_indices, equivariant_kernel_quadrature, equivariant_kernel_weightsum, full_kernel, BundlePoint,
};
use crate::logc::LogComplex;
use crate::torus::{
    effective_volume, fiber_multipliers, generators_at, on_zero_level, stabilizer_of, IrrepLabel, Model, Stabilizer,
    TorusElement, WeightMatrix,
};
use crate::C64;

use super::config::{Experiment, ExperimentConfig, Method};
use super::report::{fit_rate, Assertion, ConvergenceRow, ExperimentReport};

/// Levels whose stabilizer factor is below this are dropped from schedules.
const ACTIVE_A_FACTOR: f64 = 1e-12;

pub fn run(config: &ExperimentConfig) -> Result<ExperimentReport> {
    match config.experiment {
        Experiment::Diagonal => run_diagonal(config),
        Experiment::Offdiag => run_offdiagonal(config),
        Experiment::Translated => {
            let g0 = config
                .g0
                .clone()
                .unwrap_or_else(|| TorusElement::identity(config.weights.rank()));
            let h0 = config.h0.unwrap_or_else(|| random_unit_phase(config.seed));
            run_translated(config, &g0, h0)
        }
        Experiment::Decay => run_decay(config),
        Experiment::Selection => run_selection(config),
        Experiment::Crosscheck => run_crosscheck(config),
        Experiment::Gaussian => run_gaussian(config),
        Experiment::Phase => run_phase(config),
    }
}

fn random_unit_phase(seed: u64) -> C64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI))
}

fn bundle_point(model: Model, z: &ComplexVec) -> BundlePoint {
    match model {
        Model::Projective => BundlePoint::Sphere(z.clone()),
        Model::Affine => BundlePoint::Heisenberg {
            z: z.clone(),
            theta: 0.0,
        },
    }
}

fn base_dim(model: Model, w: &WeightMatrix) -> usize {
    match model {
        Model::Affine => w.dim(),
        Model::Projective => w.dim() - 1,
    }
}

fn exact_kernel(config: &ExperimentConfig, k: usize, p: &BundlePoint, q: &BundlePoint) -> Result<LogComplex> {
    match config.method {
        Method::Weightsum => equivariant_kernel_weightsum(&config.weights, &config.irrep, k, p, q),
        Method::Quadrature => equivariant_kernel_quadrature(&config.weights, &config.irrep, k, p, q, 1),
    }
}

struct Locus {
    stabilizer: Stabilizer,
    multipliers: Vec<C64>,
    v_eff: f64,
}

fn locus(config: &ExperimentConfig) -> Result<Locus> {
    let stabilizer = stabilizer_of(&config.weights, &config.point, config.model)?;
    let multipliers = fiber_multipliers(&config.weights, &stabilizer, &config.point)?;
    let v_eff = effective_volume(&config.weights, &config.point, config.model)?;
    Ok(Locus {
        stabilizer,
        multipliers,
        v_eff,
    })
}

fn check_zero_level(config: &ExperimentConfig) -> Result<()> {
    if !on_zero_level(&config.weights, &config.point, config.model)? {
        return Err(Error::NotOnZeroLevel(format!(
            "the {} experiment needs a point on the zero level",
            config.experiment.name()
        )));
    }
    Ok(())
}

/// Schedule entries with a non-vanishing stabilizer factor, paired with it.
fn active_schedule(config: &ExperimentConfig, a_of: impl Fn(usize) -> Result<C64>) -> Result<Vec<(usize, C64)>> {
    let mut out = Vec::new();
    for &k in &config.k_schedule {
        let a = a_of(k)?;
        if a.norm() > ACTIVE_A_FACTOR {
            out.push((k, a));
        }
    }
    if out.is_empty() {
        return Err(Error::EmptySchedule);
    }
    Ok(out)
}

fn add_convergence_assertions(report: &mut ExperimentReport, config: &ExperimentConfig) {
    let tol = &config.tolerances;
    report.fit = fit_rate(&report.rows);
    if let Some(last) = report.rows.last() {
        report.assertions.push(Assertion::at_most(
            format!("|ratio - 1| at k = {}", last.k),
            last.ratio_defect(),
            tol.final_ratio,
        ));
    }
    let upper = &report.rows[report.rows.len() / 2..];
    let slope = match &report.fit {
        Some(fit) => fit.slope,
        None if !upper.is_empty() && upper.iter().all(|r| r.ratio_defect() == 0.0) => f64::NEG_INFINITY,
        None => f64::NAN,
    };
    report
        .assertions
        .push(Assertion::at_most("fitted slope of log|ratio - 1|", slope, tol.slope));
}

/// Exact on-diagonal kernel against `(k/π)^{n−g/2} A_{ϖ,k}`.
pub fn run_diagonal(config: &ExperimentConfig) -> Result<ExperimentReport> {
    check_zero_level(config)?;
    let loc = locus(config)?;
    let w = &config.weights;
    let g = w.rank();
    let n = base_dim(config.model, w);
    let frame = build_split_frame(&generators_at(w, &config.point, config.model)?)?;
    let zero = split(&frame, &ComplexVec::zeros(frame.dim()))?;
    let identity = TorusElement::identity(g);
    let one = C64::new(1.0, 0.0);
    let schedule = active_schedule(config, |k| {
        a_factor_general(&config.irrep, k, &loc.stabilizer, &loc.multipliers, loc.v_eff, &identity, one)
    })?;
    let p = bundle_point(config.model, &config.point);
    let rows = schedule
        .par_iter()
        .map(|&(k, a)| {
            let exact = exact_kernel(config, k, &p, &p)?;
            let predicted = leading_term(k, n, g, a, &zero, &zero)?.value;
            Ok(ConvergenceRow::new(k, exact, predicted))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = ExperimentReport::new(config.experiment, config.seed);
    report.notes.push(format!(
        "|G| = {}, V_eff = {:.12}, {} of {} scheduled levels active",
        loc.stabilizer.order(),
        loc.v_eff,
        rows.len(),
        config.k_schedule.len()
    ));
    report.rows = rows;
    add_convergence_assertions(&mut report, config);
    Ok(report)
}

fn chart_for(config: &ExperimentConfig) -> Result<Chart> {
    match config.model {
        Model::Affine => Ok(bargmann_chart(&config.point)),
        Model::Projective if config.weights.dim() == 2 => p1_chart(&config.point, &config.weights),
        Model::Projective => Err(Error::Config(
            "off-diagonal experiments on projective space need d = 1".into(),
        )),
    }
}

/// Shared body of the off-diagonal and translated experiments.
fn run_chart_experiment(config: &ExperimentConfig, g0: &TorusElement, h0: C64) -> Result<ExperimentReport> {
    check_zero_level(config)?;
    config.weights.check_rank(g0.rank())?;
    let loc = locus(config)?;
    let w = &config.weights;
    let g = w.rank();
    let chart = chart_for(config)?;
    let frame_report = verify_frame(&chart);
    let frame = build_split_frame(&chart.generators(w)?)?;
    let (dw, dv) = &config.displacements;
    let split_w = split(&frame, dw)?;
    let split_v = split(&frame, dv)?;
    let n = chart.dim();

    let schedule = active_schedule(config, |k| {
        a_factor_general(&config.irrep, k, &loc.stabilizer, &loc.multipliers, loc.v_eff, g0, h0)
    })?;
    let h0_unit = h0 / h0.norm();
    let rows = schedule
        .par_iter()
        .map(|&(k, a)| {
            let p = chart
                .chart_point(k, dw)?
                .rotate_fiber(h0_unit)
                .act(w, g0.angles());
            let q = chart.chart_point(k, dv)?;
            let exact = exact_kernel(config, k, &p, &q)?;
            let predicted = leading_term(k, n, g, a, &split_w, &split_v)?.value;
            Ok(ConvergenceRow::new(k, exact, predicted))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = ExperimentReport::new(config.experiment, config.seed);
    report.notes.push(format!(
        "split norms: w (v {:.3}, h {:.3}, t {:.3}), v (v {:.3}, h {:.3}, t {:.3})",
        split_w.v_part.norm(),
        split_w.h_part.norm(),
        split_w.t_part.norm(),
        split_v.v_part.norm(),
        split_v.h_part.norm(),
        split_v.t_part.norm()
    ));
    report.notes.push(format!(
        "g0 = {:?}, h0 = {}",
        g0.angles(),
        super::config::format_complex(h0)
    ));
    report.rows = rows;
    report.assertions.push(Assertion::at_most(
        "chart frame residual",
        frame_report.max(),
        config.tolerances.frame,
    ));
    add_convergence_assertions(&mut report, config);
    Ok(report)
}

/// Exact kernel at `(x + w/√k, x + v/√k)` against the leading term.
pub fn run_offdiagonal(config: &ExperimentConfig) -> Result<ExperimentReport> {
    run_chart_experiment(
        config,
        &TorusElement::identity(config.weights.rank()),
        C64::new(1.0, 0.0),
    )
}

/// Exact kernel at `(μ_{g₀} r_{h₀}(x + w/√k), x + v/√k)` against the
/// leading term with the generalized stabilizer factor.
pub fn run_translated(config: &ExperimentConfig, g0: &TorusElement, h0: C64) -> Result<ExperimentReport> {
    run_chart_experiment(config, g0, h0)
}

/// Least-squares fit `y ≈ −c·k + β·log k + γ`, returning `(c, β, γ)`.
fn fit_decay(ks: &[f64], ys: &[f64]) -> Option<(f64, f64, f64)> {
    if ks.len() < 3 {
        return None;
    }
    let cols: Vec<[f64; 3]> = ks.iter().map(|&k| [-k, k.ln(), 1.0]).collect();
    let mut m = [[0.0; 4]; 3];
    for (row, y) in cols.iter().zip(ys) {
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += row[i] * row[j];
            }
            m[i][3] += row[i] * y;
        }
    }
    for col in 0..3 {
        let pivot = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        m.swap(col, pivot);
        if m[col][col].abs() < 1e-300 {
            return None;
        }
        for r in 0..3 {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..4 {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    Some((m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]))
}

/// Exponential decay of the kernel away from the zero level.
pub fn run_decay(config: &ExperimentConfig) -> Result<ExperimentReport> {
    if on_zero_level(&config.weights, &config.point, config.model)? {
        return Err(Error::OnZeroLevel);
    }
    let p = bundle_point(config.model, &config.point);
    let q = config
        .partner
        .as_ref()
        .map_or_else(|| p.clone(), |z| bundle_point(config.model, z));
    let values = config
        .k_schedule
        .par_iter()
        .map(|&k| Ok((k, exact_kernel(config, k, &p, &q)?)))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<(usize, LogComplex)> = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let ks: Vec<f64> = values.iter().map(|(k, _)| *k as f64).collect();
    let ys: Vec<f64> = values.iter().map(|(_, v)| v.log_mod).collect();
    let (c, beta, gamma) = fit_decay(&ks, &ys).ok_or(Error::EmptySchedule)?;

    let mut report = ExperimentReport::new(config.experiment, config.seed);
    report.rows = values
        .iter()
        .map(|&(k, v)| {
            let kf = k as f64;
            ConvergenceRow::new(k, v, LogComplex::from_real_log(-c * kf + beta * kf.ln() + gamma))
        })
        .collect();
    report.notes.push(format!(
        "fit log|kernel| = -c k + beta log k + gamma with c = {c:.6}, beta = {beta:.4}, gamma = {gamma:.4}"
    ));
    report.assertions.push(Assertion::at_least("decay rate c", c, f64::MIN_POSITIVE));
    if let Some(target) = config.tolerances.decay_rate {
        report.assertions.push(Assertion::at_most(
            "relative error of decay rate",
            (c - target).abs() / target,
            config.tolerances.decay_rel,
        ));
    }
    if config.partner.is_some() {
        let &(k, v) = values.last().ok_or(Error::EmptySchedule)?;
        report.assertions.push(Assertion::at_most(
            format!("log|kernel| / k at k = {k}"),
            v.log_mod / k as f64,
            config.tolerances.off_locus,
        ));
    }
    Ok(report)
}

/// Vanishing of the kernel at levels where the isotype does not occur.
pub fn run_selection(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new(config.experiment, config.seed);
    if config.model != Model::Projective {
        report
            .notes
            .push("every isotype occurs at every level of the affine model; nothing to check".into());
        return Ok(report);
    }
    let d = config.weights.dim() - 1;
    let p = bundle_point(config.model, &config.point);
    let q = config
        .partner
        .as_ref()
        .map_or_else(|| p.clone(), |z| bundle_point(config.model, z));
    let mut mismatched = Vec::new();
    for &k in &config.k_schedule {
        if enumerate_indices(d, k, Some((&config.weights, &config.irrep)))?.is_empty() {
            mismatched.push(k);
        }
    }
    let results = mismatched
        .par_iter()
        .map(|&k| {
            let ws = equivariant_kernel_weightsum(&config.weights, &config.irrep, k, &p, &q)?;
            let quad = equivariant_kernel_quadrature(&config.weights, &config.irrep, k, &p, &q, 1)?;
            let scale = 0.5 * (full_kernel(k, &p, &p)?.log_mod + full_kernel(k, &q, &q)?.log_mod);
            let reference = full_kernel(k, &p, &q)?;
            Ok((k, ws, (quad.log_mod - scale).exp(), reference))
        })
        .collect::<Result<Vec<_>>>()?;

    let nonzero = results.iter().filter(|(_, ws, _, _)| !ws.is_zero()).count();
    let worst = results.iter().map(|r| r.2).fold(0.0, f64::max);
    report.rows = results
        .iter()
        .map(|&(k, ws, _, reference)| ConvergenceRow::new(k, ws, reference))
        .collect();
    report.notes.push(format!(
        "{} of {} scheduled levels do not contain the isotype",
        mismatched.len(),
        config.k_schedule.len()
    ));
    report.assertions.push(Assertion::at_most(
        "weight-sum values not exactly zero",
        nonzero as f64,
        0.0,
    ));
    report.assertions.push(Assertion::at_most(
        "quadrature magnitude relative to the full kernel",
        worst,
        config.tolerances.selection_zero,
    ));
    Ok(report)
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexVec {
    ComplexVec::new(
        (0..n)
            .map(|_| C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)))
            .collect(),
    )
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> ComplexVec {
    loop {
        let v = random_vec(rng, n, 1.0);
        if v.norm() > 0.1 {
            return v.normalized().expect("nonzero vector");
        }
    }
}

struct CrossCase {
    model: Model,
    weights: WeightMatrix,
    irrep: IrrepLabel,
    k: usize,
    p: BundlePoint,
    q: BundlePoint,
}

fn random_cross_case(rng: &mut ChaCha8Rng, index: usize) -> CrossCase {
    let families: [(Model, Vec<Vec<i64>>); 8] = [
        (Model::Projective, vec![vec![-1, 1]]),
        (Model::Projective, vec![vec![-2, 2]]),
        (Model::Projective, vec![vec![-1, 2]]),
        (Model::Projective, vec![vec![-1, 0, 1]]),
        (Model::Projective, vec![vec![1, 2, -3]]),
        (Model::Projective, vec![vec![1, 0, -1], vec![0, 1, -1]]),
        (Model::Affine, vec![vec![-1, 1]]),
        (Model::Affine, vec![vec![-2, 2, 1]]),
    ];
    let (model, rows) = families[index % families.len()].clone();
    let weights = WeightMatrix::new(rows).expect("valid weight rows");
    let dim = weights.dim();
    let k = rng.gen_range(1..=200usize);
    match model {
        Model::Projective => {
            let x = random_unit(rng, dim);
            let y = x.add(&random_vec(rng, dim, 0.05)).normalized().expect("nonzero vector");
            // an occurring weight, drawn near the peak of the weight distribution at x
            let mut j = vec![0usize; dim];
            for _ in 0..k {
                let mut u = rng.gen_range(0.0..1.0);
                let mut l = 0;
                while l + 1 < dim && u >= x[l].norm_sqr() {
                    u -= x[l].norm_sqr();
                    l += 1;
                }
                j[l] += 1;
            }
            CrossCase {
                model,
                irrep: IrrepLabel::new(weights.monomial_weight(&j)),
                weights,
                k,
                p: BundlePoint::Sphere(x),
                q: BundlePoint::Sphere(y),
            }
        }
        Model::Affine => {
            let a = random_vec(rng, dim, 0.6);
            let b = a.add(&random_vec(rng, dim, 0.05));
            let j: Vec<usize> = (0..dim)
                .map(|l| {
                    let mean = k as f64 * a[l].norm() * b[l].norm();
                    (mean + rng.gen_range(-1.0..1.0) * mean.sqrt()).round().max(0.0) as usize
                })
                .collect();
            CrossCase {
                model,
                irrep: IrrepLabel::new(weights.monomial_weight(&j)),
                weights,
                k,
                p: BundlePoint::Heisenberg {
                    z: a,
                    theta: rng.gen_range(-PI..PI),
                },
                q: BundlePoint::Heisenberg {
                    z: b,
                    theta: rng.gen_range(-PI..PI),
                },
            }
        }
    }
}

/// Weight-sum against quadrature on randomized configurations.
pub fn run_crosscheck(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let cases: Vec<CrossCase> = (0..config.trials).map(|i| random_cross_case(&mut rng, i)).collect();
    let results = cases
        .par_iter()
        .map(|c| {
            let ws = equivariant_kernel_weightsum(&c.weights, &c.irrep, c.k, &c.p, &c.q)?;
            let quad = equivariant_kernel_quadrature(&c.weights, &c.irrep, c.k, &c.p, &c.q, 1)?;
            Ok((ws, quad))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ExperimentReport::new(config.experiment, config.seed);
    let worst = results.iter().map(|(a, b)| a.rel_diff(b)).fold(0.0, f64::max);
    report.rows = cases
        .iter()
        .zip(&results)
        .map(|(c, &(ws, quad))| ConvergenceRow::new(c.k, ws, quad))
        .collect();
    let affine = cases.iter().filter(|c| c.model == Model::Affine).count();
    report.notes.push(format!(
        "{} configurations ({} projective, {} affine)",
        cases.len(),
        cases.len() - affine,
        affine
    ));
    report.assertions.push(Assertion::at_most(
        "max relative discrepancy between methods",
        worst,
        config.tolerances.crosscheck,
    ));
    Ok(report)
}

fn random_isotropic_frame(rng: &mut ChaCha8Rng, g: usize) -> SplitFrame {
    loop {
        let n = rng.gen_range(g..=g + 2);
        let v1 = random_vec(rng, n, 1.0);
        let mut gens = vec![v1.clone()];
        if g == 2 {
            let v2 = random_vec(rng, n, 1.0);
            let iv1 = v1.mul_i();
            gens.push(v2.axpy(-iv1.real_dot(&v2) / iv1.norm_sqr(), &iv1));
        }
        if let Ok(frame) = build_split_frame(&gens) {
            return frame;
        }
    }
}

/// Closed-form Gaussian orbit integral against tensor trapezoid quadrature.
pub fn run_gaussian(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut trials = Vec::new();
    for (g, count) in [(1usize, config.trials.max(1)), (2, config.trials_g2)] {
        for _ in 0..count {
            let frame = random_isotropic_frame(&mut rng, g);
            let w = random_vec(&mut rng, frame.dim(), 1.0);
            let v = random_vec(&mut rng, frame.dim(), 1.0);
            trials.push((g, frame, w, v));
        }
    }
    let results = trials
        .par_iter()
        .map(|(g, frame, w, v)| {
            let sw = split(frame, w)?;
            let sv = split(frame, v)?;
            let closed = gaussian_orbit_integral(frame, &sw, &sv, *g)?;
            let nodes = if *g == 1 { 801 } else { 161 };
            let quad = gaussian_orbit_quadrature(frame, &sw, &sv, nodes)?;
            Ok((closed, quad))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ExperimentReport::new(config.experiment, config.seed);
    let mut worst = [0.0f64; 2];
    for ((g, ..), (closed, quad)) in trials.iter().zip(&results) {
        let rel = (closed - quad).norm() / closed.norm();
        worst[g - 1] = worst[g - 1].max(rel);
    }
    report.rows = results
        .iter()
        .enumerate()
        .map(|(i, (c, q))| ConvergenceRow::new(i + 1, LogComplex::from_complex(*c), LogComplex::from_complex(*q)))
        .collect();
    report.notes.push(format!(
        "{} trials with g = 1, {} with g = 2",
        config.trials.max(1),
        config.trials_g2
    ));
    report.assertions.push(Assertion::at_most(
        "max relative residual, g = 1",
        worst[0],
        config.tolerances.gaussian,
    ));
    if config.trials_g2 > 0 {
        report.assertions.push(Assertion::at_most(
            "max relative residual, g = 2",
            worst[1],
            config.tolerances.gaussian,
        ));
    }
    Ok(report)
}

/// Stationary point, Hessian and positivity of the model phase.
pub fn run_phase(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let tol = &config.tolerances;
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let at = model_phase(1.0, 0.0);
    let grad = at.gradient.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let target = [[zero, one], [one, i]];
    let mut hess: f64 = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            hess = hess.max((at.hessian[r][c] - target[r][c]).norm());
        }
    }

    let h = 1e-5;
    let mut fd: f64 = 0.0;
    for &(t, th) in &[(0.7, 0.4), (1.3, -1.1), (2.0, 2.5)] {
        let m = model_phase(t, th);
        let dt = (model_phase(t + h, th).value - model_phase(t - h, th).value) / (2.0 * h);
        let dth = (model_phase(t, th + h).value - model_phase(t, th - h).value) / (2.0 * h);
        fd = fd.max((dt - m.gradient[0]).norm()).max((dth - m.gradient[1]).norm());
        let d2 = (model_phase(t, th + h).gradient[1] - model_phase(t, th - h).gradient[1]) / (2.0 * h);
        fd = fd.max((d2 - m.hessian[1][1]).norm());
    }

    let mut min_im = f64::INFINITY;
    for a in 0..64 {
        for b in 0..=64 {
            let t = 0.05 + 3.0 * a as f64 / 63.0;
            let th = -PI + 2.0 * PI * b as f64 / 64.0;
            min_im = min_im.min(model_phase(t, th).value.im);
        }
    }

    let mut report = ExperimentReport::new(config.experiment, config.seed);
    report.assertions.push(Assertion::at_most("|grad Psi(1, 0)|", grad, tol.phase));
    report
        .assertions
        .push(Assertion::at_most("Hessian defect at (1, 0)", hess, tol.phase));
    report.assertions.push(Assertion::at_most(
        "finite-difference derivative defect",
        fd,
        tol.finite_difference,
    ));
    report
        .assertions
        .push(Assertion::at_least("min Im Psi on grid", min_im, 0.0));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decay_fit_recovers_parameters() {
        let ks: Vec<f64> = (1..20).map(|i| 50.0 * i as f64).collect();
        let ys: Vec<f64> = ks.iter().map(|k| -0.4 * k + 0.5 * k.ln() - 1.0).collect();
        let (c, b, g) = fit_decay(&ks, &ys).unwrap();
        assert!((c - 0.4).abs() < 1e-10 && (b - 0.5).abs() < 1e-8 && (g + 1.0).abs() < 1e-7);
    }
}
