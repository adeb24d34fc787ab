//! Predicted leading-order behaviour of equivariant Szegő kernels near the
//! zero level of the moment map.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hermitian::{omega, psi2_unchecked, q_form, ComplexVec, SplitFrame, TangentSplit};
use crate::logc::{ln_factorial, LogComplex};
use crate::torus::{character, IrrepLabel, Stabilizer, TorusElement, IRREP_DIM};
use crate::C64;

/// `2^{g/2} (dim V_ϖ / V_eff) (1/|G|) Σ_g χ_ϖ(g) h_g^k`.
pub fn a_factor(pi: &IrrepLabel, k: usize, stab: &Stabilizer, multipliers: &[C64], v_eff: f64) -> Result<C64> {
    a_factor_general(
        pi,
        k,
        stab,
        multipliers,
        v_eff,
        &TorusElement::identity(pi.rank()),
        C64::new(1.0, 0.0),
    )
}

/// `2^{g/2} (dim V_ϖ / V_eff) (1/|G|) Σ_g χ_ϖ(g g₀⁻¹) (h₀ h_g)^k`.
pub fn a_factor_general(
    pi: &IrrepLabel,
    k: usize,
    stab: &Stabilizer,
    multipliers: &[C64],
    v_eff: f64,
    g0: &TorusElement,
    h0: C64,
) -> Result<C64> {
    if multipliers.len() != stab.order() {
        return Err(Error::LengthMismatch(format!(
            "{} multipliers for a stabilizer of order {}",
            multipliers.len(),
            stab.order()
        )));
    }
    if !(v_eff > 0.0) {
        return Err(Error::Config(format!("effective volume must be positive, got {v_eff}")));
    }
    let g0_inv = g0.inverse();
    let mut sum = C64::new(0.0, 0.0);
    for (g, h) in stab.elements().iter().zip(multipliers) {
        sum += character(pi, &g.compose(&g0_inv))? * (h0 * h).powu(k as u32);
    }
    let g = pi.rank() as f64;
    Ok(2f64.powf(g / 2.0) * IRREP_DIM / v_eff * sum / stab.order() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingPrediction {
    /// `(k/π)^{n−g/2} · A`.
    pub prefactor: LogComplex,
    /// `Q(w_v + w_t, v_v + v_t) + ψ₂(w_h, v_h)`.
    pub exponent: C64,
    pub value: LogComplex,
}

/// `(k/π)^{n−g/2} A e^{Q(w_v+w_t, v_v+v_t)} e^{ψ₂(w_h, v_h)}`.
pub fn leading_term(
    k: usize,
    n: usize,
    g: usize,
    a: C64,
    split_w: &TangentSplit,
    split_v: &TangentSplit,
) -> Result<LeadingPrediction> {
    let q = q_form(split_w, split_v)?;
    let exponent = q + psi2_unchecked(&split_w.h_part, &split_v.h_part);
    let prefactor = LogComplex::from_real_log((n as f64 - g as f64 / 2.0) * (k as f64 / PI).ln())
        * LogComplex::from_complex(a);
    Ok(LeadingPrediction {
        prefactor,
        exponent,
        value: prefactor * LogComplex::exp(exponent),
    })
}

/// Closed form `(2π)^{g/2} e^{iω(v_t+w_t, w_v−v_v) − ½‖v_t+w_t‖²}` of the
/// Gaussian integral over the orbit tangent space.
pub fn gaussian_orbit_integral(
    frame: &SplitFrame,
    split_w: &TangentSplit,
    split_v: &TangentSplit,
    g: usize,
) -> Result<C64> {
    check_splits(frame, split_w, split_v, g)?;
    let tau = split_v.t_part.add(&split_w.t_part);
    let shift = split_w.v_part.sub(&split_v.v_part);
    let exponent = C64::new(-0.5 * tau.norm_sqr(), omega(&tau, &shift));
    Ok((2.0 * PI).powf(g as f64 / 2.0) * exponent.exp())
}

fn check_splits(frame: &SplitFrame, split_w: &TangentSplit, split_v: &TangentSplit, g: usize) -> Result<()> {
    if split_w.frame_id() != frame.id() || split_v.frame_id() != frame.id() {
        return Err(Error::FrameMismatch);
    }
    if g != frame.rank() {
        return Err(Error::RankMismatch {
            expected: frame.rank(),
            got: g,
        });
    }
    Ok(())
}

/// Tensor trapezoid rule for `∫ e^{−iω(s, v_t+w_t) − ½‖s − (w_v−v_v)‖²} ds`
/// over the orbit tangent space, with `nodes` points per direction.
pub fn gaussian_orbit_quadrature(
    frame: &SplitFrame,
    split_w: &TangentSplit,
    split_v: &TangentSplit,
    nodes: usize,
) -> Result<C64> {
    let g = frame.rank();
    check_splits(frame, split_w, split_v, g)?;
    let basis = frame.vertical_basis();
    let tau = split_v.t_part.add(&split_w.t_part);
    let shift = split_w.v_part.sub(&split_v.v_part);
    let center: Vec<f64> = basis.iter().map(|e| e.real_dot(&shift)).collect();
    let half_width = 14.0;
    let step = 2.0 * half_width / (nodes - 1) as f64;
    let total = nodes.pow(g as u32);
    let mut idx = vec![0usize; g];
    let mut sum = C64::new(0.0, 0.0);
    for _ in 0..total {
        let mut s = ComplexVec::zeros(frame.dim());
        for j in 0..g {
            let beta = center[j] - half_width + step * idx[j] as f64;
            s = s.axpy(beta, &basis[j]);
        }
        let exponent = C64::new(-0.5 * s.sub(&shift).norm_sqr(), -omega(&s, &tau));
        sum += exponent.exp();
        for j in 0..g {
            idx[j] += 1;
            if idx[j] < nodes {
                break;
            }
            idx[j] = 0;
        }
    }
    Ok(sum * step.powi(g as i32))
}

/// `log((a+b)!) − [½ log(2πa) + (a+b) log a − a]`.
pub fn stirling_ratio(a: u64, b: i64) -> f64 {
    let total = (a as i64 + b) as u64;
    let af = a as f64;
    ln_factorial(total) - (0.5 * (2.0 * PI * af).ln() + (af + b as f64) * af.ln() - af)
}
