//! Hermitian and symplectic linear algebra on ℂⁿ.
//!
//! Conventions: `H(a, b) = Σ a_l conj(b_l)`, `g = Re H`, `ω = −Im H`, so that
//! `g(a, b) = ω(a, i·b)` and `ω(u, i·u) = ‖u‖²`.

use std::ops::{Deref, Index};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::C64;

/// Tolerance used to decide real linear dependence during Gram–Schmidt.
pub const DEPENDENCE_TOL: f64 = 1e-10;

/// A vector in ℂⁿ (model tangent vectors, chart coordinates, ambient points).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVec(Vec<C64>);

impl ComplexVec {
    pub fn new(entries: Vec<C64>) -> Self {
        ComplexVec(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ComplexVec(vec![C64::new(0.0, 0.0); n])
    }

    pub fn from_re_im(parts: &[(f64, f64)]) -> Self {
        ComplexVec(parts.iter().map(|&(re, im)| C64::new(re, im)).collect())
    }

    /// Unit vector along coordinate `l` in ℂⁿ.
    pub fn basis(n: usize, l: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[l] = C64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<C64> {
        self.0
    }

    /// Hermitian product `Σ a_l conj(b_l)`; panics on dimension mismatch.
    pub fn herm(&self, other: &ComplexVec) -> C64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b.conj()).sum()
    }

    /// Real inner product `g₀ = Re H`.
    pub fn real_dot(&self, other: &ComplexVec) -> f64 {
        self.herm(other).re
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: C64) -> ComplexVec {
        ComplexVec(self.0.iter().map(|z| z * s).collect())
    }

    pub fn scale_real(&self, s: f64) -> ComplexVec {
        ComplexVec(self.0.iter().map(|z| z * s).collect())
    }

    /// Multiplication by `i` (the complex structure J₀).
    pub fn mul_i(&self) -> ComplexVec {
        self.scale(C64::new(0.0, 1.0))
    }

    pub fn add(&self, other: &ComplexVec) -> ComplexVec {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        ComplexVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ComplexVec) -> ComplexVec {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        ComplexVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: f64, other: &ComplexVec) -> ComplexVec {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        ComplexVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b * s).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn normalized(&self) -> Result<ComplexVec> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale_real(1.0 / n))
    }
}

impl Deref for ComplexVec {
    type Target = [C64];
    fn deref(&self) -> &[C64] {
        &self.0
    }
}

impl Index<usize> for ComplexVec {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl From<Vec<C64>> for ComplexVec {
    fn from(v: Vec<C64>) -> Self {
        ComplexVec(v)
    }
}

pub(crate) fn check_dims(a: &ComplexVec, b: &ComplexVec) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(())
}

/// The Hermitian product together with its real and imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianData {
    pub h: C64,
    pub g: f64,
    pub omega: f64,
}

pub fn hermitian_data(a: &ComplexVec, b: &ComplexVec) -> Result<HermitianData> {
    check_dims(a, b)?;
    let h = a.herm(b);
    Ok(HermitianData {
        h,
        g: h.re,
        omega: -h.im,
    })
}

/// `ω(a, b) = −Im Σ a_l conj(b_l)`; panics on dimension mismatch.
pub fn omega(a: &ComplexVec, b: &ComplexVec) -> f64 {
    -a.herm(b).im
}

/// `ψ₂(w, v) = w·v̄ − ½(‖w‖² + ‖v‖²)`.
pub fn psi2(w: &ComplexVec, v: &ComplexVec) -> Result<C64> {
    check_dims(w, v)?;
    Ok(psi2_unchecked(w, v))
}

pub(crate) fn psi2_unchecked(w: &ComplexVec, v: &ComplexVec) -> C64 {
    w.herm(v) - 0.5 * (w.norm_sqr() + v.norm_sqr())
}

static NEXT_FRAME_ID: AtomicU64 = AtomicU64::new(1);

/// Orthogonal splitting data `T_mM = 𝔤_M(m) ⊕ Q_m ⊕ J𝔤_M(m)` at a zero-level point.
#[derive(Debug, Clone)]
pub struct SplitFrame {
    pub generators: Vec<ComplexVec>,
    pub j_generators: Vec<ComplexVec>,
    pub horizontal_basis: Vec<ComplexVec>,
    /// Real-orthonormal basis of span(generators).
    vertical_basis: Vec<ComplexVec>,
    id: u64,
}

impl SplitFrame {
    pub fn dim(&self) -> usize {
        self.generators
            .first()
            .map(|g| g.dim())
            .unwrap_or_else(|| self.horizontal_basis[0].dim())
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Real-orthonormal basis of the orbit tangent space `𝔤_M(m)`.
    pub fn vertical_basis(&self) -> &[ComplexVec] {
        &self.vertical_basis
    }

    /// Real-orthonormal basis of `J𝔤_M(m)`.
    pub fn transverse_basis(&self) -> Vec<ComplexVec> {
        self.vertical_basis.iter().map(|b| b.mul_i()).collect()
    }

    pub fn id(&self) -> u64 {
        self.id
    }
}

/// A tangent vector decomposed as vertical + horizontal + transverse parts.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentSplit {
    pub v_part: ComplexVec,
    pub h_part: ComplexVec,
    pub t_part: ComplexVec,
    frame_id: u64,
}

impl TangentSplit {
    pub fn reconstruct(&self) -> ComplexVec {
        self.v_part.add(&self.h_part).add(&self.t_part)
    }

    pub fn frame_id(&self) -> u64 {
        self.frame_id
    }
}

/// Modified Gram–Schmidt step with one re-orthogonalization pass under `g₀`.
/// Returns the normalized residual, or `None` when the candidate is dependent.
fn orthonormalize_against(
    basis: &[ComplexVec],
    candidate: &ComplexVec,
    tol: f64,
) -> (Option<ComplexVec>, f64) {
    let scale = candidate.norm();
    if scale == 0.0 {
        return (None, 0.0);
    }
    let mut r = candidate.clone();
    for _ in 0..2 {
        for b in basis {
            let c = r.real_dot(b);
            r = r.axpy(-c, b);
        }
    }
    let rel = r.norm() / scale;
    if rel <= tol {
        (None, rel)
    } else {
        (Some(r.scale_real(1.0 / r.norm())), rel)
    }
}

fn project(basis: &[ComplexVec], w: &ComplexVec) -> ComplexVec {
    basis
        .iter()
        .fold(ComplexVec::zeros(w.dim()), |acc, b| acc.axpy(w.real_dot(b), b))
}

pub fn build_split_frame(generators: &[ComplexVec]) -> Result<SplitFrame> {
    let n = match generators.first() {
        Some(g) => g.dim(),
        None => return Err(Error::LengthMismatch("no generators supplied".into())),
    };
    for g in generators {
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.dim(),
            });
        }
    }

    let mut vertical = Vec::with_capacity(generators.len());
    for g in generators {
        match orthonormalize_against(&vertical, g, DEPENDENCE_TOL) {
            (Some(b), _) => vertical.push(b),
            (None, residual) => return Err(Error::DependentGenerators { residual }),
        }
    }

    // The orbit must be isotropic, otherwise the three pieces are not orthogonal.
    for (a, ga) in generators.iter().enumerate() {
        for gb in &generators[a..] {
            let w = omega(ga, gb).abs();
            if w > DEPENDENCE_TOL * ga.norm().max(1.0) * gb.norm().max(1.0) {
                return Err(Error::NotOnZeroLevel(format!(
                    "orbit tangent space is not isotropic: |ω(ξ, η)| = {w:.3e}"
                )));
            }
        }
    }

    let transverse: Vec<ComplexVec> = vertical.iter().map(|b| b.mul_i()).collect();
    let mut occupied: Vec<ComplexVec> = vertical.clone();
    occupied.extend(transverse.iter().cloned());

    let target = 2 * n - 2 * generators.len();
    let mut horizontal: Vec<ComplexVec> = Vec::with_capacity(target);
    for l in 0..n {
        for unit in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
            if horizontal.len() == target {
                break;
            }
            let e = ComplexVec::basis(n, l).scale(unit);
            let mut against = occupied.clone();
            against.extend(horizontal.iter().cloned());
            if let (Some(b), _) = orthonormalize_against(&against, &e, 1e-8) {
                horizontal.push(b);
            }
        }
    }
    if horizontal.len() != target {
        return Err(Error::DependentGenerators { residual: 0.0 });
    }

    for h in &horizontal {
        let ih = h.mul_i();
        let defect = ih.sub(&project(&horizontal, &ih)).norm();
        if defect > DEPENDENCE_TOL {
            return Err(Error::NotOnZeroLevel(format!(
                "horizontal space is not i-invariant (defect {defect:.3e})"
            )));
        }
    }

    Ok(SplitFrame {
        generators: generators.to_vec(),
        j_generators: generators.iter().map(|g| g.mul_i()).collect(),
        horizontal_basis: horizontal,
        vertical_basis: vertical,
        id: NEXT_FRAME_ID.fetch_add(1, Ordering::Relaxed),
    })
}

pub fn split(frame: &SplitFrame, w: &ComplexVec) -> Result<TangentSplit> {
    if w.dim() != frame.dim() {
        return Err(Error::DimensionMismatch {
            expected: frame.dim(),
            got: w.dim(),
        });
    }
    Ok(TangentSplit {
        v_part: project(&frame.vertical_basis, w),
        h_part: project(&frame.horizontal_basis, w),
        t_part: project(&frame.transverse_basis(), w),
        frame_id: frame.id,
    })
}

/// `Q(w_v + w_t, v_v + v_t) = −‖v_t‖² − ‖w_t‖² + i[ω(w_v, w_t) − ω(v_v, v_t)]`.
pub fn q_form(split_w: &TangentSplit, split_v: &TangentSplit) -> Result<C64> {
    if split_w.frame_id != split_v.frame_id {
        return Err(Error::FrameMismatch);
    }
    let re = -split_v.t_part.norm_sqr() - split_w.t_part.norm_sqr();
    let im = omega(&split_w.v_part, &split_w.t_part) - omega(&split_v.v_part, &split_v.t_part);
    Ok(C64::new(re, im))
}

/// Value, gradient and Hessian of `Ψ(t, ϑ) = i t (1 − e^{iϑ}) − ϑ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPhase {
    pub value: C64,
    pub gradient: [C64; 2],
    pub hessian: [[C64; 2]; 2],
}

pub fn model_phase(t: f64, theta: f64) -> ModelPhase {
    let i = C64::new(0.0, 1.0);
    let e = C64::from_polar(1.0, theta);
    ModelPhase {
        value: i * t * (1.0 - e) - theta,
        gradient: [i * (1.0 - e), t * e - 1.0],
        hessian: [[C64::new(0.0, 0.0), e], [e, i * t * e]],
    }
}
