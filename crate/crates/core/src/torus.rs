//! Linear torus actions given by integer weight matrices.
//!
//! Coordinate `l` of ℂ^{d+1} carries the weight `w_l` (column `l` of the weight
//! matrix); the angle vector `θ ∈ [0, 2π)^g` acts by `z_l ↦ e^{i⟨w_l, θ⟩} z_l`.
//! In the projective model the same formula acts on the unit sphere
//! `S^{2d+1}`, which is the circle bundle over `ℙᵈ`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::ComplexVec;
use crate::snf::{smith_normal_form, IntMatrix};
use crate::C64;

/// Coordinates with modulus below this count as zero when computing supports.
pub const SUPPORT_TOL: f64 = 1e-12;
/// Tolerance for the zero-level test and for stabilizer membership.
pub const LEVEL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Flat ℂⁿ with the reduced Heisenberg circle bundle.
    Affine,
    /// ℙᵈ with the hyperplane bundle; circle bundle `S^{2d+1}`.
    Projective,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    rank: usize,
    dim: usize,
    entries: Vec<i64>,
}

impl WeightMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::Config("weight matrix needs at least one row".into()));
        }
        let dim = rows[0].len();
        if dim == 0 {
            return Err(Error::Config("weight matrix needs at least one column".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        Ok(WeightMatrix {
            rank,
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Torus rank `g`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Ambient complex dimension (number of columns).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weight(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// `⟨w_l, θ⟩` for column `l`.
    pub fn pairing(&self, col: usize, angles: &[f64]) -> f64 {
        (0..self.rank).map(|i| self.weight(i, col) as f64 * angles[i]).sum()
    }

    /// The weight `−W·J ∈ ℤ^g` of the monomial `z^J` under the action on functions.
    pub fn monomial_weight(&self, exponents: &[usize]) -> Vec<i64> {
        (0..self.rank)
            .map(|i| {
                -(0..self.dim)
                    .map(|l| self.weight(i, l) * exponents[l] as i64)
                    .sum::<i64>()
            })
            .collect()
    }

    pub fn max_abs_weight(&self, row: usize) -> i64 {
        (0..self.dim).map(|l| self.weight(row, l).abs()).max().unwrap_or(0)
    }

    pub fn check_point(&self, z: &ComplexVec) -> Result<()> {
        if z.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.dim(),
            });
        }
        Ok(())
    }

    pub fn check_rank(&self, got: usize) -> Result<()> {
        if got != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got,
            });
        }
        Ok(())
    }
}

/// A point of `T^g`, stored as angles reduced to `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusElement {
    angles: Vec<f64>,
}

fn reduce_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r >= 2.0 * PI {
        0.0
    } else {
        r
    }
}

impl TorusElement {
    pub fn new(angles: Vec<f64>) -> Self {
        TorusElement {
            angles: angles.into_iter().map(reduce_angle).collect(),
        }
    }

    pub fn identity(rank: usize) -> Self {
        TorusElement {
            angles: vec![0.0; rank],
        }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn rank(&self) -> usize {
        self.angles.len()
    }

    pub fn compose(&self, other: &TorusElement) -> TorusElement {
        TorusElement::new(self.angles.iter().zip(&other.angles).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> TorusElement {
        TorusElement::new(self.angles.iter().map(|a| -a).collect())
    }

    /// Max over coordinates of the circular distance between angles.
    pub fn distance(&self, other: &TorusElement) -> f64 {
        self.angles
            .iter()
            .zip(&other.angles)
            .map(|(a, b)| {
                let d = (a - b).rem_euclid(2.0 * PI);
                d.min(2.0 * PI - d)
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub weights: Vec<i64>,
}

impl IrrepLabel {
    pub fn new(weights: Vec<i64>) -> Self {
        IrrepLabel { weights }
    }

    pub fn trivial(rank: usize) -> Self {
        IrrepLabel {
            weights: vec![0; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }
}

/// Dimension of an irreducible representation of a torus.
pub const IRREP_DIM: f64 = 1.0;

/// A finite subgroup of the torus, listed explicitly.
#[derive(Debug, Clone)]
pub struct Stabilizer {
    elements: Vec<TorusElement>,
}

impl Stabilizer {
    /// Validates identity, closure under composition and inverses.
    pub fn new(elements: Vec<TorusElement>) -> Result<Self> {
        let rank = match elements.first() {
            Some(e) => e.rank(),
            None => return Err(Error::MalformedStabilizer("empty element list".into())),
        };
        let contains = |t: &TorusElement| elements.iter().any(|e| e.distance(t) < 1e-9);
        if !contains(&TorusElement::identity(rank)) {
            return Err(Error::MalformedStabilizer("identity missing".into()));
        }
        for a in &elements {
            if !contains(&a.inverse()) {
                return Err(Error::MalformedStabilizer("not closed under inverse".into()));
            }
            for b in &elements {
                if !contains(&a.compose(b)) {
                    return Err(Error::MalformedStabilizer(
                        "not closed under composition".into(),
                    ));
                }
            }
        }
        for (i, a) in elements.iter().enumerate() {
            if elements[i + 1..].iter().any(|b| a.distance(b) < 1e-9) {
                return Err(Error::MalformedStabilizer("duplicate element".into()));
            }
        }
        Ok(Stabilizer { elements })
    }

    pub fn elements(&self) -> &[TorusElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// `χ_ϖ(t) = e^{i ϖ·θ}`.
pub fn character(pi: &IrrepLabel, t: &TorusElement) -> Result<C64> {
    if pi.rank() != t.rank() {
        return Err(Error::RankMismatch {
            expected: pi.rank(),
            got: t.rank(),
        });
    }
    let phase: f64 = pi
        .weights
        .iter()
        .zip(t.angles())
        .map(|(&w, &a)| w as f64 * a)
        .sum();
    Ok(C64::from_polar(1.0, phase))
}

pub fn act_affine(w: &WeightMatrix, t: &TorusElement, z: &ComplexVec) -> Result<ComplexVec> {
    w.check_point(z)?;
    w.check_rank(t.rank())?;
    Ok(act_unchecked(w, t.angles(), z))
}

pub(crate) fn act_unchecked(w: &WeightMatrix, angles: &[f64], z: &ComplexVec) -> ComplexVec {
    ComplexVec::new(
        z.iter()
            .enumerate()
            .map(|(l, zl)| zl * C64::from_polar(1.0, w.pairing(l, angles)))
            .collect(),
    )
}

pub fn moment_map(w: &WeightMatrix, z: &ComplexVec, model: Model) -> Result<Vec<f64>> {
    w.check_point(z)?;
    let denom = match model {
        Model::Affine => 1.0,
        Model::Projective => {
            let n = z.norm_sqr();
            if n == 0.0 {
                return Err(Error::ZeroVector);
            }
            n
        }
    };
    Ok((0..w.rank())
        .map(|i| {
            (0..w.dim())
                .map(|l| w.weight(i, l) as f64 * z[l].norm_sqr())
                .sum::<f64>()
                / denom
        })
        .collect())
}

/// Infinitesimal generators `d/ds act(s·e_i) z` at `s = 0`, one per torus
/// coordinate. In the projective model the point is normalized and the
/// vectors are projected onto the Hermitian orthocomplement of `ℂz`.
pub fn generators_at(w: &WeightMatrix, z: &ComplexVec, model: Model) -> Result<Vec<ComplexVec>> {
    w.check_point(z)?;
    let base = match model {
        Model::Affine => z.clone(),
        Model::Projective => z.normalized()?,
    };
    Ok((0..w.rank())
        .map(|i| {
            let raw = ComplexVec::new(
                base.iter()
                    .enumerate()
                    .map(|(l, zl)| zl * C64::new(0.0, w.weight(i, l) as f64))
                    .collect(),
            );
            match model {
                Model::Affine => raw,
                Model::Projective => raw.sub(&base.scale(raw.herm(&base))),
            }
        })
        .collect())
}

fn support(z: &ComplexVec) -> Vec<usize> {
    (0..z.dim()).filter(|&l| z[l].norm() > SUPPORT_TOL).collect()
}

/// Finite stabilizer of `z` (affine) or `[z]` (projective), enumerated from
/// the Smith normal form of the integer constraint lattice.
pub fn stabilizer_of(w: &WeightMatrix, z: &ComplexVec, model: Model) -> Result<Stabilizer> {
    w.check_point(z)?;
    let supp = support(z);
    if supp.is_empty() {
        return Err(Error::ZeroVector);
    }
    let g = w.rank();
    // Each row r gives an integer functional with ⟨r, θ/2π⟩ ∈ ℤ.
    let constraints: Vec<Vec<i64>> = match model {
        Model::Affine => supp
            .iter()
            .map(|&l| (0..g).map(|i| w.weight(i, l)).collect())
            .collect(),
        Model::Projective => {
            let l0 = supp[0];
            supp[1..]
                .iter()
                .map(|&l| (0..g).map(|i| w.weight(i, l) - w.weight(i, l0)).collect())
                .collect()
        }
    };
    if constraints.is_empty() {
        return Err(Error::InfiniteStabilizer {
            rank: 0,
            torus_rank: g,
        });
    }
    let snf = smith_normal_form(&IntMatrix::from_rows(&constraints));
    let divisors = snf.invariant_factors();
    if divisors.len() < g {
        return Err(Error::InfiniteStabilizer {
            rank: divisors.len(),
            torus_rank: g,
        });
    }

    // θ/2π = right · (m_i / d_i), m_i ∈ [0, d_i)
    let order: i64 = divisors.iter().product();
    let mut elements = Vec::with_capacity(order as usize);
    let mut digits = vec![0i64; g];
    loop {
        let phi: Vec<f64> = digits
            .iter()
            .zip(&divisors)
            .map(|(&m, &d)| m as f64 / d as f64)
            .collect();
        let angles = (0..g)
            .map(|i| 2.0 * PI * (0..g).map(|j| snf.right[(i, j)] as f64 * phi[j]).sum::<f64>())
            .collect();
        elements.push(TorusElement::new(angles));

        let mut pos = 0;
        loop {
            if pos == g {
                return Stabilizer::new(elements);
            }
            digits[pos] += 1;
            if digits[pos] < divisors[pos] {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// The unit `h_t` with `μ_t(x) = h_t · x` for a stabilizer element `t` of `[z]`.
pub fn fiber_multiplier(w: &WeightMatrix, t: &TorusElement, z: &ComplexVec) -> Result<C64> {
    w.check_point(z)?;
    w.check_rank(t.rank())?;
    let supp = support(z);
    if supp.is_empty() {
        return Err(Error::ZeroVector);
    }
    let values: Vec<C64> = supp
        .iter()
        .map(|&l| C64::from_polar(1.0, w.pairing(l, t.angles())))
        .collect();
    let h = values[0];
    let spread = values.iter().map(|v| (v - h).norm()).fold(0.0, f64::max);
    if spread > LEVEL_TOL {
        return Err(Error::NotInStabilizer { spread });
    }
    Ok(h)
}

/// Multipliers aligned with `stab.elements()`.
pub fn fiber_multipliers(w: &WeightMatrix, stab: &Stabilizer, z: &ComplexVec) -> Result<Vec<C64>> {
    stab.elements()
        .iter()
        .map(|t| fiber_multiplier(w, t, z))
        .collect()
}

/// Gram matrix `g₀(ξ_i, ξ_j)` of a family of real tangent vectors.
pub fn gram_matrix(vectors: &[ComplexVec]) -> Vec<Vec<f64>> {
    vectors
        .iter()
        .map(|a| vectors.iter().map(|b| a.real_dot(b)).collect())
        .collect()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))
            .unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    det
}

pub fn on_zero_level(w: &WeightMatrix, z: &ComplexVec, model: Model) -> Result<bool> {
    let phi = moment_map(w, z, model)?;
    let scale = match model {
        Model::Affine => z.norm_sqr().max(1.0),
        Model::Projective => 1.0,
    };
    Ok(phi.iter().all(|p| p.abs() <= LEVEL_TOL * scale))
}

/// Riemannian volume of the orbit through a zero-level point.
pub fn effective_volume(w: &WeightMatrix, z: &ComplexVec, model: Model) -> Result<f64> {
    if !on_zero_level(w, z, model)? {
        let phi = moment_map(w, z, model)?;
        return Err(Error::NotOnZeroLevel(format!("moment map {phi:?}")));
    }
    let stab = stabilizer_of(w, z, model)?;
    let gens = generators_at(w, z, model)?;
    let det = determinant(gram_matrix(&gens));
    let g = w.rank() as i32;
    Ok((2.0 * PI).powi(g) * det.max(0.0).sqrt() / stab.order() as f64)
}
