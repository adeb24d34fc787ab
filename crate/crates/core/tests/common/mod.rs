#![allow(dead_code)]

use std::f64::consts::PI;

use equivariant_szego::hermitian::ComplexVec;
use equivariant_szego::C64;

/// `ln n!` by direct summation.
pub fn ln_fact(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// Exact ℙ¹ diagonal kernel for weights (−1, 1): the single monomial with
/// `j₀ = (k + ϖ)/2`, or `None` when the isotype does not occur.
pub fn p1_diagonal_oracle(k: usize, pi: i64, x: &ComplexVec) -> Option<f64> {
    if (k as i64 + pi).rem_euclid(2) != 0 || pi.unsigned_abs() as usize > k {
        return None;
    }
    let j0 = ((k as i64 + pi) / 2) as usize;
    let j1 = k - j0;
    let log = ln_fact(k + 1) - PI.ln() - ln_fact(j0) - ln_fact(j1)
        + j0 as f64 * x[0].norm_sqr().ln()
        + j1 as f64 * x[1].norm_sqr().ln();
    Some(log)
}

/// Indices `(j₀, …, j_d)` with `|J| = k`, generated by recursion.
pub fn all_indices(dim: usize, k: usize) -> Vec<Vec<usize>> {
    if dim == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for j in 0..=k {
        for mut rest in all_indices(dim - 1, k - j) {
            rest.insert(0, j);
            out.push(rest);
        }
    }
    out
}

/// `s_J(x) conj(s_J(y))` in ordinary floating point (small k only).
pub fn monomial_product(k: usize, j: &[usize], x: &ComplexVec, y: &ComplexVec) -> C64 {
    let d = x.dim() - 1;
    let norm = (ln_fact(k + d) - d as f64 * PI.ln() - j.iter().map(|&e| ln_fact(e)).sum::<f64>()).exp();
    let mut v = C64::new(norm, 0.0);
    for (l, &e) in j.iter().enumerate() {
        v *= (x[l] * y[l].conj()).powu(e as u32);
    }
    v
}

/// Composite adaptive Simpson rule on `[a, b]`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> C64, a: f64, b: f64, tol: f64) -> C64 {
    fn simpson(f: &dyn Fn(f64) -> C64, a: f64, fa: C64, b: f64, fb: C64) -> (f64, C64, C64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> C64,
        a: f64,
        fa: C64,
        b: f64,
        fb: C64,
        m: f64,
        fm: C64,
        whole: C64,
        tol: f64,
        depth: usize,
    ) -> C64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 50)
}

/// Fubini–Study distance `arccos |⟨x, y⟩|` between unit vectors.
pub fn fs_distance(x: &ComplexVec, y: &ComplexVec) -> f64 {
    x.herm(y).norm().min(1.0).acos()
}

/// Whether `a` and `b` span the same complex line.
pub fn same_line(a: &ComplexVec, b: &ComplexVec, tol: f64) -> bool {
    let c = a.herm(b);
    (c.norm() - a.norm() * b.norm()).abs() <= tol
}

/// A deterministic pseudo-random stream for tests that avoid proptest.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn vec(&mut self, n: usize, scale: f64) -> ComplexVec {
        ComplexVec::new(
            (0..n)
                .map(|_| C64::new(self.uniform(-scale, scale), self.uniform(-scale, scale)))
                .collect(),
        )
    }

    pub fn unit(&mut self, n: usize) -> ComplexVec {
        loop {
            let v = self.vec(n, 1.0);
            if v.norm() > 0.1 {
                return v.normalized().unwrap();
            }
        }
    }
}
