//! Complex numbers stored as (log-modulus, phase).

use std::f64::consts::PI;
use std::ops::{Div, Mul};

use crate::C64;

/// `e^{log_mod + i·phase}`; zero is `log_mod = −∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    pub log_mod: f64,
    pub phase: f64,
}

/// Reduce an angle to `(−π, π]`.
pub fn wrap_phase(p: f64) -> f64 {
    let r = (p + PI).rem_euclid(2.0 * PI) - PI;
    if r <= -PI {
        r + 2.0 * PI
    } else {
        r
    }
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_mod: f64::NEG_INFINITY,
        phase: 0.0,
    };
    pub const ONE: LogComplex = LogComplex {
        log_mod: 0.0,
        phase: 0.0,
    };

    pub fn new(log_mod: f64, phase: f64) -> Self {
        if log_mod == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        LogComplex {
            log_mod,
            phase: wrap_phase(phase),
        }
    }

    /// `e^z` for complex `z`.
    pub fn exp(z: C64) -> Self {
        Self::new(z.re, z.im)
    }

    pub fn from_real_log(log_mod: f64) -> Self {
        Self::new(log_mod, 0.0)
    }

    pub fn from_complex(z: C64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        Self::new(z.norm().ln(), z.arg())
    }

    pub fn is_zero(&self) -> bool {
        self.log_mod == f64::NEG_INFINITY
    }

    /// Ordinary complex value; overflows to infinity above `log_mod ≈ 709`.
    pub fn to_complex(&self) -> C64 {
        if self.is_zero() {
            return C64::new(0.0, 0.0);
        }
        C64::from_polar(self.log_mod.exp(), self.phase)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.log_mod, -self.phase)
    }

    pub fn powi(&self, k: i64) -> Self {
        if self.is_zero() {
            return if k == 0 { Self::ONE } else { Self::ZERO };
        }
        Self::new(self.log_mod * k as f64, self.phase * k as f64)
    }

    pub fn modulus(&self) -> f64 {
        self.log_mod.exp()
    }

    /// `self` scaled by `e^{−shift}` as an ordinary complex.
    pub fn to_complex_scaled(&self, shift: f64) -> C64 {
        if self.is_zero() {
            return C64::new(0.0, 0.0);
        }
        C64::from_polar((self.log_mod - shift).exp(), self.phase)
    }

    /// Relative distance `|a − b| / max(|a|, |b|)`, evaluated without overflow.
    pub fn rel_diff(&self, other: &LogComplex) -> f64 {
        let m = self.log_mod.max(other.log_mod);
        if m == f64::NEG_INFINITY {
            return 0.0;
        }
        (self.to_complex_scaled(m) - other.to_complex_scaled(m)).norm()
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;
    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mod + rhs.log_mod, self.phase + rhs.phase)
    }
}

impl Div for LogComplex {
    type Output = LogComplex;
    fn div(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(self.log_mod - rhs.log_mod, self.phase - rhs.phase)
    }
}

/// Streaming sum that rescales by the running maximum log-modulus.
#[derive(Debug, Clone, Copy)]
pub struct LogSum {
    max_log: f64,
    acc: C64,
}

impl Default for LogSum {
    fn default() -> Self {
        LogSum {
            max_log: f64::NEG_INFINITY,
            acc: C64::new(0.0, 0.0),
        }
    }
}

impl LogSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: LogComplex) {
        if term.is_zero() {
            return;
        }
        if term.log_mod > self.max_log {
            if self.max_log > f64::NEG_INFINITY {
                self.acc *= (self.max_log - term.log_mod).exp();
            }
            self.max_log = term.log_mod;
        }
        self.acc += term.to_complex_scaled(self.max_log);
    }

    /// Largest log-modulus seen so far.
    pub fn max_log(&self) -> f64 {
        self.max_log
    }

    pub fn total(&self) -> LogComplex {
        if self.max_log == f64::NEG_INFINITY {
            return LogComplex::ZERO;
        }
        let inner = LogComplex::from_complex(self.acc);
        if inner.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex::new(inner.log_mod + self.max_log, inner.phase)
    }
}

impl FromIterator<LogComplex> for LogSum {
    fn from_iter<I: IntoIterator<Item = LogComplex>>(iter: I) -> Self {
        let mut s = LogSum::new();
        for t in iter {
            s.add(t);
        }
        s
    }
}

/// `ln(n!)`.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    statrs::function::gamma::ln_gamma(n as f64 + 1.0)
}
