use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ChannelSpec, PhysicsError};
use crate::linalg::ComplexMatrix;

/// Even-tempered Gaussian set `u_k(r) = N_k r^{L+1} exp(−r²/(2b_k²))`,
/// `b_k = b₀ q^k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialBasis {
    pub size: usize,
    /// Smallest width `b₀`, fm.
    pub b0: f64,
    /// Geometric ratio `q > 1`.
    pub ratio: f64,
}

impl Default for RadialBasis {
    fn default() -> Self {
        Self { size: 30, b0: 0.3, ratio: 1.35 }
    }
}

impl RadialBasis {
    pub fn new(size: usize, b0: f64, ratio: f64) -> Result<Self, PhysicsError> {
        let basis = Self { size, b0, ratio };
        basis.validate()?;
        Ok(basis)
    }

    pub fn validate(&self) -> Result<(), PhysicsError> {
        if self.size == 0 {
            return Err(PhysicsError::InvalidParameter("basis size must be at least 1".into()));
        }
        if !(self.b0 > 0.0) || !self.b0.is_finite() {
            return Err(PhysicsError::InvalidParameter(format!("basis b0 must be positive, got {}", self.b0)));
        }
        if !(self.ratio > 1.0) || !self.ratio.is_finite() {
            return Err(PhysicsError::InvalidParameter(format!("basis ratio must exceed 1, got {}", self.ratio)));
        }
        Ok(())
    }

    /// Widths `b_k` in fm, strictly increasing.
    pub fn widths(&self) -> Vec<f64> {
        (0..self.size).map(|k| self.b0 * self.ratio.powi(k as i32)).collect()
    }

    /// Gaussian exponents `1/(2b_k²)`.
    pub fn exponents(&self) -> Vec<f64> {
        self.widths().iter().map(|b| 0.5 / (b * b)).collect()
    }
}

/// Closed-form matrix elements between normalized basis functions (not yet
/// orthonormalized). All radial integrals reduce to
/// `∫₀^∞ r^n e^{−p r²} dr = Γ((n+1)/2) / (2 p^{(n+1)/2})`, which continues
/// analytically to complex `p` with `Re p > 0`.
#[derive(Debug, Clone)]
pub struct PrimitiveElements {
    pub l: u32,
    pub exponents: Vec<f64>,
    pub overlap: ComplexMatrix,
    /// `⟨u_i| −d²/dr² + L(L+1)/r² |u_j⟩` times `ħ²/2μ`.
    pub kinetic: ComplexMatrix,
    /// `⟨u_i| Z/r |u_j⟩`
    pub coulomb: ComplexMatrix,
}

impl PrimitiveElements {
    pub fn new(basis: &RadialBasis, channel: &ChannelSpec) -> Result<Self, PhysicsError> {
        basis.validate()?;
        let a = basis.exponents();
        let n = a.len();
        let l = channel.l as f64;
        let overlap = ComplexMatrix::from_fn(n, n, |i, j| real(overlap_element(l, a[i], a[j])));
        let kinetic = ComplexMatrix::from_fn(n, n, |i, j| {
            let p = a[i] + a[j];
            real(channel.hbar2_over_2mu * 2.0 * (2.0 * l + 3.0) * a[i] * a[j] / p * overlap_element(l, a[i], a[j]))
        });
        let coulomb = ComplexMatrix::from_fn(n, n, |i, j| {
            // ∫ r^{2L+1} e^{-p r²} = Γ(L+1)/(2p^{L+1}), scaled by the normalizations.
            let p = a[i] + a[j];
            let log_value = ln_gamma(l + 1.0) - (2.0f64).ln() - (l + 1.0) * p.ln() + log_norm(l, a[i]) + log_norm(l, a[j]);
            real(channel.coulomb_strength * log_value.exp())
        });
        Ok(Self { l: channel.l, exponents: a, overlap, kinetic, coulomb })
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// `⟨u_i| V₀ exp(−(r e^{iθ})²/a²) |u_j⟩` for unit coupling.
    pub fn gaussian_potential(&self, v0: f64, range: f64, rotation: Complex64) -> ComplexMatrix {
        let l = self.l as f64;
        let a = &self.exponents;
        let shift = rotation * rotation / (range * range);
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| {
            let p = Complex64::new(a[i] + a[j], 0.0) + shift;
            let log_value = Complex64::new(ln_gamma(l + 1.5) - (2.0f64).ln() + log_norm(l, a[i]) + log_norm(l, a[j]), 0.0)
                - p.ln() * (l + 1.5);
            log_value.exp() * v0
        })
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `ln N` with `N⁻² = ∫ r^{2L+2} e^{−2a r²} dr`.
fn log_norm(l: f64, a: f64) -> f64 {
    -0.5 * (ln_gamma(l + 1.5) - (2.0f64).ln() - (l + 1.5) * (2.0 * a).ln())
}

/// Normalized overlap `(2√(a_i a_j)/(a_i + a_j))^{L+3/2}`.
fn overlap_element(l: f64, ai: f64, aj: f64) -> f64 {
    (2.0 * (ai * aj).sqrt() / (ai + aj)).powf(l + 1.5)
}

/// `ln Γ(x)` for the positive integer and half-integer arguments used here.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0 && (2.0 * x).fract() == 0.0);
    let mut value = if x.fract() == 0.0 { 0.0 } else { 0.5 * std::f64::consts::PI.ln() };
    let mut k = if x.fract() == 0.0 { 1.0 } else { 0.5 };
    while k < x {
        value += k.ln();
        k += 1.0;
    }
    value
}
