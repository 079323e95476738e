//! Two-alpha radial Hamiltonian `T + λ V_N + V_C` in a Gaussian basis, with
//! complex scaling `r → r e^{iθ}` applied to the operator.

mod basis;
mod hamiltonian;
mod quadrature;

pub use basis::{PrimitiveElements, RadialBasis};
pub use hamiltonian::{build_hamiltonian, AlphaAlphaModel, QuadratureReport, ScaledHamiltonian};
pub use quadrature::GaussLegendre;

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::LinalgError;

/// ħc in MeV·fm.
pub const HBAR_C: f64 = 197.3269631;
/// Alpha-particle rest energy in MeV.
pub const ALPHA_MASS: f64 = 3727.379;
/// Fine-structure constant.
pub const FINE_STRUCTURE: f64 = 1.0 / 137.035999;

/// Gaussian well depth and range fitted to alpha–alpha scattering.
pub const BUCK_V0: f64 = -122.6225;
pub const BUCK_RANGE: f64 = 2.132;

/// G-wave resonance of the reference calculation, MeV.
pub const REFERENCE_RESONANCE: Complex64 = Complex64::new(11.8079, -1.8085);

/// `ħ²/2μ` for two alphas (`μ = m_α/2`), i.e. `(ħc)²/(m_α c²)`.
pub fn alpha_alpha_hbar2_over_2mu() -> f64 {
    HBAR_C * HBAR_C / ALPHA_MASS
}

/// `e² = α ħc` in MeV·fm.
pub fn elementary_charge_squared() -> f64 {
    FINE_STRUCTURE * HBAR_C
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhysicsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("scaling angle {degrees}° outside [0°, 45°)")]
    AngleOutOfRange { degrees: f64 },
    #[error("rotation undefined for energy with non-positive real part ({0})")]
    UndefinedRotation(Complex64),
    #[error("quadrature cross-check failed for {term} element ({i},{j}): scaled error {error:.3e}")]
    Quadrature { term: &'static str, i: usize, j: usize, error: f64 },
    #[error("basis overlap is numerically singular (smallest eigenvalue {smallest:.3e})")]
    BasisIllConditioned { smallest: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Gaussian well `λ V₀ exp(−r²/a²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    /// Depth in MeV (negative for attraction).
    pub v0: f64,
    /// Range `a` in fm.
    pub range: f64,
    /// Dimensionless coupling.
    pub lambda: f64,
}

impl PotentialParams {
    pub fn new(v0: f64, range: f64, lambda: f64) -> Result<Self, PhysicsError> {
        if !(range > 0.0) || !range.is_finite() {
            return Err(PhysicsError::InvalidParameter(format!("potential range must be positive, got {range}")));
        }
        if !v0.is_finite() || !lambda.is_finite() {
            return Err(PhysicsError::InvalidParameter("potential depth and coupling must be finite".into()));
        }
        Ok(Self { v0, range, lambda })
    }

    pub fn alpha_alpha(lambda: f64) -> Self {
        Self { v0: BUCK_V0, range: BUCK_RANGE, lambda }
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        Self { lambda, ..self }
    }
}

/// `λ V₀ exp(−r²/a²)`, analytically continued for complex `r`.
pub fn gaussian_potential(r: Complex64, p: &PotentialParams) -> Complex64 {
    (-(r * r) / (p.range * p.range)).exp() * (p.lambda * p.v0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    /// Orbital angular momentum.
    pub l: u32,
    /// `ħ²/2μ` in MeV·fm².
    pub hbar2_over_2mu: f64,
    /// Point-Coulomb strength `Z₁Z₂e²` in MeV·fm.
    pub coulomb_strength: f64,
}

impl ChannelSpec {
    pub fn new(l: u32, hbar2_over_2mu: f64, coulomb_strength: f64) -> Result<Self, PhysicsError> {
        if !(hbar2_over_2mu > 0.0) || !hbar2_over_2mu.is_finite() {
            return Err(PhysicsError::InvalidParameter(format!("hbar2_over_2mu must be positive, got {hbar2_over_2mu}")));
        }
        if !(coulomb_strength >= 0.0) || !coulomb_strength.is_finite() {
            return Err(PhysicsError::InvalidParameter(format!(
                "coulomb_strength must be non-negative, got {coulomb_strength}"
            )));
        }
        Ok(Self { l, hbar2_over_2mu, coulomb_strength })
    }

    /// Alpha–alpha G wave (L = 4) with `4e²/r` Coulomb repulsion.
    pub fn alpha_alpha_g_wave() -> Self {
        Self { l: 4, hbar2_over_2mu: alpha_alpha_hbar2_over_2mu(), coulomb_strength: 4.0 * elementary_charge_squared() }
    }
}

/// Complex-scaling rotation angle, `0 ≤ θ < π/4`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ScalingAngle(f64);

impl ScalingAngle {
    pub const ZERO: ScalingAngle = ScalingAngle(0.0);

    pub fn from_radians(theta: f64) -> Result<Self, PhysicsError> {
        if !(0.0..FRAC_PI_4).contains(&theta) {
            return Err(PhysicsError::AngleOutOfRange { degrees: theta.to_degrees() });
        }
        Ok(Self(theta))
    }

    pub fn from_degrees(degrees: f64) -> Result<Self, PhysicsError> {
        Self::from_radians(degrees.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// `e^{iθ}`
    pub fn rotation(self) -> Complex64 {
        Complex64::from_polar(1.0, self.0)
    }
}

impl TryFrom<f64> for ScalingAngle {
    type Error = PhysicsError;
    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Self::from_radians(value)
    }
}

impl From<ScalingAngle> for f64 {
    fn from(a: ScalingAngle) -> f64 {
        a.0
    }
}

/// Whether the rotated continuum (at angle `2θ` below the real axis) has
/// swept past a resonance at `energy`: `2θ > arctan(|Im E| / Re E)`.
pub fn check_angle(theta: ScalingAngle, energy: Complex64) -> Result<bool, PhysicsError> {
    if !(energy.re > 0.0) {
        return Err(PhysicsError::UndefinedRotation(energy));
    }
    Ok(2.0 * theta.radians() > (energy.im.abs() / energy.re).atan())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_values() {
        let p = PotentialParams::alpha_alpha(1.0);
        assert_eq!(gaussian_potential(Complex64::new(0.0, 0.0), &p).re, -122.6225);
        let at_range = gaussian_potential(Complex64::new(2.132, 0.0), &p);
        assert!((at_range.re - (-122.6225 / std::f64::consts::E)).abs() < 1e-12);
        assert!((at_range.re + 45.1103).abs() < 1e-3);
        assert!(gaussian_potential(Complex64::new(60.0, 0.0), &p).norm() < 1e-300);
    }

    #[test]
    fn potential_rejects_bad_range() {
        assert!(PotentialParams::new(-1.0, 0.0, 1.0).is_err());
        assert!(PotentialParams::new(-1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn derived_constants() {
        assert!((alpha_alpha_hbar2_over_2mu() - 10.4465).abs() < 5e-4);
        assert!((4.0 * elementary_charge_squared() - 5.75986).abs() < 1e-4);
    }

    #[test]
    fn angle_condition() {
        let e = REFERENCE_RESONANCE;
        assert!(check_angle(ScalingAngle::from_degrees(20.0).unwrap(), e).unwrap());
        assert!(!check_angle(ScalingAngle::from_degrees(4.0).unwrap(), e).unwrap());
        assert!(check_angle(ScalingAngle::from_degrees(1.0).unwrap(), Complex64::new(3.0, 0.0)).unwrap());
        assert!(matches!(
            check_angle(ScalingAngle::from_degrees(20.0).unwrap(), Complex64::new(-1.0, -1.0)),
            Err(PhysicsError::UndefinedRotation(_))
        ));
    }

    #[test]
    fn angle_range() {
        assert!(ScalingAngle::from_degrees(45.0).is_err());
        assert!(ScalingAngle::from_degrees(-1.0).is_err());
        assert!((ScalingAngle::from_degrees(20.0).unwrap().degrees() - 20.0).abs() < 1e-12);
    }

    #[test]
    fn channel_validation() {
        assert!(ChannelSpec::new(4, 0.0, 1.0).is_err());
        assert!(ChannelSpec::new(4, 1.0, -1.0).is_err());
    }
}
