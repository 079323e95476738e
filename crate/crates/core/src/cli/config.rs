//! Run configuration: TOML with dotted keys, e.g.
//!
//! ```toml
//! basis.size = 30
//! target.theta_degrees = 20.0
//! ihhl.solver = "hhl-circuit"
//! ```
//!
//! Every key is optional and unknown keys are rejected. Values are checked
//! on load, before any physics runs.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ec::{default_training_lambdas, evenly_spaced};
use crate::ihhl::{EnergyUpdate, IhhlOptions, SolverKind};
use crate::physics::{
    alpha_alpha_hbar2_over_2mu, elementary_charge_squared, AlphaAlphaModel, ChannelSpec, PhysicsError, RadialBasis,
    ScalingAngle, BUCK_RANGE, BUCK_V0, REFERENCE_RESONANCE,
};
use crate::qsim::{HhlConfig, MAX_QUBITS};

/// Environment variable naming the config file used when `--config` is absent.
pub const CONFIG_ENV: &str = "RESONANCE_CONFIG";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("malformed config: {0}")]
    Syntax(String),
    #[error("invalid config value: {0}")]
    Invalid(String),
}

impl From<PhysicsError> for ConfigError {
    fn from(e: PhysicsError) -> Self {
        ConfigError::Invalid(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PotentialSection {
    /// Well depth, MeV.
    pub v0: f64,
    /// Range, fm.
    pub range: f64,
}

impl Default for PotentialSection {
    fn default() -> Self {
        Self { v0: BUCK_V0, range: BUCK_RANGE }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelSection {
    pub l: u32,
    /// MeV·fm².
    pub hbar2_over_2mu: f64,
    /// `Z₁Z₂e²`, MeV·fm.
    pub coulomb_strength: f64,
}

impl Default for ChannelSection {
    fn default() -> Self {
        Self { l: 4, hbar2_over_2mu: alpha_alpha_hbar2_over_2mu(), coulomb_strength: 4.0 * elementary_charge_squared() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BasisSection {
    pub size: usize,
    /// Narrowest Gaussian width, fm.
    pub b0: f64,
    /// Geometric width ratio.
    pub ratio: f64,
}

impl Default for BasisSection {
    fn default() -> Self {
        let b = RadialBasis::default();
        Self { size: b.size, b0: b.b0, ratio: b.ratio }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrainingSection {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub count: usize,
}

impl Default for TrainingSection {
    fn default() -> Self {
        let l = default_training_lambdas();
        Self { lambda_min: l[0], lambda_max: l[l.len() - 1], count: l.len() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TargetSection {
    pub lambda: f64,
    pub theta_degrees: f64,
    /// Resonance used to pick the candidate among EC eigenvalues, MeV.
    pub reference_re: f64,
    pub reference_im: f64,
}

impl Default for TargetSection {
    fn default() -> Self {
        Self { lambda: 1.0, theta_degrees: 20.0, reference_re: REFERENCE_RESONANCE.re, reference_im: REFERENCE_RESONANCE.im }
    }
}

/// `"auto"` defers to [`SolverKind::default_update`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpdateSetting {
    #[default]
    Auto,
    ShiftInvert,
    Rayleigh,
}

impl From<UpdateSetting> for Option<EnergyUpdate> {
    fn from(u: UpdateSetting) -> Self {
        match u {
            UpdateSetting::Auto => None,
            UpdateSetting::ShiftInvert => Some(EnergyUpdate::ShiftInvert),
            UpdateSetting::Rayleigh => Some(EnergyUpdate::Rayleigh),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IhhlSection {
    pub epsilon: f64,
    pub beta_re: f64,
    pub beta_im: f64,
    pub max_iter: usize,
    pub solver: SolverKind,
    pub update: UpdateSetting,
    pub clock_qubits: usize,
    /// Overrides the automatic evolution time of the circuit.
    pub evolution_time: Option<f64>,
    /// Seed for the random starting vectors.
    pub seed: u64,
}

impl Default for IhhlSection {
    fn default() -> Self {
        let o = IhhlOptions::default();
        Self {
            epsilon: o.epsilon,
            beta_re: o.beta.re,
            beta_im: o.beta.im,
            max_iter: o.max_iter,
            solver: o.solver,
            update: UpdateSetting::Auto,
            clock_qubits: o.hhl.clock_qubits,
            evolution_time: None,
            seed: 2024,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub potential: PotentialSection,
    pub channel: ChannelSection,
    pub basis: BasisSection,
    pub training: TrainingSection,
    pub target: TargetSection,
    pub ihhl: IhhlSection,
}

/// Everything that fixes the Hamiltonian, stored with training output so a
/// stale file is caught before projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub potential: PotentialSection,
    pub channel: ChannelSection,
    pub basis: BasisSection,
}

fn require(ok: bool, message: impl FnOnce() -> String) -> Result<(), ConfigError> {
    if ok {
        Ok(())
    } else {
        Err(ConfigError::Invalid(message()))
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let config: Self = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.message().to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path)
            .map_err(|e| ConfigError::Io { path: path.to_path_buf(), message: e.to_string() })?;
        Self::parse(&text)
    }

    /// Dotted-key TOML reproducing this configuration.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.model()?;
        let t = &self.training;
        require(t.count >= 1, || "training.count must be at least 1".into())?;
        require(t.lambda_min.is_finite() && t.lambda_max.is_finite() && t.lambda_min <= t.lambda_max, || {
            format!("training range [{}, {}] is not an interval", t.lambda_min, t.lambda_max)
        })?;
        require(self.target.lambda.is_finite(), || "target.lambda must be finite".into())?;
        self.theta()?;
        require(self.reference().re > 0.0 && self.reference().im.is_finite(), || {
            "target.reference_re must be positive".into()
        })?;
        let i = &self.ihhl;
        require(i.epsilon > 0.0 && i.epsilon.is_finite(), || format!("ihhl.epsilon must be positive, got {}", i.epsilon))?;
        require(i.max_iter >= 1, || "ihhl.max_iter must be at least 1".into())?;
        let beta = Complex64::new(i.beta_re, i.beta_im);
        require(beta.is_finite() && beta.norm() > 0.0, || "ihhl.beta must be finite and nonzero".into())?;
        require((1..MAX_QUBITS).contains(&i.clock_qubits), || {
            format!("ihhl.clock_qubits must be in 1..{MAX_QUBITS}, got {}", i.clock_qubits)
        })?;
        if let Some(t) = i.evolution_time {
            require(t > 0.0 && t.is_finite(), || format!("ihhl.evolution_time must be positive, got {t}"))?;
        }
        Ok(())
    }

    pub fn model_spec(&self) -> ModelSpec {
        ModelSpec { potential: self.potential, channel: self.channel, basis: self.basis }
    }

    pub fn model(&self) -> Result<AlphaAlphaModel, ConfigError> {
        let c = &self.channel;
        let b = &self.basis;
        Ok(AlphaAlphaModel::new(
            self.potential.v0,
            self.potential.range,
            ChannelSpec::new(c.l, c.hbar2_over_2mu, c.coulomb_strength)?,
            RadialBasis::new(b.size, b.b0, b.ratio)?,
        )?)
    }

    /// `count` couplings evenly spaced over `[lambda_min, lambda_max]`.
    pub fn training_lambdas(&self) -> Vec<f64> {
        let t = &self.training;
        evenly_spaced(t.lambda_min, t.lambda_max, t.count)
    }

    pub fn theta(&self) -> Result<ScalingAngle, ConfigError> {
        Ok(ScalingAngle::from_degrees(self.target.theta_degrees)?)
    }

    pub fn reference(&self) -> Complex64 {
        Complex64::new(self.target.reference_re, self.target.reference_im)
    }

    pub fn ihhl_options(&self) -> IhhlOptions {
        let i = &self.ihhl;
        IhhlOptions {
            epsilon: i.epsilon,
            max_iter: i.max_iter,
            beta: Complex64::new(i.beta_re, i.beta_im),
            solver: i.solver,
            update: i.update.into(),
            hhl: HhlConfig { evolution_time: i.evolution_time, ..HhlConfig::circuit(i.clock_qubits) },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(RunConfig::parse("").unwrap(), RunConfig::default());
        assert_eq!(RunConfig::default().training_lambdas(), default_training_lambdas());
    }

    #[test]
    fn example_file_spells_out_the_defaults() {
        let example = RunConfig::parse(include_str!("../../resonance.example.toml")).unwrap();
        let defaults = RunConfig::default();
        assert_eq!(example.model_spec(), defaults.model_spec());
        assert_eq!(example.target, defaults.target);
        assert_eq!(example.ihhl, defaults.ihhl);
        assert_eq!(example.training_lambdas(), defaults.training_lambdas());
    }

    #[test]
    fn dotted_keys_override() {
        let c = RunConfig::parse("basis.size = 20\nihhl.solver = \"hhl-circuit\"\nihhl.update = \"rayleigh\"\n").unwrap();
        assert_eq!(c.basis.size, 20);
        assert_eq!(c.ihhl_options().solver, SolverKind::HhlCircuit);
        assert_eq!(c.ihhl_options().energy_update(), EnergyUpdate::Rayleigh);
    }

    #[test]
    fn unknown_key_is_rejected() {
        assert!(matches!(RunConfig::parse("basis.sise = 20"), Err(ConfigError::Syntax(_))));
        assert!(matches!(RunConfig::parse("colour = 1"), Err(ConfigError::Syntax(_))));
    }

    #[test]
    fn physical_invariants_are_checked() {
        for bad in ["target.theta_degrees = 50.0", "basis.ratio = 1.0", "ihhl.epsilon = 0.0", "channel.hbar2_over_2mu = -1.0"] {
            assert!(matches!(RunConfig::parse(bad), Err(ConfigError::Invalid(_))), "{bad}");
        }
    }

    #[test]
    fn toml_round_trip() {
        let c = RunConfig::default();
        assert_eq!(RunConfig::parse(&c.to_toml()).unwrap(), c);
    }
}
