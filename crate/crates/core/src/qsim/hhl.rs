use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::circuit::{Circuit, Gate, Operation};
use super::phase::{phase_estimation_circuit, SpectralForm};
use super::{log2_exact, QsimError, QuantumState, MAX_QUBITS};
use crate::linalg::{ComplexMatrix, ComplexVector};

const MIN_SUCCESS_PROBABILITY: f64 = 1e-12;
const SINGULAR_RATIO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HhlMode {
    /// Gate-level statevector simulation.
    Circuit,
    /// Exact `A⁻¹b` from the eigendecomposition.
    Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shots {
    /// Post-selection probability taken from the amplitudes.
    Exact,
    /// Post-selection probability estimated from `count` seeded samples.
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HhlConfig {
    pub clock_qubits: usize,
    /// Defaults to `π(1 − 2^{2−n_c}) / ρ(A)`, leaving the top positive clock
    /// bin free so no eigenvalue wraps into the negative half.
    pub evolution_time: Option<f64>,
    /// Defaults to (and is clamped at) the clock resolution `2π/(2^{n_c} t)`.
    pub rotation_constant: Option<f64>,
    pub mode: HhlMode,
    pub shots: Shots,
}

impl Default for HhlConfig {
    fn default() -> Self {
        Self { clock_qubits: 8, evolution_time: None, rotation_constant: None, mode: HhlMode::Circuit, shots: Shots::Exact }
    }
}

impl HhlConfig {
    pub fn ideal() -> Self {
        Self { mode: HhlMode::Ideal, ..Self::default() }
    }

    pub fn circuit(clock_qubits: usize) -> Self {
        Self { clock_qubits, ..Self::default() }
    }
}

/// Circuit parameters actually used for a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitSettings {
    pub clock_qubits: usize,
    pub evolution_time: f64,
    pub rotation_constant: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HhlSolution {
    pub x: ComplexVector,
    /// Present in circuit mode.
    pub success_probability: Option<f64>,
    pub settings: Option<CircuitSettings>,
}

pub fn default_evolution_time(clock_qubits: usize, spectral_radius: f64) -> f64 {
    let guard = (1.0 - 2f64.powi(2 - clock_qubits as i32)).max(0.5);
    PI * guard / spectral_radius
}

/// Evolution time and rotation constant `cfg` resolves to for a matrix of spectral radius `spectral_radius`.
pub fn resolve_settings(cfg: &HhlConfig, spectral_radius: f64) -> Result<CircuitSettings, QsimError> {
    let n_c = cfg.clock_qubits;
    if n_c == 0 {
        return Err(QsimError::InvalidConfig("clock_qubits must be at least 1".into()));
    }
    if !(spectral_radius > 0.0) {
        return Err(QsimError::Singular);
    }
    let t = cfg.evolution_time.unwrap_or_else(|| default_evolution_time(n_c, spectral_radius));
    if !(t > 0.0) || !t.is_finite() {
        return Err(QsimError::InvalidConfig(format!("evolution_time must be positive, got {t}")));
    }
    if t * spectral_radius >= PI {
        return Err(QsimError::InvalidConfig(format!(
            "evolution_time {t} aliases: t·ρ(A) = {} ≥ π",
            t * spectral_radius
        )));
    }
    let resolution = 2.0 * PI / ((1u64 << n_c) as f64 * t);
    let c = cfg.rotation_constant.unwrap_or(resolution);
    if !(c > 0.0) || !c.is_finite() {
        return Err(QsimError::InvalidConfig(format!("rotation_constant must be positive, got {c}")));
    }
    Ok(CircuitSettings { clock_qubits: n_c, evolution_time: t, rotation_constant: c.min(resolution) })
}

/// Full HHL circuit for `A` on `m = log₂ dim A` system qubits, `n_c` clock
/// qubits above them and the ancilla on top.
pub fn hhl_circuit(spectral: &SpectralForm, settings: &CircuitSettings) -> Result<Circuit, QsimError> {
    let m = log2_exact(spectral.eigenvalues().len())?;
    let n_c = settings.clock_qubits;
    let total = m + n_c + 1;
    if total > MAX_QUBITS {
        return Err(QsimError::TooManyQubits { requested: total, limit: MAX_QUBITS });
    }
    let system: Vec<usize> = (0..m).collect();
    let clock: Vec<usize> = (m..m + n_c).collect();
    let ancilla = m + n_c;
    let t = settings.evolution_time;
    let powers = (0..n_c)
        .map(|j| {
            let tau = t * (1u64 << j) as f64;
            (spectral.evolve(tau), format!("controlled_exp_iAt_pow_{}", 1u64 << j), vec![tau])
        })
        .collect();
    let estimation = phase_estimation_circuit(total, &system, &clock, powers);
    let mut circuit = estimation.clone();
    let mut targets = clock.clone();
    targets.push(ancilla);
    circuit.push(Gate::new(
        Operation::EigenvalueInversion { rotation_constant: settings.rotation_constant, evolution_time: t },
        targets,
    ));
    circuit.extend(&estimation.inverse()?);
    Ok(circuit)
}

pub fn hhl_solve(a: &ComplexMatrix, b: &ComplexVector, cfg: &HhlConfig) -> Result<ComplexVector, QsimError> {
    Ok(hhl_run(a, b, cfg)?.x)
}

/// Solve `A x = b` for Hermitian `A` of power-of-two dimension. The circuit
/// result is scaled back by `‖b‖/C` and read directly off the statevector.
pub fn hhl_run(a: &ComplexMatrix, b: &ComplexVector, cfg: &HhlConfig) -> Result<HhlSolution, QsimError> {
    let spectral = SpectralForm::new(a)?;
    hhl_run_with(&spectral, b, cfg)
}

/// As [`hhl_run`] with a precomputed eigendecomposition of `A`.
pub fn hhl_run_with(spectral: &SpectralForm, b: &ComplexVector, cfg: &HhlConfig) -> Result<HhlSolution, QsimError> {
    let dim = spectral.eigenvalues().len();
    log2_exact(dim)?;
    if b.len() != dim {
        return Err(QsimError::DimensionMismatch { expected: dim, actual: b.len() });
    }
    let b_norm = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if b_norm == 0.0 || !b_norm.is_finite() {
        return Err(QsimError::ZeroRhs);
    }
    let rho = spectral.spectral_radius();
    match cfg.mode {
        HhlMode::Ideal => {
            let smallest = spectral.eigenvalues().iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
            if !(rho > 0.0) || smallest < SINGULAR_RATIO * rho {
                return Err(QsimError::Singular);
            }
            let inverse = spectral.apply_function(|l| Complex64::new(1.0 / l, 0.0));
            Ok(HhlSolution { x: inverse.matvec(b)?, success_probability: None, settings: None })
        }
        HhlMode::Circuit => {
            let settings = resolve_settings(cfg, rho)?;
            let circuit = hhl_circuit(spectral, &settings)?;
            let mut state = QuantumState::normalized(b)?.extended(settings.clock_qubits + 1)?;
            circuit.apply(&mut state)?;
            let ancilla_bit = 1usize << (circuit.num_qubits - 1);
            let amps: Vec<Complex64> = state.amplitudes()[ancilla_bit..ancilla_bit + dim].to_vec();
            let p: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
            if p < MIN_SUCCESS_PROBABILITY {
                return Err(QsimError::PostSelection { probability: p });
            }
            let (estimate, shot_scale) = match cfg.shots {
                Shots::Exact => (p, 1.0),
                Shots::Sampled { count, seed } => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let hits = (0..count).filter(|_| rng.random::<f64>() < p).count();
                    let estimate = hits as f64 / count.max(1) as f64;
                    if estimate < MIN_SUCCESS_PROBABILITY {
                        return Err(QsimError::PostSelection { probability: estimate });
                    }
                    (estimate, (estimate / p).sqrt())
                }
            };
            let scale = shot_scale * b_norm / settings.rotation_constant;
            let x = amps.into_iter().map(|z| z * scale).collect();
            Ok(HhlSolution { x, success_probability: Some(estimate), settings: Some(settings) })
        }
    }
}
