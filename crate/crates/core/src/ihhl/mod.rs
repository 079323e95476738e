//! Iterative HHL: inverse iteration on the fixed-point operator
//! `C(E, β) = (H − (E − β))/β`, each linear solve routed through the
//! Hermitian dilation so an HHL backend can perform it.

mod deflation;
mod iterate;
mod operator;
mod trace;

pub use deflation::{deflate, DeflationSet};
pub use iterate::{full_spectrum, ihhl_solve, ihhl_step, IhhlResult, Spectrum, StepOutcome};
pub use operator::{build_c_operator, dilate, DilatedSystem, FixedPointOperator};
pub use trace::{BetaAdjustment, IterationTrace, TraceStatus};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::LinalgError;
use crate::qsim::{HhlConfig, QsimError};

/// Backend for the linear solve in each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    /// LU on the dilated system.
    Classical,
    /// Exact inversion through the eigendecomposition of the dilated system.
    HhlIdeal,
    /// Gate-level HHL simulation.
    HhlCircuit,
}

impl SolverKind {
    pub const ALL: [SolverKind; 3] = [SolverKind::Classical, SolverKind::HhlIdeal, SolverKind::HhlCircuit];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Classical => "classical",
            SolverKind::HhlIdeal => "hhl-ideal",
            SolverKind::HhlCircuit => "hhl-circuit",
        }
    }

    /// Shift-invert for exact solvers; the circuit's small scale errors
    /// pollute that formula, so it gets the Rayleigh quotient.
    pub fn default_update(self) -> EnergyUpdate {
        match self {
            SolverKind::HhlCircuit => EnergyUpdate::Rayleigh,
            _ => EnergyUpdate::ShiftInvert,
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown solver {s:?} (expected classical, hhl-ideal or hhl-circuit)"))
    }
}

/// Rule producing `E*` from the step `C(E, β) φ* = φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyUpdate {
    /// `E* = E − β + β (φ|φ)/(φ|φ*)` with the unnormalized `φ*`.
    ShiftInvert,
    /// `E* = (φ*|H|φ*)/(φ*|φ*)`
    Rayleigh,
}

impl EnergyUpdate {
    pub fn as_str(self) -> &'static str {
        match self {
            EnergyUpdate::ShiftInvert => "shift-invert",
            EnergyUpdate::Rayleigh => "rayleigh",
        }
    }
}

impl fmt::Display for EnergyUpdate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EnergyUpdate {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "shift-invert" => Ok(EnergyUpdate::ShiftInvert),
            "rayleigh" => Ok(EnergyUpdate::Rayleigh),
            _ => Err(format!("unknown energy update {s:?} (expected shift-invert or rayleigh)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IhhlOptions {
    /// Stop once `|E_{k+1} − E_k| < epsilon`, MeV.
    pub epsilon: f64,
    pub max_iter: usize,
    pub beta: Complex64,
    pub solver: SolverKind,
    /// `None` picks [`SolverKind::default_update`].
    pub update: Option<EnergyUpdate>,
    /// Circuit parameters; `mode` is overridden by `solver`.
    pub hhl: HhlConfig,
}

impl Default for IhhlOptions {
    fn default() -> Self {
        Self {
            epsilon: 1e-4,
            max_iter: 100,
            beta: Complex64::new(1.0, 0.0),
            solver: SolverKind::Classical,
            update: None,
            hhl: HhlConfig::default(),
        }
    }
}

impl IhhlOptions {
    pub fn with_solver(solver: SolverKind) -> Self {
        Self { solver, ..Self::default() }
    }

    pub fn energy_update(&self) -> EnergyUpdate {
        self.update.unwrap_or_else(|| self.solver.default_update())
    }
}

#[derive(Debug, Clone, Error)]
pub enum IhhlError {
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("epsilon must be positive")]
    BadEpsilon,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("starting vector vanishes after deflation")]
    ZeroSeed,
    #[error("c-norm {c_norm:.3e} is quasi-null: exceptional point")]
    ExceptionalPoint { c_norm: f64 },
    #[error("non-finite iterate or energy")]
    NonFinite,
    #[error("fixed-point operator stayed singular after moving beta to {beta}")]
    SingularShift { beta: Complex64 },
    #[error("eigenpair {index}: {value} duplicates an earlier eigenvalue {existing}; deflation failed")]
    DuplicateEigenvalue { index: usize, value: Complex64, existing: Complex64 },
    #[error("eigenpair {index} did not converge ({status:?}); {} earlier pairs retained", partial.len())]
    Incomplete { index: usize, status: TraceStatus, partial: Vec<IhhlResult>, trace: Box<IterationTrace> },
    #[error("{0} seeds given for a {1}-dimensional problem")]
    TooManySeeds(usize, usize),
    #[error("trace export failed: {0}")]
    Export(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Qsim(#[from] QsimError),
}
