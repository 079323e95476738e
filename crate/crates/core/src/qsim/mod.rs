//! Statevector simulation: gates and circuits, phase estimation, HHL, and
//! Pauli-string utilities. Qubit 0 is the least significant bit of a basis
//! index throughout.

mod circuit;
mod hhl;
mod pauli;
mod phase;
mod state;

pub use circuit::{decode_clock, inverse_qft, qft, Circuit, Gate, GateRecord, Operation};
pub use hhl::{
    default_evolution_time, hhl_circuit, hhl_run, hhl_run_with, hhl_solve, resolve_settings, CircuitSettings, HhlConfig, HhlMode, HhlSolution,
    Shots,
};
pub use pauli::{
    annihilation, creation, jordan_wigner, multiply as multiply_pauli, pauli_decompose, pauli_to_matrix, trotter_evolution, Pauli,
    PauliTerm,
};
pub use phase::{evolve_unitary, qpe, SpectralForm};
pub use state::QuantumState;

use thiserror::Error;

use crate::linalg::LinalgError;

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QsimError {
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("{requested} qubits requested, limit is {limit}")]
    TooManyQubits { requested: usize, limit: usize },
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("qubit {0} used twice in one gate")]
    RepeatedQubit(usize),
    #[error("gate {gate} expects {expected} targets, got {actual}")]
    Arity { gate: String, expected: usize, actual: usize },
    #[error("state norm {norm} differs from 1")]
    NotNormalized { norm: f64 },
    #[error("matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },
    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("right-hand side is zero")]
    ZeroRhs,
    #[error("matrix is singular")]
    Singular,
    #[error("post-selection probability {probability:.3e} too small")]
    PostSelection { probability: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid Pauli word {0:?}")]
    InvalidPauliWord(String),
    #[error("mode {mode} out of range for {n_modes} modes")]
    ModeOutOfRange { mode: usize, n_modes: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub(crate) fn log2_exact(dim: usize) -> Result<usize, QsimError> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(QsimError::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

pub(crate) fn check_register(num_qubits: usize) -> Result<(), QsimError> {
    if num_qubits > MAX_QUBITS {
        return Err(QsimError::TooManyQubits { requested: num_qubits, limit: MAX_QUBITS });
    }
    Ok(())
}
