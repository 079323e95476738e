use num_complex::Complex64;

use super::circuit::{inverse_qft, Circuit, Gate, Operation};
use super::{QsimError, QuantumState};
use crate::linalg::{hermitian_eigen, ComplexMatrix, HermitianEigen};

const HERMITIAN_TOLERANCE: f64 = 1e-10;
const UNITARY_TOLERANCE: f64 = 1e-10;

pub(crate) fn require_hermitian(h: &ComplexMatrix) -> Result<(), QsimError> {
    if !h.is_square() {
        return Err(QsimError::DimensionMismatch { expected: h.rows(), actual: h.cols() });
    }
    let defect = h.hermiticity_defect();
    if defect > HERMITIAN_TOLERANCE {
        return Err(QsimError::NotHermitian { defect });
    }
    Ok(())
}

/// Cached eigendecomposition for repeated `e^{iHt}`.
#[derive(Debug, Clone)]
pub struct SpectralForm {
    eig: HermitianEigen,
}

impl SpectralForm {
    pub fn new(h: &ComplexMatrix) -> Result<Self, QsimError> {
        require_hermitian(h)?;
        Ok(Self { eig: hermitian_eigen(h)? })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eig.eigenvectors
    }

    /// Largest eigenvalue magnitude.
    pub fn spectral_radius(&self) -> f64 {
        self.eig.eigenvalues.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `Σ_k f(λ_k) v_k v_k†`
    pub fn apply_function(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let v = &self.eig.eigenvectors;
        let n = v.rows();
        let d: Vec<Complex64> = self.eig.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * d[k] * v[(j, k)].conj()).sum())
    }

    pub fn evolve(&self, t: f64) -> ComplexMatrix {
        self.apply_function(|l| Complex64::from_polar(1.0, l * t))
    }
}

/// `e^{iHt}` by eigendecomposition.
pub fn evolve_unitary(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix, QsimError> {
    Ok(SpectralForm::new(h)?.evolve(t))
}

pub(crate) fn require_unitary(u: &ComplexMatrix) -> Result<(), QsimError> {
    if !u.is_square() {
        return Err(QsimError::DimensionMismatch { expected: u.rows(), actual: u.cols() });
    }
    let n = u.rows();
    let defect = u.adjoint().matmul(u)?.sub(&ComplexMatrix::identity(n)).max_abs();
    if defect > UNITARY_TOLERANCE {
        return Err(QsimError::NotUnitary { defect });
    }
    Ok(())
}

fn matrix_power(u: &ComplexMatrix, exponent: usize) -> ComplexMatrix {
    let mut result = ComplexMatrix::identity(u.rows());
    let mut base = u.clone();
    let mut e = exponent;
    while e > 0 {
        if e & 1 == 1 {
            result = result.matmul(&base).expect("square");
        }
        base = base.matmul(&base).expect("square");
        e >>= 1;
    }
    result
}

/// Phase-estimation circuit on `system` qubits and a clock register:
/// Hadamards, controlled `powers[j]` on clock qubit `j`, inverse QFT.
pub(crate) fn phase_estimation_circuit(
    num_qubits: usize,
    system: &[usize],
    clock: &[usize],
    powers: Vec<(ComplexMatrix, String, Vec<f64>)>,
) -> Circuit {
    let mut c = Circuit::new(num_qubits);
    for &q in clock {
        c.push(Gate::new(Operation::H, vec![q]));
    }
    for (&q, (matrix, label, params)) in clock.iter().zip(powers) {
        c.push(Gate::controlled(Operation::Unitary { matrix, label, params }, system.to_vec(), vec![q]));
    }
    c.extend(&inverse_qft(num_qubits, clock));
    c
}

/// Distribution of the `clock`-qubit phase register after phase estimation of
/// `u` on `state`. Entry `k` estimates the eigenphase `k / 2^{clock}` turns.
pub fn qpe(u: &ComplexMatrix, state: &QuantumState, clock: usize) -> Result<Vec<f64>, QsimError> {
    require_unitary(u)?;
    if u.rows() != state.amplitudes().len() {
        return Err(QsimError::DimensionMismatch { expected: u.rows(), actual: state.amplitudes().len() });
    }
    if clock == 0 {
        return Err(QsimError::InvalidConfig("phase estimation needs at least one clock qubit".into()));
    }
    let m = state.num_qubits();
    let full = state.extended(clock)?;
    let system: Vec<usize> = (0..m).collect();
    let clock_qubits: Vec<usize> = (m..m + clock).collect();
    let powers = (0..clock)
        .map(|j| (matrix_power(u, 1 << j), format!("controlled_u_pow_{}", 1u64 << j), vec![(1u64 << j) as f64]))
        .collect();
    let circuit = phase_estimation_circuit(m + clock, &system, &clock_qubits, powers);
    let mut s = full;
    circuit.apply(&mut s)?;
    s.register_distribution(&clock_qubits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_for_pi_is_minus_identity() {
        let z = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
        let u = evolve_unitary(&z, std::f64::consts::PI).unwrap();
        assert!(u.add(&ComplexMatrix::identity(2)).max_abs() < 1e-14);
        let u0 = evolve_unitary(&z, 0.0).unwrap();
        assert!(u0.sub(&ComplexMatrix::identity(2)).max_abs() < 1e-15);
    }

    #[test]
    fn dyadic_phase_is_point_mass() {
        let u = ComplexMatrix::diagonal(&[Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 0.25)]);
        let one = QuantumState::from_amplitudes(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        let dist = qpe(&u, &one, 3).unwrap();
        assert!((dist[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_gives_zero_phase() {
        let s = QuantumState::from_amplitudes(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        let dist = qpe(&ComplexMatrix::identity(2), &s, 4).unwrap();
        assert!((dist[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_unitary() {
        let s = QuantumState::zero(1).unwrap();
        let m = ComplexMatrix::from_real_rows(&[&[2.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(qpe(&m, &s, 2), Err(QsimError::NotUnitary { .. })));
    }
}
