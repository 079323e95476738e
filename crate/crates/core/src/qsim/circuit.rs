use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{QsimError, QuantumState};
use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, PartialEq)]
pub enum Operation {
    H,
    X,
    Y,
    Z,
    /// `diag(1, e^{iφ})`
    Phase(f64),
    /// `exp(−iθY/2)`
    Ry(f64),
    Swap,
    /// Dense unitary on the targets; `label` and `params` only annotate the export.
    Unitary { matrix: ComplexMatrix, label: String, params: Vec<f64> },
    /// Ancilla rotation `Ry(2 arcsin(C/λ̃))` with `λ̃` decoded from the clock
    /// register in two's complement; targets are the clock qubits then the ancilla.
    EigenvalueInversion { rotation_constant: f64, evolution_time: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub op: Operation,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
}

/// Serialized gate: `{gate, targets, controls, params}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub gate: String,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
    pub params: Vec<f64>,
}

/// Signed eigenvalue estimate for clock value `k` of an `n_c`-qubit register.
pub fn decode_clock(k: usize, clock_qubits: usize, evolution_time: f64) -> f64 {
    let n = 1usize << clock_qubits;
    let signed = if k < n / 2 { k as f64 } else { k as f64 - n as f64 };
    2.0 * PI * signed / (n as f64 * evolution_time)
}

impl Gate {
    pub fn new(op: Operation, targets: Vec<usize>) -> Self {
        Self { op, targets, controls: Vec::new() }
    }

    pub fn controlled(op: Operation, targets: Vec<usize>, controls: Vec<usize>) -> Self {
        Self { op, targets, controls }
    }

    fn single(&self) -> Option<[[Complex64; 2]; 2]> {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Some(match self.op {
            Operation::H => [[h, h], [h, -h]],
            Operation::X => [[z, one], [one, z]],
            Operation::Y => [[z, -i], [i, z]],
            Operation::Z => [[one, z], [z, -one]],
            Operation::Phase(phi) => [[one, z], [z, Complex64::from_polar(1.0, phi)]],
            Operation::Ry(theta) => {
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                [[Complex64::new(c, 0.0), Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), Complex64::new(c, 0.0)]]
            }
            _ => return None,
        })
    }

    pub fn apply(&self, state: &mut QuantumState) -> Result<(), QsimError> {
        if let Some(m) = self.single() {
            let [target] = self.targets[..] else {
                return Err(QsimError::Arity { gate: self.name(), expected: 1, actual: self.targets.len() });
            };
            return state.apply_single(target, m, &self.controls);
        }
        match &self.op {
            Operation::Swap => {
                let [a, b] = self.targets[..] else {
                    return Err(QsimError::Arity { gate: self.name(), expected: 2, actual: self.targets.len() });
                };
                state.apply_swap(a, b, &self.controls)
            }
            Operation::Unitary { matrix, .. } => state.apply_unitary(&self.targets, matrix, &self.controls),
            Operation::EigenvalueInversion { rotation_constant, evolution_time } => {
                let Some((&ancilla, clock)) = self.targets.split_last() else {
                    return Err(QsimError::Arity { gate: self.name(), expected: 2, actual: 0 });
                };
                if !self.controls.is_empty() {
                    return Err(QsimError::InvalidConfig("eigenvalue inversion takes no controls".into()));
                }
                let n_c = clock.len();
                let (c, t) = (*rotation_constant, *evolution_time);
                state.apply_register_controlled_ry(clock, ancilla, |k| {
                    let lambda = decode_clock(k, n_c, t);
                    if lambda == 0.0 {
                        0.0
                    } else {
                        2.0 * (c / lambda).clamp(-1.0, 1.0).asin()
                    }
                })
            }
            _ => unreachable!("single-qubit gates handled above"),
        }
    }

    pub fn name(&self) -> String {
        match &self.op {
            Operation::H => "h".into(),
            Operation::X => "x".into(),
            Operation::Y => "y".into(),
            Operation::Z => "z".into(),
            Operation::Phase(_) => "phase".into(),
            Operation::Ry(_) => "ry".into(),
            Operation::Swap => "swap".into(),
            Operation::Unitary { label, .. } => label.clone(),
            Operation::EigenvalueInversion { .. } => "eigenvalue_inversion".into(),
        }
    }

    pub fn record(&self) -> GateRecord {
        let params = match &self.op {
            Operation::Phase(a) | Operation::Ry(a) => vec![*a],
            Operation::Unitary { params, .. } => params.clone(),
            Operation::EigenvalueInversion { rotation_constant, evolution_time } => vec![*rotation_constant, *evolution_time],
            _ => Vec::new(),
        };
        GateRecord { gate: self.name(), targets: self.targets.clone(), controls: self.controls.clone(), params }
    }

    /// Adjoint gate.
    pub fn inverse(&self) -> Result<Self, QsimError> {
        let op = match &self.op {
            Operation::Phase(a) => Operation::Phase(-a),
            Operation::Ry(a) => Operation::Ry(-a),
            Operation::Unitary { matrix, label, params } => {
                Operation::Unitary { matrix: matrix.adjoint(), label: format!("{label}_dg"), params: params.clone() }
            }
            Operation::EigenvalueInversion { .. } => {
                return Err(QsimError::InvalidConfig("eigenvalue inversion is not inverted in these circuits".into()))
            }
            other => other.clone(),
        };
        Ok(Self { op, targets: self.targets.clone(), controls: self.controls.clone() })
    }
}

/// Ordered gate list on a fixed register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self { num_qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn extend(&mut self, other: &Circuit) -> &mut Self {
        self.gates.extend(other.gates.iter().cloned());
        self
    }

    pub fn inverse(&self) -> Result<Self, QsimError> {
        let gates = self.gates.iter().rev().map(Gate::inverse).collect::<Result<_, _>>()?;
        Ok(Self { num_qubits: self.num_qubits, gates })
    }

    pub fn apply(&self, state: &mut QuantumState) -> Result<(), QsimError> {
        if state.num_qubits() != self.num_qubits {
            return Err(QsimError::DimensionMismatch { expected: self.num_qubits, actual: state.num_qubits() });
        }
        self.gates.iter().try_for_each(|g| g.apply(state))
    }

    pub fn records(&self) -> Vec<GateRecord> {
        self.gates.iter().map(Gate::record).collect()
    }

    /// Pretty JSON gate list. Qubit 0 is the least significant bit of a basis index.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records()).expect("gate records serialize")
    }

    /// Full unitary, built column by column; small registers only.
    pub fn unitary(&self) -> Result<ComplexMatrix, QsimError> {
        let dim = 1usize << self.num_qubits;
        let mut columns = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut amps = vec![Complex64::new(0.0, 0.0); dim];
            amps[k] = Complex64::new(1.0, 0.0);
            let mut s = QuantumState::from_amplitudes(amps)?;
            self.apply(&mut s)?;
            columns.push(s.amplitudes().to_vec());
        }
        Ok(ComplexMatrix::from_fn(dim, dim, |r, c| columns[c][r]))
    }
}

/// `|x⟩ → 2^{-n/2} Σ_k e^{2πi xk/2^n} |k⟩` on `qubits` (little-endian).
pub fn qft(num_qubits: usize, qubits: &[usize]) -> Circuit {
    let n = qubits.len();
    let mut c = Circuit::new(num_qubits);
    for b in (0..n).rev() {
        c.push(Gate::new(Operation::H, vec![qubits[b]]));
        for ctl in (0..b).rev() {
            let angle = 2.0 * PI / (1u64 << (b - ctl + 1)) as f64;
            c.push(Gate::controlled(Operation::Phase(angle), vec![qubits[b]], vec![qubits[ctl]]));
        }
    }
    for i in 0..n / 2 {
        c.push(Gate::new(Operation::Swap, vec![qubits[i], qubits[n - 1 - i]]));
    }
    c
}

pub fn inverse_qft(num_qubits: usize, qubits: &[usize]) -> Circuit {
    qft(num_qubits, qubits).inverse().expect("qft has no irreversible gates")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qft_matches_dft() {
        for n in 1..=4 {
            let qubits: Vec<usize> = (0..n).collect();
            let u = qft(n, &qubits).unitary().unwrap();
            let dim = 1 << n;
            for r in 0..dim {
                for col in 0..dim {
                    let expected = Complex64::from_polar(1.0 / (dim as f64).sqrt(), 2.0 * PI * (r * col) as f64 / dim as f64);
                    assert!((u[(r, col)] - expected).norm() < 1e-12, "n={n} ({r},{col})");
                }
            }
        }
    }

    #[test]
    fn inverse_qft_undoes_qft() {
        let qubits = [0, 1, 2];
        let mut c = qft(3, &qubits);
        c.extend(&inverse_qft(3, &qubits));
        let u = c.unitary().unwrap();
        assert!(u.sub(&ComplexMatrix::identity(8)).max_abs() < 1e-12);
    }

    #[test]
    fn clock_decoding_is_twos_complement() {
        let t = 2.0 * PI / 8.0;
        assert_eq!(decode_clock(1, 3, t), 1.0);
        assert_eq!(decode_clock(3, 3, t), 3.0);
        assert_eq!(decode_clock(4, 3, t), -4.0);
        assert_eq!(decode_clock(7, 3, t), -1.0);
    }

    #[test]
    fn gate_records_serialize() {
        let mut c = Circuit::new(2);
        c.push(Gate::controlled(Operation::Ry(0.5), vec![1], vec![0]));
        let json = c.to_json();
        let back: Vec<GateRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![GateRecord { gate: "ry".into(), targets: vec![1], controls: vec![0], params: vec![0.5] }]);
    }
}
