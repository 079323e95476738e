use num_complex::Complex64;

use super::QsimError;
use crate::linalg::{ComplexMatrix, ComplexVector};

/// Statevector over `n` qubits. Basis index bit `q` is the value of qubit `q`,
/// so qubit 0 is least significant.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<Complex64>,
    num_qubits: usize,
}

const NORM_TOLERANCE: f64 = 1e-10;

impl QuantumState {
    /// `|0…0⟩`
    pub fn zero(num_qubits: usize) -> Result<Self, QsimError> {
        super::check_register(num_qubits)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes, num_qubits })
    }

    /// Requires unit norm to `1e-10`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, QsimError> {
        let num_qubits = super::log2_exact(amplitudes.len())?;
        super::check_register(num_qubits)?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(QsimError::NotNormalized { norm });
        }
        Ok(Self { amplitudes, num_qubits })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(v: &ComplexVector) -> Result<Self, QsimError> {
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(QsimError::ZeroRhs);
        }
        Self::from_amplitudes(v.iter().map(|a| a / norm).collect())
    }

    /// `self ⊗ |0…0⟩` on `extra` new high qubits.
    pub fn extended(&self, extra: usize) -> Result<Self, QsimError> {
        let num_qubits = self.num_qubits + extra;
        super::check_register(num_qubits)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[..self.amplitudes.len()].copy_from_slice(&self.amplitudes);
        Ok(Self { amplitudes, num_qubits })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_qubit(&self, q: usize) -> Result<(), QsimError> {
        if q >= self.num_qubits {
            return Err(QsimError::QubitOutOfRange { qubit: q, num_qubits: self.num_qubits });
        }
        Ok(())
    }

    fn mask(&self, qubits: &[usize]) -> Result<usize, QsimError> {
        let mut mask = 0;
        for &q in qubits {
            self.check_qubit(q)?;
            if mask & (1 << q) != 0 {
                return Err(QsimError::RepeatedQubit(q));
            }
            mask |= 1 << q;
        }
        Ok(mask)
    }

    /// 2×2 unitary `[[m00, m01], [m10, m11]]` on `target`, active when every
    /// control qubit is 1.
    pub fn apply_single(&mut self, target: usize, m: [[Complex64; 2]; 2], controls: &[usize]) -> Result<(), QsimError> {
        let cmask = self.mask(controls)?;
        let tbit = self.mask(&[target])?;
        if cmask & tbit != 0 {
            return Err(QsimError::RepeatedQubit(target));
        }
        for idx in 0..self.amplitudes.len() {
            if idx & tbit != 0 || idx & cmask != cmask {
                continue;
            }
            let (a, b) = (self.amplitudes[idx], self.amplitudes[idx | tbit]);
            self.amplitudes[idx] = m[0][0] * a + m[0][1] * b;
            self.amplitudes[idx | tbit] = m[1][0] * a + m[1][1] * b;
        }
        Ok(())
    }

    pub fn apply_swap(&mut self, a: usize, b: usize, controls: &[usize]) -> Result<(), QsimError> {
        let cmask = self.mask(controls)?;
        let pair = self.mask(&[a, b])?;
        if cmask & pair != 0 {
            return Err(QsimError::RepeatedQubit(a));
        }
        let (abit, bbit) = (1 << a, 1 << b);
        for idx in 0..self.amplitudes.len() {
            if idx & cmask == cmask && idx & abit != 0 && idx & bbit == 0 {
                self.amplitudes.swap(idx, idx ^ abit ^ bbit);
            }
        }
        Ok(())
    }

    /// Dense unitary on `targets`; row/column bit `r` of `matrix` is qubit `targets[r]`.
    pub fn apply_unitary(&mut self, targets: &[usize], matrix: &ComplexMatrix, controls: &[usize]) -> Result<(), QsimError> {
        let dim = 1usize << targets.len();
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(QsimError::DimensionMismatch { expected: dim, actual: matrix.rows() });
        }
        let tmask = self.mask(targets)?;
        let cmask = self.mask(controls)?;
        if tmask & cmask != 0 {
            return Err(QsimError::RepeatedQubit(controls[0]));
        }
        let offsets: Vec<usize> = (0..dim)
            .map(|local| targets.iter().enumerate().filter(|(r, _)| local >> r & 1 == 1).map(|(_, &q)| 1 << q).sum())
            .collect();
        let m = matrix.data();
        let mut gathered = vec![Complex64::new(0.0, 0.0); dim];
        for base in 0..self.amplitudes.len() {
            if base & tmask != 0 || base & cmask != cmask {
                continue;
            }
            for (slot, off) in gathered.iter_mut().zip(&offsets) {
                *slot = self.amplitudes[base | off];
            }
            for (row, off) in offsets.iter().enumerate() {
                self.amplitudes[base | off] = (0..dim).map(|col| m[row * dim + col] * gathered[col]).sum();
            }
        }
        Ok(())
    }

    /// Ry on `ancilla` with an angle chosen per basis state from the value of
    /// the `register` qubits (little-endian).
    pub fn apply_register_controlled_ry(
        &mut self,
        register: &[usize],
        ancilla: usize,
        angle: impl Fn(usize) -> f64,
    ) -> Result<(), QsimError> {
        let rmask = self.mask(register)?;
        let abit = self.mask(&[ancilla])?;
        if rmask & abit != 0 {
            return Err(QsimError::RepeatedQubit(ancilla));
        }
        for idx in 0..self.amplitudes.len() {
            if idx & abit != 0 {
                continue;
            }
            let value = register.iter().enumerate().map(|(r, &q)| (idx >> q & 1) << r).sum();
            let theta = angle(value);
            if theta == 0.0 {
                continue;
            }
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            let (a, b) = (self.amplitudes[idx], self.amplitudes[idx | abit]);
            self.amplitudes[idx] = a * c - b * s;
            self.amplitudes[idx | abit] = a * s + b * c;
        }
        Ok(())
    }

    /// Probability distribution of the little-endian value held in `register`.
    pub fn register_distribution(&self, register: &[usize]) -> Result<Vec<f64>, QsimError> {
        self.mask(register)?;
        let mut probs = vec![0.0; 1 << register.len()];
        for (idx, a) in self.amplitudes.iter().enumerate() {
            let value: usize = register.iter().enumerate().map(|(r, &q)| (idx >> q & 1) << r).sum();
            probs[value] += a.norm_sqr();
        }
        Ok(probs)
    }
}
