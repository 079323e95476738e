use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{IhhlError, SolverKind};
use crate::linalg::{linear_solve, ComplexMatrix, ComplexVector};
use crate::qsim::{hhl_run_with, HhlConfig, HhlMode, SpectralForm};

/// `C(E, β) = (H − (E − β)) / β`, whose fixed points are eigenvectors of `H`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedPointOperator {
    pub matrix: ComplexMatrix,
    pub energy_shift: Complex64,
    pub beta: Complex64,
}

pub fn build_c_operator(h: &ComplexMatrix, energy: Complex64, beta: Complex64) -> Result<FixedPointOperator, IhhlError> {
    if beta == Complex64::new(0.0, 0.0) {
        return Err(IhhlError::ZeroBeta);
    }
    if !h.is_square() {
        return Err(IhhlError::DimensionMismatch { expected: h.rows(), actual: h.cols() });
    }
    if !energy.re.is_finite() || !energy.im.is_finite() {
        return Err(IhhlError::NonFinite);
    }
    let matrix = h.shift_diagonal(-(energy - beta)).scale(beta.inv());
    Ok(FixedPointOperator { matrix, energy_shift: energy, beta })
}

/// `A = [[0, C], [C†, 0]]` with right-hand sides `(Re φ, 0)` and `(Im φ, 0)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DilatedSystem {
    pub a_matrix: ComplexMatrix,
    pub rhs_real: Vec<f64>,
    pub rhs_imag: Vec<f64>,
}

pub fn dilate(c: &FixedPointOperator, phi: &ComplexVector) -> Result<DilatedSystem, IhhlError> {
    let n = c.matrix.rows();
    if phi.len() != n {
        return Err(IhhlError::DimensionMismatch { expected: n, actual: phi.len() });
    }
    let adj = c.matrix.adjoint();
    let a_matrix = ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, false) => c.matrix[(i, j - n)],
        (false, true) => adj[(i - n, j)],
        _ => Complex64::new(0.0, 0.0),
    });
    let mut rhs_real = phi.real_part();
    let mut rhs_imag = phi.imag_part();
    rhs_real.resize(2 * n, 0.0);
    rhs_imag.resize(2 * n, 0.0);
    Ok(DilatedSystem { a_matrix, rhs_real, rhs_imag })
}

impl DilatedSystem {
    /// Dimension `N` of the undilated problem.
    pub fn half_dim(&self) -> usize {
        self.a_matrix.rows() / 2
    }

    /// Identity-padded to the next power of two, as the circuit needs.
    pub fn padded_matrix(&self) -> ComplexMatrix {
        let n = self.a_matrix.rows().next_power_of_two();
        self.a_matrix.padded(n, Complex64::new(1.0, 0.0))
    }

    /// `φ*` with `C φ* = φ`: the lower half of each real-part solve,
    /// recombined as `x_re + i x_im`.
    pub fn solve(&self, solver: SolverKind, hhl: &HhlConfig) -> Result<ComplexVector, IhhlError> {
        let n = self.half_dim();
        let padded = self.padded_matrix();
        let dim = padded.rows();
        let spectral = match solver {
            SolverKind::Classical => None,
            _ => Some(SpectralForm::new(&padded)?),
        };
        let mut combined = ComplexVector::zeros(n);
        for (rhs, unit) in [(&self.rhs_real, Complex64::new(1.0, 0.0)), (&self.rhs_imag, Complex64::new(0.0, 1.0))] {
            if rhs.iter().all(|&x| x == 0.0) {
                continue;
            }
            let mut b = ComplexVector::from_real(rhs);
            b = b.resized(dim);
            let x = match (solver, &spectral) {
                (SolverKind::Classical, _) => linear_solve(&self.a_matrix, &ComplexVector::from_real(rhs))?,
                (SolverKind::HhlIdeal, Some(s)) => hhl_run_with(s, &b, &HhlConfig { mode: HhlMode::Ideal, ..*hhl })?.x,
                (SolverKind::HhlCircuit, Some(s)) => hhl_run_with(s, &b, &HhlConfig { mode: HhlMode::Circuit, ..*hhl })?.x,
                _ => unreachable!("spectral form built for quantum solvers"),
            };
            for k in 0..n {
                combined[k] += unit * x[n + k];
            }
        }
        Ok(combined)
    }
}
