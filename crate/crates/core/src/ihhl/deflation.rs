use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::IhhlError;
use crate::linalg::{c_normalize, c_product, ComplexVector, LinalgError, Tolerances};

const QUASI_NULL: f64 = 1e-10;

/// Eigenpairs already found, vectors c-normalized.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct DeflationSet {
    pub eigenvectors: Vec<ComplexVector>,
    pub eigenvalues: Vec<Complex64>,
}

impl DeflationSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.eigenvectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvectors.is_empty()
    }

    pub fn push(&mut self, eigenvalue: Complex64, eigenvector: &ComplexVector) -> Result<(), IhhlError> {
        let v = c_normalize(eigenvector, &Tolerances::default()).map_err(|e| match e {
            LinalgError::QuasiNull { c_norm_sq } => IhhlError::ExceptionalPoint { c_norm: c_norm_sq },
            other => other.into(),
        })?;
        self.eigenvectors.push(v);
        self.eigenvalues.push(eigenvalue);
        Ok(())
    }
}

/// `φ − Σ v (v|φ)/(v|v)` over the set, c-products throughout.
pub fn deflate(phi: &ComplexVector, set: &DeflationSet) -> Result<ComplexVector, IhhlError> {
    let mut out = phi.clone();
    for v in &set.eigenvectors {
        let vv = c_product(v, v)?;
        let scale = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if vv.norm() < QUASI_NULL * scale {
            return Err(IhhlError::ExceptionalPoint { c_norm: vv.norm() / scale });
        }
        let coeff = c_product(v, &out)? / vv;
        out = out.axpy(-coeff, v);
    }
    Ok(out)
}
