//! Eigenvector continuation: bound ground states at real couplings span a
//! small subspace onto which the complex-scaled Hamiltonian is projected with
//! the c-product.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    generalized_eigen, gram_schmidt, hermitian_eigen, ComplexMatrix, ComplexVector, EigenDecomposition, InnerProduct,
    LinalgError,
};
use crate::physics::{AlphaAlphaModel, PhysicsError, ScalingAngle, REFERENCE_RESONANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EcError {
    #[error("unbound training point: lowest eigenvalue {energy} MeV at lambda = {lambda}")]
    Unbound { lambda: f64, energy: f64 },
    #[error("no training points")]
    Empty,
    #[error("subspace vectors have length {actual}, Hamiltonian has dimension {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Eight couplings evenly spaced over `[1.45, 1.75]`, endpoints included.
pub fn default_training_lambdas() -> Vec<f64> {
    evenly_spaced(1.45, 1.75, 8)
}

/// `count` points from `min` to `max` inclusive; a single point sits at `min`.
pub fn evenly_spaced(min: f64, max: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![min];
    }
    (0..count).map(|i| min + (max - min) * i as f64 / (count - 1) as f64).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingPoint {
    pub lambda: f64,
    /// Ground-state energy, MeV, negative.
    pub energy: f64,
    /// Real, unit norm, largest-magnitude component positive.
    pub wavefunction: ComplexVector,
}

/// Ground states of the unscaled Hamiltonian at each coupling.
pub fn solve_training_set(lambdas: &[f64], model: &AlphaAlphaModel) -> Result<Vec<TrainingPoint>, EcError> {
    lambdas
        .iter()
        .map(|&lambda| {
            let h = model.hamiltonian(lambda, ScalingAngle::ZERO);
            let eig = hermitian_eigen(&h.matrix)?;
            let energy = eig.eigenvalues[0];
            if energy >= 0.0 {
                return Err(EcError::Unbound { lambda, energy });
            }
            Ok(TrainingPoint { lambda, energy, wavefunction: real_ground_state(&eig.eigenvectors.column(0)) })
        })
        .collect()
}

fn real_ground_state(v: &ComplexVector) -> ComplexVector {
    // Eigenvectors of a real symmetric matrix carry at most a global phase.
    let pivot = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap_or_default();
    let phase = if pivot.norm() > 0.0 { pivot.conj() / pivot.norm() } else { Complex64::new(1.0, 0.0) };
    let re: Vec<f64> = v.iter().map(|z| (z * phase).re).collect();
    let norm = re.iter().map(|x| x * x).sum::<f64>().sqrt();
    ComplexVector::from_real(&re.iter().map(|x| x / norm).collect::<Vec<_>>())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ECSubspace {
    /// Orthonormal, real, in training order.
    pub basis_vectors: Vec<ComplexVector>,
    /// Couplings whose vectors survived orthonormalization.
    pub source_lambdas: Vec<f64>,
    /// Non-fatal notes, one per dropped training vector.
    pub warnings: Vec<String>,
}

impl ECSubspace {
    pub fn dimension(&self) -> usize {
        self.basis_vectors.len()
    }

    /// The span of the first `k` vectors.
    pub fn truncated(&self, k: usize) -> Self {
        let k = k.min(self.dimension());
        Self {
            basis_vectors: self.basis_vectors[..k].to_vec(),
            source_lambdas: self.source_lambdas[..k].to_vec(),
            warnings: self.warnings.clone(),
        }
    }

    pub fn gram(&self) -> ComplexMatrix {
        let n = self.dimension();
        ComplexMatrix::from_fn(n, n, |i, j| {
            self.basis_vectors[i].iter().zip(self.basis_vectors[j].iter()).map(|(a, b)| a.conj() * b).sum()
        })
    }
}

pub fn build_subspace(points: &[TrainingPoint]) -> Result<ECSubspace, EcError> {
    if points.is_empty() {
        return Err(EcError::Empty);
    }
    let vectors: Vec<ComplexVector> = points.iter().map(|p| p.wavefunction.clone()).collect();
    let gs = gram_schmidt(&vectors, InnerProduct::Hermitian)?;
    let source_lambdas =
        (0..points.len()).filter(|i| !gs.dropped.contains(i)).map(|i| points[i].lambda).collect();
    let warnings = gs
        .dropped
        .iter()
        .map(|&i| format!("training vector at lambda = {} is linearly dependent and was dropped", points[i].lambda))
        .collect();
    Ok(ECSubspace { basis_vectors: gs.vectors, source_lambdas, warnings })
}

/// `H^{EC}_{ij} = (u_i|H|u_j)` and `N^{EC}_{ij} = (u_i|u_j)`, both c-products.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ECMatrices {
    pub h_ec: ComplexMatrix,
    pub n_ec: ComplexMatrix,
    pub target_lambda: f64,
    pub theta: ScalingAngle,
}

impl ECMatrices {
    pub fn spectrum(&self) -> Result<EigenDecomposition, EcError> {
        Ok(generalized_eigen(&self.h_ec, &self.n_ec)?)
    }

    /// Lowest real eigenvalue; meaningful at `θ = 0`.
    pub fn ground_energy(&self) -> Result<f64, EcError> {
        Ok(self.spectrum()?.eigenvalues[0].re)
    }

    pub fn resonance_candidate(&self, reference: Option<Complex64>) -> Result<Complex64, EcError> {
        let spec = self.spectrum()?;
        Ok(resonance_candidate(&spec, reference.unwrap_or(REFERENCE_RESONANCE)))
    }
}

/// Eigenvalue nearest `reference` in the complex plane.
pub fn resonance_candidate(spectrum: &EigenDecomposition, reference: Complex64) -> Complex64 {
    spectrum.eigenvalues[spectrum.nearest(reference).expect("non-empty spectrum")]
}

pub fn project_target(
    subspace: &ECSubspace,
    model: &AlphaAlphaModel,
    lambda_target: f64,
    theta: ScalingAngle,
) -> Result<ECMatrices, EcError> {
    let h = model.hamiltonian(lambda_target, theta);
    project_matrix(subspace, &h.matrix, lambda_target, theta)
}

/// Project an already-built Hamiltonian.
pub fn project_matrix(
    subspace: &ECSubspace,
    h: &ComplexMatrix,
    lambda_target: f64,
    theta: ScalingAngle,
) -> Result<ECMatrices, EcError> {
    if subspace.dimension() == 0 {
        return Err(EcError::Empty);
    }
    let u = ComplexMatrix::from_columns(&subspace.basis_vectors)?;
    if u.rows() != h.rows() || !h.is_square() {
        return Err(EcError::DimensionMismatch { expected: h.rows(), actual: u.rows() });
    }
    let ut = u.transpose();
    let h_ec = ut.matmul(&h.matmul(&u)?)?;
    let n_ec = ut.matmul(&u)?;
    Ok(ECMatrices { h_ec, n_ec, target_lambda: lambda_target, theta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c_product, dense_eigen};
    use crate::physics::RadialBasis;

    fn model() -> AlphaAlphaModel {
        AlphaAlphaModel::alpha_alpha(RadialBasis::default()).unwrap()
    }

    #[test]
    fn default_grid() {
        let l = default_training_lambdas();
        assert_eq!(l.len(), 8);
        assert_eq!(l[0], 1.45);
        assert!((l[7] - 1.75).abs() < 1e-15);
    }

    #[test]
    fn training_energies_decrease() {
        let m = model();
        let points = solve_training_set(&default_training_lambdas(), &m).unwrap();
        assert!(points.windows(2).all(|w| w[1].energy < w[0].energy));
        for p in &points {
            assert!(p.wavefunction.imag_part().iter().all(|x| x.abs() <= 1e-12));
            let big = p.wavefunction.iter().map(|z| z.re).max_by(|a, b| a.abs().total_cmp(&b.abs())).unwrap();
            assert!(big > 0.0);
        }
        let sub = build_subspace(&points).unwrap();
        assert_eq!(sub.dimension(), 8);
        assert!(sub.gram().sub(&ComplexMatrix::identity(8)).max_abs() <= 1e-12);
    }

    #[test]
    fn single_point_matches_full_diagonalization() {
        let m = model();
        let p = solve_training_set(&[1.75], &m).unwrap();
        let full = hermitian_eigen(&m.hamiltonian(1.75, ScalingAngle::ZERO).matrix).unwrap();
        assert_eq!(p[0].energy, full.eigenvalues[0]);
        let sub = build_subspace(&p).unwrap();
        assert_eq!(sub.dimension(), 1);
        assert!(sub.basis_vectors[0].sub(&p[0].wavefunction).max_abs() < 1e-14);
    }

    #[test]
    fn weak_coupling_is_unbound() {
        assert!(matches!(solve_training_set(&[0.1], &model()), Err(EcError::Unbound { .. })));
    }

    #[test]
    fn duplicate_collapses() {
        let m = model();
        let p = solve_training_set(&[1.6], &m).unwrap();
        let sub = build_subspace(&[p[0].clone(), p[0].clone()]).unwrap();
        assert_eq!(sub.dimension(), 1);
        assert_eq!(sub.warnings.len(), 1);
    }

    #[test]
    fn interpolates_ground_state() {
        let m = model();
        let sub = build_subspace(&solve_training_set(&default_training_lambdas(), &m).unwrap()).unwrap();
        let ec = project_target(&sub, &m, 1.62, ScalingAngle::ZERO).unwrap();
        let full = hermitian_eigen(&m.hamiltonian(1.62, ScalingAngle::ZERO).matrix).unwrap().eigenvalues[0];
        let e = ec.ground_energy().unwrap();
        assert!(e >= full - 1e-9 && e - full < 1e-3, "{e} vs {full}");
    }

    #[test]
    fn resonance_from_projection() {
        let m = model();
        let sub = build_subspace(&solve_training_set(&default_training_lambdas(), &m).unwrap()).unwrap();
        let theta = ScalingAngle::from_degrees(20.0).unwrap();
        let ec = project_target(&sub, &m, 1.0, theta).unwrap();
        assert!(ec.h_ec.symmetry_defect() <= 1e-10);
        assert!(ec.n_ec.sub(&ComplexMatrix::identity(8)).max_abs() <= 1e-12);
        let e_ec = ec.resonance_candidate(None).unwrap();
        let full = dense_eigen(&m.hamiltonian(1.0, theta).matrix).unwrap();
        let e_full = resonance_candidate(&full, REFERENCE_RESONANCE);
        assert!((e_ec.re - 11.8079).abs() < 0.5);
        assert!((e_ec - e_full).norm() / e_full.norm() < 0.01, "{e_ec} vs {e_full}");
    }

    #[test]
    fn one_dimensional_projection_is_expectation() {
        let m = model();
        let p = solve_training_set(&[1.5], &m).unwrap();
        let sub = build_subspace(&p).unwrap();
        let theta = ScalingAngle::from_degrees(20.0).unwrap();
        let h = m.hamiltonian(1.0, theta).matrix;
        let ec = project_matrix(&sub, &h, 1.0, theta).unwrap();
        let v = &sub.basis_vectors[0];
        let expect = c_product(v, &h.matvec(v).unwrap()).unwrap();
        assert!((ec.h_ec[(0, 0)] - expect).norm() < 1e-12 * expect.norm());
    }

    #[test]
    fn mismatched_dimension() {
        let m = model();
        let sub = build_subspace(&solve_training_set(&[1.5], &m).unwrap()).unwrap();
        let h = ComplexMatrix::identity(5);
        assert!(matches!(
            project_matrix(&sub, &h, 1.0, ScalingAngle::ZERO),
            Err(EcError::DimensionMismatch { expected: 5, actual: 30 })
        ));
    }
}
