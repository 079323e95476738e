use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::basis::{ln_gamma, PrimitiveElements, RadialBasis};
use super::quadrature::GaussLegendre;
use super::{ChannelSpec, PhysicsError, PotentialParams, ScalingAngle};
use crate::linalg::{hermitian_eigen, ComplexMatrix};

const QUADRATURE_ORDER: usize = 20;
const QUADRATURE_PANELS: usize = 10;
/// Integrate each element out to where its Gaussian envelope is `e^{-60}`.
const ENVELOPE_EXPONENT: f64 = 60.0;
const QUADRATURE_TOLERANCE: f64 = 1e-8;
const MIN_OVERLAP_EIGENVALUE: f64 = 1e-12;

/// `H^θ(λ)` in the orthonormalized basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScaledHamiltonian {
    pub matrix: ComplexMatrix,
    pub lambda: f64,
    pub theta: ScalingAngle,
}

/// Worst disagreement between closed-form elements and direct quadrature,
/// measured relative to `√|D_ii D_jj|` of the same term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureReport {
    pub kinetic: f64,
    pub coulomb: f64,
    pub potential: f64,
}

impl QuadratureReport {
    pub fn worst(&self) -> f64 {
        self.kinetic.max(self.coulomb).max(self.potential)
    }
}

/// Precomputed pieces of `e^{−2iθ}T + λV(re^{iθ}) + e^{−iθ}V_C` for one
/// channel and basis; only the potential depends on `θ`.
#[derive(Debug, Clone)]
pub struct AlphaAlphaModel {
    v0: f64,
    range: f64,
    channel: ChannelSpec,
    basis: RadialBasis,
    primitive: PrimitiveElements,
    /// `S^{−1/2}`, real symmetric.
    orthonormalizer: ComplexMatrix,
    kinetic: ComplexMatrix,
    coulomb: ComplexMatrix,
}

impl AlphaAlphaModel {
    pub fn new(v0: f64, range: f64, channel: ChannelSpec, basis: RadialBasis) -> Result<Self, PhysicsError> {
        PotentialParams::new(v0, range, 1.0)?;
        ChannelSpec::new(channel.l, channel.hbar2_over_2mu, channel.coulomb_strength)?;
        let primitive = PrimitiveElements::new(&basis, &channel)?;
        let orthonormalizer = inverse_sqrt(&primitive.overlap)?;
        let kinetic = congruence(&orthonormalizer, &primitive.kinetic);
        let coulomb = congruence(&orthonormalizer, &primitive.coulomb);
        Ok(Self { v0, range, channel, basis, primitive, orthonormalizer, kinetic, coulomb })
    }

    pub fn alpha_alpha(basis: RadialBasis) -> Result<Self, PhysicsError> {
        let p = PotentialParams::alpha_alpha(1.0);
        Self::new(p.v0, p.range, ChannelSpec::alpha_alpha_g_wave(), basis)
    }

    pub fn dim(&self) -> usize {
        self.primitive.dim()
    }

    pub fn channel(&self) -> &ChannelSpec {
        &self.channel
    }

    pub fn basis(&self) -> &RadialBasis {
        &self.basis
    }

    /// Unscaled kinetic matrix in the orthonormal basis.
    pub fn kinetic(&self) -> &ComplexMatrix {
        &self.kinetic
    }

    /// Potential matrix at unit coupling, `V(re^{iθ})`.
    pub fn potential(&self, theta: ScalingAngle) -> ComplexMatrix {
        let prim = self.primitive.gaussian_potential(self.v0, self.range, theta.rotation());
        congruence(&self.orthonormalizer, &prim)
    }

    pub fn hamiltonian(&self, lambda: f64, theta: ScalingAngle) -> ScaledHamiltonian {
        let rot = theta.rotation();
        let kinetic_phase = (rot * rot).inv();
        let coulomb_phase = rot.inv();
        let v = self.potential(theta);
        let n = self.dim();
        let matrix = ComplexMatrix::from_fn(n, n, |i, j| {
            self.kinetic[(i, j)] * kinetic_phase + v[(i, j)] * lambda + self.coulomb[(i, j)] * coulomb_phase
        });
        ScaledHamiltonian { matrix, lambda, theta }
    }

    /// As [`hamiltonian`](Self::hamiltonian), after cross-checking every
    /// primitive element against quadrature.
    pub fn hamiltonian_checked(&self, lambda: f64, theta: ScalingAngle) -> Result<ScaledHamiltonian, PhysicsError> {
        self.check_quadrature(theta)?;
        Ok(self.hamiltonian(lambda, theta))
    }

    /// Compare closed forms with composite Gauss–Legendre along real `r`,
    /// the potential taken at the rotated coordinate.
    pub fn check_quadrature(&self, theta: ScalingAngle) -> Result<QuadratureReport, PhysicsError> {
        let gl = GaussLegendre::new(QUADRATURE_ORDER);
        let prim = &self.primitive;
        let a = &prim.exponents;
        let l = prim.l as f64;
        let n = prim.dim();
        let rot = theta.rotation();
        let potential = prim.gaussian_potential(self.v0, self.range, rot);
        let params = PotentialParams { v0: self.v0, range: self.range, lambda: 1.0 };
        let h2m = self.channel.hbar2_over_2mu;
        let z = self.channel.coulomb_strength;
        let log_norms: Vec<f64> = a.iter().map(|&ak| log_norm(l, ak)).collect();
        let u = |k: usize, r: f64| (log_norms[k] + (l + 1.0) * r.ln() - a[k] * r * r).exp();

        let mut report = QuadratureReport { kinetic: 0.0, coulomb: 0.0, potential: 0.0 };
        let scale = |m: &ComplexMatrix, i: usize, j: usize| (m[(i, i)].norm() * m[(j, j)].norm()).sqrt().max(f64::MIN_POSITIVE);
        for i in 0..n {
            for j in i..n {
                let p = a[i] + a[j];
                let reach = (ENVELOPE_EXPONENT / p).sqrt();
                let kin = gl.integrate(0.0, reach, QUADRATURE_PANELS, |r| {
                    let t_uj = (2.0 * a[j] * (2.0 * l + 3.0) - 4.0 * a[j] * a[j] * r * r) * u(j, r);
                    Complex64::new(h2m * u(i, r) * t_uj, 0.0)
                });
                let coul = gl.integrate(0.0, reach, QUADRATURE_PANELS, |r| Complex64::new(z * u(i, r) * u(j, r) / r, 0.0));
                let pot_reach = (ENVELOPE_EXPONENT / (p + (rot * rot).re / (self.range * self.range))).sqrt();
                let pot = gl.integrate(0.0, pot_reach, QUADRATURE_PANELS, |r| {
                    super::gaussian_potential(rot * r, &params) * (u(i, r) * u(j, r))
                });
                let errors = [
                    ("kinetic", (kin - prim.kinetic[(i, j)]).norm() / scale(&prim.kinetic, i, j)),
                    ("coulomb", (coul - prim.coulomb[(i, j)]).norm() / scale(&prim.coulomb, i, j)),
                    ("potential", (pot - potential[(i, j)]).norm() / scale(&potential, i, j)),
                ];
                report.kinetic = report.kinetic.max(errors[0].1);
                report.coulomb = report.coulomb.max(errors[1].1);
                report.potential = report.potential.max(errors[2].1);
                for (term, error) in errors {
                    if !(error <= QUADRATURE_TOLERANCE) {
                        return Err(PhysicsError::Quadrature { term, i, j, error });
                    }
                }
            }
        }
        Ok(report)
    }
}

fn log_norm(l: f64, a: f64) -> f64 {
    -0.5 * (ln_gamma(l + 1.5) - (2.0f64).ln() - (l + 1.5) * (2.0 * a).ln())
}

/// `S^{−1/2}` for a real symmetric positive-definite overlap.
fn inverse_sqrt(overlap: &ComplexMatrix) -> Result<ComplexMatrix, PhysicsError> {
    let eig = hermitian_eigen(overlap)?;
    let smallest = eig.eigenvalues[0];
    if !(smallest > MIN_OVERLAP_EIGENVALUE * eig.eigenvalues[eig.eigenvalues.len() - 1]) {
        return Err(PhysicsError::BasisIllConditioned { smallest });
    }
    let n = overlap.rows();
    let u = &eig.eigenvectors;
    let inv_sqrt: Vec<f64> = eig.eigenvalues.iter().map(|s| 1.0 / s.sqrt()).collect();
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        let value: Complex64 = (0..n).map(|k| u[(i, k)] * u[(j, k)].conj() * inv_sqrt[k]).sum();
        Complex64::new(value.re, 0.0)
    }))
}

/// `Xᵀ M X`
fn congruence(x: &ComplexMatrix, m: &ComplexMatrix) -> ComplexMatrix {
    let mx = m.matmul(x).expect("square");
    x.transpose().matmul(&mx).expect("square")
}

/// One-shot construction with the quadrature cross-check enabled.
pub fn build_hamiltonian(
    params: &PotentialParams,
    theta: ScalingAngle,
    basis: &RadialBasis,
    channel: &ChannelSpec,
) -> Result<ScaledHamiltonian, PhysicsError> {
    let model = AlphaAlphaModel::new(params.v0, params.range, *channel, *basis)?;
    model.hamiltonian_checked(params.lambda, theta)
}
