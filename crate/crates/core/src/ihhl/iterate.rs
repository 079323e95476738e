use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::operator::{build_c_operator, dilate};
use super::trace::{BetaAdjustment, IterationTrace, TraceStatus};
use super::{deflate, DeflationSet, EnergyUpdate, IhhlError, IhhlOptions};
use crate::linalg::{c_product, c_rayleigh_quotient, hermitian_norm, spectral_order, ComplexMatrix, ComplexVector, LinalgError};
use crate::qsim::QsimError;

const BETA_NUDGE: f64 = 0.1;
const MAX_NUDGES: usize = 10;
const DIVERGENCE_FACTOR: f64 = 1e3;
const QUASI_NULL: f64 = 1e-10;
const DUPLICATE_DISTANCE: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct StepOutcome {
    /// Deflated, unit Hermitian norm.
    pub phi: ComplexVector,
    pub energy: Complex64,
    /// `β` actually used, after any nudges.
    pub beta: Complex64,
}

fn is_singular(e: &IhhlError) -> bool {
    matches!(
        e,
        IhhlError::Linalg(LinalgError::Singular { .. } | LinalgError::IllConditioned { .. })
            | IhhlError::Qsim(QsimError::Singular | QsimError::Linalg(LinalgError::Singular { .. }))
    )
}

fn quasi_null(e: LinalgError) -> IhhlError {
    match e {
        LinalgError::QuasiNull { c_norm_sq } => IhhlError::ExceptionalPoint { c_norm: c_norm_sq },
        other => other.into(),
    }
}

/// One inverse-iteration step from `(φ, E)`.
pub fn ihhl_step(
    phi: &ComplexVector,
    energy: Complex64,
    h: &ComplexMatrix,
    options: &IhhlOptions,
    deflation: &DeflationSet,
) -> Result<StepOutcome, IhhlError> {
    let mut log = Vec::new();
    step_with_log(phi, energy, h, options, options.beta, deflation, 0, &mut log)
}

#[allow(clippy::too_many_arguments)]
fn step_with_log(
    phi: &ComplexVector,
    energy: Complex64,
    h: &ComplexMatrix,
    options: &IhhlOptions,
    beta: Complex64,
    deflation: &DeflationSet,
    iteration: usize,
    log: &mut Vec<BetaAdjustment>,
) -> Result<StepOutcome, IhhlError> {
    let mut beta = beta;
    let mut nudges = 0;
    let raw = loop {
        let c = build_c_operator(h, energy, beta)?;
        let attempt = dilate(&c, phi).and_then(|sys| sys.solve(options.solver, &options.hhl));
        match attempt {
            Ok(x) => break x,
            Err(e) if is_singular(&e) && nudges < MAX_NUDGES => {
                let to = beta + BETA_NUDGE;
                log.push(BetaAdjustment { iteration, from: beta, to });
                beta = to;
                nudges += 1;
            }
            Err(e) if is_singular(&e) => return Err(IhhlError::SingularShift { beta }),
            Err(e) => return Err(e),
        }
    };
    let phi_star = deflate(&raw, deflation)?;
    let next_energy = match options.energy_update() {
        EnergyUpdate::ShiftInvert => {
            let overlap = c_product(phi, &phi_star)?;
            if overlap.norm() < QUASI_NULL * hermitian_norm(phi) * hermitian_norm(&phi_star) {
                return Err(IhhlError::ExceptionalPoint { c_norm: overlap.norm() });
            }
            energy - beta + beta * c_product(phi, phi)? / overlap
        }
        EnergyUpdate::Rayleigh => c_rayleigh_quotient(h, &phi_star).map_err(quasi_null)?,
    };
    let norm = hermitian_norm(&phi_star);
    if !(norm > 0.0) || !norm.is_finite() || !next_energy.re.is_finite() || !next_energy.im.is_finite() {
        return Err(IhhlError::NonFinite);
    }
    Ok(StepOutcome { phi: phi_star.scale(Complex64::new(1.0 / norm, 0.0)), energy: next_energy, beta })
}

/// Converged (or abandoned) eigenpair with its history.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IhhlResult {
    pub eigenvalue: Complex64,
    /// Unit Hermitian norm.
    pub eigenvector: ComplexVector,
    /// `‖H v − E v‖₂`
    pub residual_norm: f64,
    pub trace: IterationTrace,
}

impl IhhlResult {
    pub fn converged(&self) -> bool {
        self.trace.converged()
    }
}

/// Iterate from `phi0` until successive energies differ by less than
/// `options.epsilon`. `energy0` defaults to the c-Rayleigh quotient of the
/// deflated seed. Running out of iterations is not an error: the trace says so.
pub fn ihhl_solve(
    h: &ComplexMatrix,
    phi0: &ComplexVector,
    energy0: Option<Complex64>,
    options: &IhhlOptions,
    deflation: &DeflationSet,
) -> Result<IhhlResult, IhhlError> {
    run(h, phi0, energy0, options, deflation, None)
}

fn run(
    h: &ComplexMatrix,
    phi0: &ComplexVector,
    energy0: Option<Complex64>,
    options: &IhhlOptions,
    deflation: &DeflationSet,
    random_seed: Option<u64>,
) -> Result<IhhlResult, IhhlError> {
    if !(options.epsilon > 0.0) {
        return Err(IhhlError::BadEpsilon);
    }
    if h.rows() != phi0.len() || !h.is_square() {
        return Err(IhhlError::DimensionMismatch { expected: h.rows(), actual: phi0.len() });
    }
    let seeded = deflate(phi0, deflation)?;
    let norm = hermitian_norm(&seeded);
    if !(norm > 1e-12 * hermitian_norm(phi0).max(f64::MIN_POSITIVE)) {
        return Err(IhhlError::ZeroSeed);
    }
    let mut phi = seeded.scale(Complex64::new(1.0 / norm, 0.0));
    let mut energy = match energy0 {
        Some(e) => e,
        None => c_rayleigh_quotient(h, &phi).map_err(quasi_null)?,
    };
    let divergence = DIVERGENCE_FACTOR * h.frobenius_norm();
    let mut trace = IterationTrace {
        energies: vec![energy],
        deltas: Vec::new(),
        vectors: vec![phi.clone()],
        status: TraceStatus::MaxIterations,
        iterations_used: 0,
        solver: options.solver,
        update: options.energy_update(),
        epsilon: options.epsilon,
        beta_adjustments: Vec::new(),
        random_seed,
    };
    let mut beta = options.beta;
    for iteration in 1..=options.max_iter {
        let step = step_with_log(&phi, energy, h, options, beta, deflation, iteration, &mut trace.beta_adjustments)?;
        beta = step.beta;
        let delta = (step.energy - energy).norm();
        phi = step.phi;
        energy = step.energy;
        trace.energies.push(energy);
        trace.deltas.push(delta);
        trace.vectors.push(phi.clone());
        trace.iterations_used = iteration;
        if energy.norm() > divergence {
            trace.status = TraceStatus::Diverged;
            break;
        }
        if delta < options.epsilon {
            trace.status = TraceStatus::Converged;
            break;
        }
    }
    let residual_norm = hermitian_norm(&h.matvec(&phi)?.axpy(-energy, &phi));
    Ok(IhhlResult { eigenvalue: energy, eigenvector: phi, residual_norm, trace })
}

/// All eigenpairs, ascending by real part then imaginary part.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spectrum {
    pub pairs: Vec<IhhlResult>,
    pub random_seed: u64,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.pairs.iter().map(|p| p.eigenvalue).collect()
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> ComplexVector {
    (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

/// One solve per index with cumulative deflation. Seeds are used in order,
/// then seeded random vectors fill the remaining indices.
pub fn full_spectrum(
    h: &ComplexMatrix,
    seeds: &[ComplexVector],
    options: &IhhlOptions,
    random_seed: u64,
) -> Result<Spectrum, IhhlError> {
    let n = h.rows();
    if seeds.len() > n {
        return Err(IhhlError::TooManySeeds(seeds.len(), n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(random_seed);
    let mut deflation = DeflationSet::new();
    let mut pairs: Vec<IhhlResult> = Vec::with_capacity(n);
    for index in 0..n {
        let (seed, from_rng) = match seeds.get(index) {
            Some(s) => (s.clone(), None),
            None => (random_vector(&mut rng, n), Some(random_seed)),
        };
        let result = run(h, &seed, None, options, &deflation, from_rng)?;
        if !result.converged() {
            let status = result.trace.status;
            return Err(IhhlError::Incomplete { index, status, partial: pairs, trace: Box::new(result.trace) });
        }
        if let Some(existing) = pairs.iter().map(|p| p.eigenvalue).find(|e| (e - result.eigenvalue).norm() < DUPLICATE_DISTANCE) {
            return Err(IhhlError::DuplicateEigenvalue { index, value: result.eigenvalue, existing });
        }
        deflation.push(result.eigenvalue, &result.eigenvector)?;
        pairs.push(result);
    }
    pairs.sort_by(|a, b| spectral_order(&a.eigenvalue, &b.eigenvalue));
    Ok(Spectrum { pairs, random_seed })
}
