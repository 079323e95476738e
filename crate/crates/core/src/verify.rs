//! Headless acceptance suite behind `resonance verify`.
//!
//! Each check returns a [`CheckOutcome`]; one failing check never stops the
//! others, so a tampered fixture shows up as a checksum failure *and* as
//! whatever numerical checks it breaks.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde::Serialize;

use crate::ec::{build_subspace, project_target, solve_training_set};
use crate::fixture::{Fixture, FixtureError};
use crate::ihhl::{
    build_c_operator, dilate, full_spectrum, ihhl_solve, DeflationSet, EnergyUpdate, IhhlOptions, IhhlResult,
    SolverKind,
};
use crate::linalg::{
    c_rayleigh_quotient, dense_eigen, hermitian_eigen, hermitian_inner, hermitian_norm, linear_solve, ComplexMatrix,
    ComplexVector,
};
use crate::physics::{check_angle, AlphaAlphaModel, RadialBasis, ScalingAngle, REFERENCE_RESONANCE};
use crate::qsim::{
    annihilation, creation, hhl_run, multiply_pauli, pauli_decompose, pauli_to_matrix, qpe, HhlConfig, PauliTerm,
    QuantumState,
};

/// Componentwise agreement with the tabulated diagonalization, MeV.
pub const DIAG_TOLERANCE: f64 = 0.01;
/// Iterative eigenvalue against the local diagonalization, MeV.
pub const SELF_TOLERANCE: f64 = 0.01;
/// Iterative eigenvalue against the tabulated iterative value, MeV.
pub const TABULATED_TOLERANCE: f64 = 0.02;
pub const MAX_ITERATIONS: usize = 10;
pub const EXACT_BACKEND_TOLERANCE: f64 = 1e-6;
pub const CIRCUIT_BACKEND_TOLERANCE: f64 = 1e-3;
/// Full-basis resonance against the reference value, per component, MeV.
pub const RESONANCE_TOLERANCE: f64 = 0.5;
/// EC resonance against the full-basis resonance of the same model.
pub const EC_RELATIVE_TOLERANCE: f64 = 0.01;
pub const QUADRATURE_TOLERANCE: f64 = 1e-8;
pub const HHL_FIDELITY: f64 = 0.99;
pub const PAULI_ROUND_TRIP: f64 = 1e-12;
pub const SUITE_BUDGET: Duration = Duration::from_secs(300);

const FAST_BUDGET: Duration = Duration::from_secs(1);
const CIRCUIT_BUDGET: Duration = Duration::from_secs(60);
const SPECTRUM_RANDOM_SEED: u64 = 2024;
const VARIATIONAL_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    pub seconds: f64,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Accumulates named conditions for one check.
struct Findings {
    passed: bool,
    details: Vec<String>,
}

impl Findings {
    fn new() -> Self {
        Self { passed: true, details: Vec::new() }
    }

    fn require(&mut self, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.passed &= ok;
        self.details.push(if ok { detail } else { format!("FAIL {detail}") });
    }

    fn error(&mut self, context: &str, e: impl std::fmt::Display) {
        self.require(false, format!("{context}: {e}"));
    }
}

fn timed(id: &'static str, description: &'static str, f: impl FnOnce(&mut Findings)) -> CheckOutcome {
    let start = Instant::now();
    let mut ledger = Findings::new();
    f(&mut ledger);
    CheckOutcome { id, description, passed: ledger.passed, details: ledger.details, seconds: start.elapsed().as_secs_f64() }
}

fn componentwise(a: Complex64, b: Complex64) -> f64 {
    (a.re - b.re).abs().max((a.im - b.im).abs())
}

/// Greedy nearest matching of `found` against `reference`; worst distance.
pub fn worst_match(found: &[Complex64], reference: &[Complex64], metric: fn(Complex64, Complex64) -> f64) -> f64 {
    let mut pool: Vec<Complex64> = reference.to_vec();
    let mut worst = 0.0_f64;
    for &z in found {
        let Some((k, d)) =
            pool.iter().enumerate().map(|(k, &r)| (k, metric(z, r))).min_by(|a, b| a.1.total_cmp(&b.1))
        else {
            return f64::INFINITY;
        };
        worst = worst.max(d);
        pool.swap_remove(k);
    }
    if found.len() == reference.len() { worst } else { f64::INFINITY }
}

fn distance(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm()
}

/// Run every check against `fixture`. `integrity` carries checksum problems
/// found while loading it.
pub fn run_suite(fixture: &Fixture, integrity: &[FixtureError]) -> VerifyReport {
    let start = Instant::now();
    let mut checks = vec![
        timed("fixture-integrity", "fixture files match SHA256SUMS", |l| {
            l.require(integrity.is_empty(), format!("{} checksum problem(s)", integrity.len()));
            for p in integrity {
                l.details.push(p.to_string());
            }
        }),
        timed("1-diagonalization", "dense eigenvalues of the fixture match the tabulated values", |l| {
            check_diagonalization(fixture, l)
        }),
        timed("2-first-eigenvalue", "first eigenvalue from the tabulated seed, every backend", |l| {
            check_first(fixture, l)
        }),
        timed("3-second-eigenvalue", "second eigenvalue with deflation", |l| check_second(fixture, l)),
        timed("4-full-spectrum", "eight eigenvalues by cumulative deflation", |l| check_full_spectrum(fixture, l)),
        timed("5-backend-equivalence", "classical, ideal and circuit spectra agree", |l| check_backends(fixture, l)),
        timed("6-physics-pipeline", "bound state, resonance and quadrature from the alpha-alpha model", check_physics),
        timed("7-ec-variational", "EC ground energies are variational and improve with dimension", check_variational),
        timed("8-hhl-battery", "phase estimation, HHL fidelity, Pauli and Jordan-Wigner identities", |l| {
            check_hhl_battery(fixture, l)
        }),
    ];
    let elapsed = start.elapsed();
    checks.push(CheckOutcome {
        id: "9-suite-runtime",
        description: "whole suite runs headless within budget",
        passed: elapsed < SUITE_BUDGET,
        details: vec![format!("{:.1} s of {} s", elapsed.as_secs_f64(), SUITE_BUDGET.as_secs())],
        seconds: elapsed.as_secs_f64(),
    });
    VerifyReport { passed: checks.iter().all(|c| c.passed), checks, seconds: elapsed.as_secs_f64() }
}

fn check_diagonalization(fixture: &Fixture, l: &mut Findings) {
    let start = Instant::now();
    let eig = match dense_eigen(&fixture.hamiltonian) {
        Ok(e) => e,
        Err(e) => return l.error("dense_eigen", e),
    };
    let elapsed = start.elapsed();
    let worst = worst_match(&fixture.reference.diagonalization(), &eig.eigenvalues, componentwise);
    l.require(worst <= DIAG_TOLERANCE, format!("worst componentwise deviation {worst:.2e} MeV (≤ {DIAG_TOLERANCE})"));
    l.require(elapsed < FAST_BUDGET, format!("{:.3} s", elapsed.as_secs_f64()));
}

/// Default options; the circuit backend runs with 8 clock qubits.
fn backend_options(solver: SolverKind) -> IhhlOptions {
    IhhlOptions { hhl: HhlConfig::circuit(8), ..IhhlOptions::with_solver(solver) }
}

fn budget(solver: SolverKind) -> Duration {
    if solver == SolverKind::HhlCircuit { CIRCUIT_BUDGET } else { FAST_BUDGET }
}

fn judge_eigenvalue(
    l: &mut Findings,
    label: &str,
    result: &IhhlResult,
    elapsed: Duration,
    exact: Complex64,
    tabulated: Complex64,
    limit: Duration,
) {
    let e = result.eigenvalue;
    l.require(
        result.converged() && result.trace.iterations_used <= MAX_ITERATIONS,
        format!("{label}: {:?} after {} iterations", result.trace.status, result.trace.iterations_used),
    );
    let d_self = distance(e, exact);
    l.require(d_self <= SELF_TOLERANCE, format!("{label}: {e:.5} vs diagonalization {exact:.5}: {d_self:.2e}"));
    let d_pub = distance(e, tabulated);
    l.require(d_pub <= TABULATED_TOLERANCE, format!("{label}: vs tabulated {tabulated}: {d_pub:.2e}"));
    l.require(elapsed < limit, format!("{label}: {:.3} s (< {} s)", elapsed.as_secs_f64(), limit.as_secs_f64()));
}

fn nearest_exact(fixture: &Fixture, target: Complex64) -> Option<Complex64> {
    let eig = dense_eigen(&fixture.hamiltonian).ok()?;
    eig.nearest(target).map(|k| eig.eigenvalues[k])
}

fn check_first(fixture: &Fixture, l: &mut Findings) {
    let tabulated = fixture.reference.converged_first();
    let Some(exact) = nearest_exact(fixture, tabulated) else { return l.error("dense_eigen", "failed") };
    for solver in SolverKind::ALL {
        let start = Instant::now();
        match ihhl_solve(
            &fixture.hamiltonian,
            &fixture.reference.seed_first,
            None,
            &backend_options(solver),
            &DeflationSet::new(),
        ) {
            Ok(r) => judge_eigenvalue(l, solver.as_str(), &r, start.elapsed(), exact, tabulated, budget(solver)),
            Err(e) => l.error(solver.as_str(), e),
        }
    }
}

fn check_second(fixture: &Fixture, l: &mut Findings) {
    let tabulated = fixture.reference.converged_second();
    let Some(exact) = nearest_exact(fixture, tabulated) else { return l.error("dense_eigen", "failed") };
    for solver in [SolverKind::Classical, SolverKind::HhlIdeal] {
        let opts = backend_options(solver);
        let start = Instant::now();
        let outcome = ihhl_solve(&fixture.hamiltonian, &fixture.reference.seed_first, None, &opts, &DeflationSet::new())
            .and_then(|first| {
                let mut set = DeflationSet::new();
                set.push(first.eigenvalue, &first.eigenvector)?;
                ihhl_solve(&fixture.hamiltonian, &fixture.reference.seed_second, None, &opts, &set)
            });
        match outcome {
            Ok(r) => judge_eigenvalue(l, solver.as_str(), &r, start.elapsed(), exact, tabulated, FAST_BUDGET),
            Err(e) => l.error(solver.as_str(), e),
        }
    }
}

fn fixture_seeds(fixture: &Fixture) -> [ComplexVector; 2] {
    [fixture.reference.seed_first.clone(), fixture.reference.seed_second.clone()]
}

fn check_full_spectrum(fixture: &Fixture, l: &mut Findings) {
    let exact = match dense_eigen(&fixture.hamiltonian) {
        Ok(e) => e.eigenvalues,
        Err(e) => return l.error("dense_eigen", e),
    };
    let opts = IhhlOptions::default();
    match full_spectrum(&fixture.hamiltonian, &fixture_seeds(fixture), &opts, SPECTRUM_RANDOM_SEED) {
        Ok(s) => {
            let worst = worst_match(&s.eigenvalues(), &exact, componentwise);
            l.require(worst <= SELF_TOLERANCE, format!("worst deviation {worst:.2e} MeV over {} values", s.pairs.len()));
        }
        Err(e) => l.error("full_spectrum", e),
    }
}

fn check_backends(fixture: &Fixture, l: &mut Findings) {
    let seeds = fixture_seeds(fixture);
    let run = |opts: IhhlOptions| {
        full_spectrum(&fixture.hamiltonian, &seeds, &opts, SPECTRUM_RANDOM_SEED).map(|s| s.eigenvalues())
    };
    let classical = match run(IhhlOptions::with_solver(SolverKind::Classical)) {
        Ok(v) => v,
        Err(e) => return l.error("classical", e),
    };
    match run(IhhlOptions::with_solver(SolverKind::HhlIdeal)) {
        Ok(v) => {
            let worst = worst_match(&v, &classical, distance);
            l.require(worst <= EXACT_BACKEND_TOLERANCE, format!("hhl-ideal vs classical {worst:.2e} MeV"));
        }
        Err(e) => l.error("hhl-ideal", e),
    }
    let circuit = IhhlOptions {
        update: Some(EnergyUpdate::Rayleigh),
        hhl: HhlConfig::circuit(10),
        ..IhhlOptions::with_solver(SolverKind::HhlCircuit)
    };
    match run(circuit) {
        Ok(v) => {
            let worst = worst_match(&v, &classical, distance);
            l.require(worst <= CIRCUIT_BACKEND_TOLERANCE, format!("hhl-circuit (10 clock qubits) vs classical {worst:.2e} MeV"));
        }
        Err(e) => l.error("hhl-circuit", e),
    }
}

fn check_physics(l: &mut Findings) {
    let model = match AlphaAlphaModel::alpha_alpha(RadialBasis::default()) {
        Ok(m) => m,
        Err(e) => return l.error("model", e),
    };
    let theta = ScalingAngle::from_degrees(20.0).expect("valid angle");
    match model.check_quadrature(theta) {
        Ok(q) => l.require(q.worst() <= QUADRATURE_TOLERANCE, format!("quadrature cross-check {:.2e}", q.worst())),
        Err(e) => l.error("quadrature", e),
    }
    let training = match solve_training_set(&[1.6], &model) {
        Ok(t) => t,
        Err(e) => return l.error("bound state", e),
    };
    l.require(training[0].energy < 0.0, format!("ground state at lambda 1.6: {:.4} MeV", training[0].energy));
    let full = match dense_eigen(&model.hamiltonian(1.0, theta).matrix) {
        Ok(e) => e,
        Err(e) => return l.error("dense_eigen", e),
    };
    let candidate = full.eigenvalues[full.nearest(REFERENCE_RESONANCE).expect("non-empty")];
    let d = componentwise(candidate, REFERENCE_RESONANCE);
    l.require(d <= RESONANCE_TOLERANCE, format!("full-basis resonance {candidate:.4} vs {REFERENCE_RESONANCE}: {d:.3}"));
    l.require(candidate.im < 0.0, "resonance in the lower half plane");
    l.require(check_angle(theta, candidate).unwrap_or(false), "20° rotation exposes the resonance");
    let lambdas = crate::ec::default_training_lambdas();
    let ec = solve_training_set(&lambdas, &model)
        .and_then(|pts| build_subspace(&pts))
        .and_then(|s| project_target(&s, &model, 1.0, theta))
        .and_then(|m| m.resonance_candidate(Some(REFERENCE_RESONANCE)));
    match ec {
        Ok(z) => {
            let rel = distance(z, candidate) / candidate.norm();
            l.require(rel <= EC_RELATIVE_TOLERANCE, format!("EC resonance {z:.4} vs full basis: {:.3}% relative", 100.0 * rel));
        }
        Err(e) => l.error("EC", e),
    }
}

fn check_variational(l: &mut Findings) {
    let model = match AlphaAlphaModel::alpha_alpha(RadialBasis::default()) {
        Ok(m) => m,
        Err(e) => return l.error("model", e),
    };
    let subspace = match solve_training_set(&crate::ec::default_training_lambdas(), &model).and_then(|p| build_subspace(&p)) {
        Ok(s) => s,
        Err(e) => return l.error("training", e),
    };
    let mut violations = 0;
    let mut worst_gap = f64::NEG_INFINITY;
    for i in 0..20 {
        let lambda = 1.0 + 0.8 * i as f64 / 19.0;
        let exact = match hermitian_eigen(&model.hamiltonian(lambda, ScalingAngle::ZERO).matrix) {
            Ok(e) => e.eigenvalues[0],
            Err(e) => return l.error("exact", e),
        };
        let mut previous = f64::INFINITY;
        for k in 1..=subspace.dimension() {
            let ground = project_target(&subspace.truncated(k), &model, lambda, ScalingAngle::ZERO)
                .and_then(|m| m.ground_energy());
            match ground {
                Ok(g) => {
                    worst_gap = worst_gap.max(exact - g);
                    if g < exact - VARIATIONAL_SLACK || g > previous + VARIATIONAL_SLACK {
                        violations += 1;
                    }
                    previous = g;
                }
                Err(e) => return l.error("projection", e),
            }
        }
    }
    l.require(violations == 0, format!("{violations} violations over 20 couplings × {} dimensions", subspace.dimension()));
    l.require(worst_gap <= VARIATIONAL_SLACK, format!("largest exact − EC gap {worst_gap:.2e} MeV"));
}

fn fidelity(a: &ComplexVector, b: &ComplexVector) -> f64 {
    let overlap = hermitian_inner(a, b).map(|z| z.norm_sqr()).unwrap_or(0.0);
    overlap / (hermitian_norm(a).powi(2) * hermitian_norm(b).powi(2))
}

fn anticommutator(a: &[PauliTerm], b: &[PauliTerm], n: usize) -> Result<ComplexMatrix, crate::qsim::QsimError> {
    let mut sum = multiply_pauli(a, b);
    sum.extend(multiply_pauli(b, a));
    pauli_to_matrix(&sum, n)
}

fn check_hhl_battery(fixture: &Fixture, l: &mut Findings) {
    // Phase 1/4 on the |1⟩ eigenvector lands entirely on clock value 2 of 8.
    let u = ComplexMatrix::diagonal(&[Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, PI / 2.0)]);
    let one = QuantumState::from_amplitudes(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]).expect("unit");
    match qpe(&u, &one, 3) {
        Ok(p) => l.require((p[2] - 1.0).abs() < 1e-12, format!("dyadic phase estimation P(2) = {:.15}", p[2])),
        Err(e) => l.error("qpe", e),
    }

    let z = ComplexMatrix::diagonal(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
    let b = ComplexVector::from_real(&[1.0, 1.0]);
    match hhl_run(&z, &b, &HhlConfig::circuit(4)) {
        Ok(sol) => {
            let f = fidelity(&sol.x, &ComplexVector::from_real(&[1.0, -1.0]));
            let signs = sol.x[0].re > 0.0 && sol.x[1].re < 0.0;
            l.require(f >= 0.999 && signs, format!("diag(1, -1) inversion fidelity {f:.6}"));
        }
        Err(e) => l.error("hhl diag(1,-1)", e),
    }

    let seed = &fixture.reference.seed_first;
    let h = &fixture.hamiltonian;
    let dilated = c_rayleigh_quotient(h, seed)
        .map_err(crate::ihhl::IhhlError::from)
        .and_then(|e0| build_c_operator(h, e0, Complex64::new(1.0, 0.0)))
        .and_then(|c| dilate(&c, seed));
    match dilated {
        Ok(sys) => {
            let a = sys.padded_matrix();
            let rhs = ComplexVector::from_real(&sys.rhs_real).resized(a.rows());
            match (linear_solve(&a, &rhs), hhl_run(&a, &rhs, &HhlConfig::circuit(8))) {
                (Ok(exact), Ok(sol)) => {
                    let f = fidelity(&exact, &sol.x);
                    l.require(f >= HHL_FIDELITY, format!("{0}×{0} dilated fixture step fidelity {f:.6}", a.rows()));
                }
                (Err(e), _) => l.error("classical dilated solve", e),
                (_, Err(e)) => l.error("hhl dilated solve", e),
            }
            match pauli_decompose(&a).and_then(|terms| pauli_to_matrix(&terms, 4)) {
                Ok(back) => {
                    let err = back.sub(&a).max_abs();
                    l.require(err <= PAULI_ROUND_TRIP, format!("Pauli round trip of the dilated matrix {err:.2e}"));
                }
                Err(e) => l.error("pauli", e),
            }
        }
        Err(e) => l.error("dilation", e),
    }

    let n = 3;
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let terms = (annihilation(i, n), creation(j, n), annihilation(j, n));
            let (Ok(ai), Ok(cj), Ok(aj)) = terms else { return l.error("jordan-wigner", "mode out of range") };
            let delta = if i == j { ComplexMatrix::identity(1 << n) } else { ComplexMatrix::zeros(1 << n, 1 << n) };
            match (anticommutator(&ai, &cj, n), anticommutator(&ai, &aj, n)) {
                (Ok(mixed), Ok(same)) => worst = worst.max(mixed.sub(&delta).max_abs()).max(same.max_abs()),
                (Err(e), _) | (_, Err(e)) => return l.error("jordan-wigner", e),
            }
        }
    }
    l.require(worst < 1e-12, format!("Jordan-Wigner anticommutation defect {worst:.2e} on {n} modes"));
}
