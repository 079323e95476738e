//! Cross-checks against independent computations: polynomial roots,
//! nalgebra decompositions, explicit occupation-number operators and the
//! closed-form phase-estimation distribution.

mod common;

use std::f64::consts::PI;

use common::*;
use num_complex::Complex64;
use resonance::ihhl::{build_c_operator, dilate, SolverKind};
use resonance::linalg::{dense_eigen, generalized_eigen, hermitian_eigen, ComplexMatrix, ComplexVector};
use resonance::qsim::{annihilation, creation, evolve_unitary, pauli_to_matrix, qpe, HhlConfig, QuantumState};

fn sample_matrix(n: usize, seed: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        let x = (i * n + j) as f64 + seed;
        c((1.3 * x).sin() + if i == j { 2.0 * i as f64 } else { 0.0 }, (0.7 * x + 0.4).cos())
    })
}

/// Characteristic polynomial coefficients, leading 1 first.
fn faddeev_leverrier(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.rows();
    let mut coeffs = vec![c(1.0, 0.0)];
    let mut m = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.matmul(&m).unwrap().add(&ComplexMatrix::identity(n).scale(coeffs[k - 1]));
        let am = a.matmul(&m).unwrap();
        let trace: Complex64 = (0..n).map(|i| am[(i, i)]).sum();
        coeffs.push(-trace / k as f64);
    }
    coeffs
}

fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| coeffs.iter().fold(c(0.0, 0.0), |acc, &a| acc * z + a);
    let mut roots: Vec<Complex64> = (0..n).map(|k| c(0.4, 0.9).powu(k as u32) * 3.0).collect();
    for _ in 0..500 {
        let previous = roots.clone();
        for i in 0..n {
            let denom: Complex64 = (0..n).filter(|&j| j != i).map(|j| roots[i] - roots[j]).product();
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
        }
        if roots.iter().zip(&previous).all(|(a, b)| (a - b).norm() < 1e-15) {
            break;
        }
    }
    roots
}

#[test]
fn dense_eigen_matches_characteristic_polynomial_roots() {
    let a = sample_matrix(3, 0.25);
    let roots = durand_kerner(&faddeev_leverrier(&a));
    let eig = dense_eigen(&a).unwrap();
    assert!(worst_match(&eig.eigenvalues, &roots, distance) < 1e-10);
}

#[test]
fn dense_eigen_matches_nalgebra_on_fixture_and_samples() {
    let f = resonance::fixture::Fixture::embedded().unwrap();
    for m in [f.hamiltonian, sample_matrix(6, 1.0), sample_matrix(12, -2.0)] {
        let eig = dense_eigen(&m).unwrap();
        assert!(worst_match(&eig.eigenvalues, &oracle_eigenvalues(&m), distance) < 1e-9);
        for k in 0..eig.len() {
            assert!(eig.residual_norms[k] < 1e-9 * m.frobenius_norm());
        }
    }
}

#[test]
fn generalized_eigen_matches_reduced_standard_problem() {
    let h = sample_matrix(5, 0.5);
    let h = h.add(&h.transpose()).scale(c(0.5, 0.0));
    let b = sample_matrix(5, 3.0);
    let n = b.adjoint().matmul(&b).unwrap().add(&ComplexMatrix::identity(5));
    let n_inv = from_nalgebra(&to_nalgebra(&n).try_inverse().unwrap());
    let reduced = n_inv.matmul(&h).unwrap();
    let eig = generalized_eigen(&h, &n).unwrap();
    assert!(worst_match(&eig.eigenvalues, &oracle_eigenvalues(&reduced), distance) < 1e-9);
}

#[test]
fn hermitian_eigen_matches_nalgebra() {
    let b = sample_matrix(7, 0.1);
    let h = b.add(&b.adjoint());
    let ours = hermitian_eigen(&h).unwrap().eigenvalues;
    let mut theirs: Vec<f64> = to_nalgebra(&h).symmetric_eigen().eigenvalues.iter().copied().collect();
    theirs.sort_by(f64::total_cmp);
    for (a, b) in ours.iter().zip(&theirs) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn dilation_spectrum_is_plus_minus_singular_values() {
    let h = sample_matrix(4, 0.9);
    let op = build_c_operator(&h, c(1.5, -0.5), c(1.0, 0.2)).unwrap();
    let phi = ComplexVector::new((0..4).map(|k| c(1.0 + k as f64, -0.5)).collect());
    let sys = dilate(&op, &phi).unwrap();
    let mut eig = hermitian_eigen(&sys.a_matrix).unwrap().eigenvalues;
    eig.sort_by(f64::total_cmp);
    let mut sv: Vec<f64> = to_nalgebra(&op.matrix).singular_values().iter().copied().collect();
    sv.sort_by(f64::total_cmp);
    let mut expected: Vec<f64> = sv.iter().map(|s| -s).chain(sv.iter().copied()).collect();
    expected.sort_by(f64::total_cmp);
    for (a, b) in eig.iter().zip(&expected) {
        assert!((a - b).abs() < 1e-10);
    }
    let solved = sys.solve(SolverKind::Classical, &HhlConfig::ideal()).unwrap();
    let reference = oracle_solve(&op.matrix, &phi);
    assert!(solved.sub(&reference).max_abs() < 1e-10 * reference.max_abs());
}

/// `a†_j` in the occupation basis: bit `j` of the index is mode `j`.
fn occupation_creation(j: usize, n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(1 << n, 1 << n);
    for state in 0..1usize << n {
        if state & (1 << j) == 0 {
            let parity = (state & ((1 << j) - 1)).count_ones();
            m[(state | (1 << j), state)] = c(if parity.is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0);
        }
    }
    m
}

#[test]
fn jordan_wigner_matches_occupation_operators() {
    let n = 4;
    for j in 0..n {
        let cre = pauli_to_matrix(&creation(j, n).unwrap(), n).unwrap();
        let ann = pauli_to_matrix(&annihilation(j, n).unwrap(), n).unwrap();
        let expected = occupation_creation(j, n);
        assert!(cre.sub(&expected).max_abs() < 1e-14);
        assert!(ann.sub(&expected.adjoint()).max_abs() < 1e-14);
    }
}

#[test]
fn qpe_distribution_follows_fejer_kernel() {
    let clock = 5;
    let phase: f64 = 0.3;
    let u = ComplexMatrix::diagonal(&[c(1.0, 0.0), Complex64::from_polar(1.0, 2.0 * PI * phase)]);
    let state = QuantumState::from_amplitudes(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    let p = qpe(&u, &state, clock).unwrap();
    let size = (1u32 << clock) as f64;
    for (k, &pk) in p.iter().enumerate() {
        let delta = phase - k as f64 / size;
        let expected = ((PI * size * delta).sin() / (size * (PI * delta).sin())).powi(2);
        assert!((pk - expected).abs() < 1e-12, "k={k}: {pk} vs {expected}");
    }
}

#[test]
fn evolution_matches_matrix_exponential_and_composes() {
    let b = sample_matrix(4, 2.2);
    let h = b.add(&b.adjoint()).scale(c(0.25, 0.0));
    let t = 0.7;
    let ours = evolve_unitary(&h, t).unwrap();
    let theirs = from_nalgebra(&(to_nalgebra(&h) * c(0.0, t)).exp());
    assert!(ours.sub(&theirs).max_abs() < 1e-12);
    let composed = evolve_unitary(&h, 0.3).unwrap().matmul(&evolve_unitary(&h, 0.4).unwrap()).unwrap();
    assert!(composed.sub(&ours).max_abs() < 1e-12);
    let unitarity = ours.adjoint().matmul(&ours).unwrap().sub(&ComplexMatrix::identity(4)).max_abs();
    assert!(unitarity < 1e-13);
}

#[test]
fn fixture_checksums_match_file_contents() {
    use sha2::{Digest, Sha256};
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let sums = std::fs::read_to_string(dir.join("SHA256SUMS")).unwrap();
    let mut checked = 0;
    for line in sums.lines() {
        let (sum, file) = line.split_once(char::is_whitespace).unwrap();
        let bytes = std::fs::read(dir.join(file.trim().trim_start_matches('*'))).unwrap();
        let digest: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(digest, sum);
        checked += 1;
    }
    assert!(checked >= 2);
}

#[test]
fn fixture_values_match_tabulated_references() {
    let f = resonance::fixture::Fixture::embedded().unwrap();
    assert_eq!(f.hamiltonian[(0, 0)], c(5.9160, -7.1245));
    assert_eq!(f.reference.converged_first(), TABULATED_FIRST);
    assert_eq!(f.reference.converged_second(), TABULATED_SECOND);
    assert_eq!(f.reference.table_iterative.values(), tabulated(&TABULATED_ITERATIVE));
    assert_eq!(f.reference.table_diagonalization.values(), tabulated(&TABULATED_DIAGONALIZATION));
    assert_eq!(f.reference.r_matrix_resonance(), R_MATRIX_RESONANCE);
}
