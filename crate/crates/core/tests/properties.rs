mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use resonance::ihhl::{
    build_c_operator, deflate, dilate, full_spectrum, DeflationSet, IhhlOptions, IterationTrace, SolverKind,
};
use resonance::linalg::{c_product, dense_eigen, ComplexMatrix, ComplexVector, MatrixRecord};
use resonance::physics::{AlphaAlphaModel, RadialBasis, ScalingAngle};
use resonance::qsim::{
    pauli_decompose, pauli_to_matrix, Circuit, Gate, HhlConfig, Operation, QuantumState,
};

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(r, i)| c(r, i))
}

fn vector(n: usize) -> impl Strategy<Value = ComplexVector> {
    prop::collection::vec(complex(), n).prop_map(ComplexVector::new)
}

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), n * n).prop_map(move |d| ComplexMatrix::from_row_major(n, n, d).unwrap())
}

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(n).prop_map(|m| m.add(&m.adjoint()))
}

fn gate(num_qubits: usize) -> impl Strategy<Value = Gate> {
    let op = prop_oneof![
        Just(Operation::H),
        Just(Operation::X),
        Just(Operation::Y),
        Just(Operation::Z),
        (-3.0..3.0f64).prop_map(Operation::Phase),
        (-3.0..3.0f64).prop_map(Operation::Ry),
    ];
    (op, 0..num_qubits, prop::option::of(0..num_qubits)).prop_map(|(op, t, ctrl)| match ctrl {
        Some(c) if c != t => Gate::controlled(op, vec![t], vec![c]),
        _ => Gate::new(op, vec![t]),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gates_preserve_norm(amps in vector(8), gates in prop::collection::vec(gate(3), 1..30)) {
        prop_assume!(amps.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3);
        let mut state = QuantumState::normalized(&amps).unwrap();
        let mut circuit = Circuit::new(3);
        for g in gates {
            circuit.push(g);
        }
        circuit.apply(&mut state).unwrap();
        prop_assert!((state.norm() - 1.0).abs() < 1e-12);
        circuit.inverse().unwrap().apply(&mut state).unwrap();
        let back = ComplexVector::new(state.amplitudes().to_vec());
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(back.sub(&amps.scale(c(1.0 / norm, 0.0))).max_abs() < 1e-12);
    }

    #[test]
    fn pauli_round_trip(h in hermitian(8)) {
        let terms = pauli_decompose(&h).unwrap();
        prop_assert!(terms.iter().all(|t| t.coefficient.im.abs() < 1e-13));
        let back = pauli_to_matrix(&terms, 3).unwrap();
        prop_assert!(back.sub(&h).max_abs() < 1e-12);
    }

    #[test]
    fn c_product_is_symmetric_and_bilinear(u in vector(5), v in vector(5), w in vector(5), a in complex()) {
        let uv = c_product(&u, &v).unwrap();
        prop_assert!((uv - c_product(&v, &u).unwrap()).norm() < 1e-12);
        let lhs = c_product(&u.scale(a).axpy(c(1.0, 0.0), &w), &v).unwrap();
        let rhs = a * uv + c_product(&w, &v).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn dilation_is_hermitian_and_solves_the_fixed_point_equation(
        h in matrix(4), e in complex(), phi in vector(4),
    ) {
        let op = build_c_operator(&h, e, c(1.0, 0.0)).unwrap();
        let sys = dilate(&op, &phi).unwrap();
        prop_assert!(sys.a_matrix.hermiticity_defect() == 0.0);
        let padded = sys.padded_matrix();
        prop_assert!(padded.rows().is_power_of_two());
        if let Ok(x) = sys.solve(SolverKind::Classical, &HhlConfig::ideal()) {
            let residual = op.matrix.matvec(&x).unwrap().sub(&phi).max_abs();
            prop_assert!(residual < 1e-8 * (1.0 + x.max_abs() * op.matrix.max_abs()));
        }
    }

    #[test]
    fn deflated_vector_is_c_orthogonal_to_the_set(vs in prop::collection::vec(vector(5), 1..4), phi in vector(5)) {
        let mut set = DeflationSet::new();
        for (k, v) in vs.iter().enumerate() {
            // Build a c-orthogonal set first; raw random vectors are not.
            let Ok(orth) = deflate(v, &set) else { return Ok(()) };
            let cc = c_product(&orth, &orth).unwrap().norm();
            prop_assume!(cc > 1e-3 * orth.max_abs().powi(2));
            set.push(c(k as f64, 0.0), &orth).unwrap();
        }
        let out = deflate(&phi, &set).unwrap();
        for v in &set.eigenvectors {
            prop_assert!(c_product(v, &out).unwrap().norm() < 1e-9 * (1.0 + phi.max_abs()));
        }
    }

    #[test]
    fn matrix_json_round_trip_is_exact(m in matrix(3)) {
        let json = serde_json::to_string(&MatrixRecord::from(&m)).unwrap();
        let back = ComplexMatrix::try_from(serde_json::from_str::<MatrixRecord>(&json).unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn trace_csv_has_one_row_per_energy(energies in prop::collection::vec(complex(), 1..12)) {
        let deltas = energies.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
        let trace = IterationTrace {
            iterations_used: energies.len() - 1,
            energies,
            deltas,
            vectors: vec![],
            status: resonance::ihhl::TraceStatus::Converged,
            solver: SolverKind::Classical,
            update: resonance::ihhl::EnergyUpdate::ShiftInvert,
            epsilon: 1e-4,
            beta_adjustments: vec![],
            random_seed: None,
        };
        let csv = trace.to_csv();
        prop_assert_eq!(csv.lines().count(), trace.energies.len() + 1);
        prop_assert!(csv.starts_with("iteration,re,im,abs_delta\n"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn full_spectrum_matches_dense_on_separated_complex_symmetric(s in matrix(5), seed in any::<u64>()) {
        let d = ComplexMatrix::diagonal(&[c(1.0, -0.2), c(4.0, -1.0), c(7.0, -0.5), c(10.0, -2.0), c(13.0, -0.1)]);
        let h = d.add(&s.add(&s.transpose()).scale(c(0.1, 0.0)));
        let spectrum = full_spectrum(&h, &[], &IhhlOptions { epsilon: 1e-10, ..IhhlOptions::default() }, seed).unwrap();
        let exact = dense_eigen(&h).unwrap().eigenvalues;
        prop_assert!(worst_match(&spectrum.eigenvalues(), &exact, distance) < 1e-6);
    }

    #[test]
    fn scaled_hamiltonian_is_complex_symmetric(lambda in 0.5..2.0f64, degrees in 0.0..40.0f64) {
        let model = AlphaAlphaModel::alpha_alpha(RadialBasis::new(12, 0.3, 1.5).unwrap()).unwrap();
        let h = model.hamiltonian(lambda, ScalingAngle::from_degrees(degrees).unwrap()).matrix;
        prop_assert!(h.symmetry_defect() <= 1e-12 * h.max_abs());
    }
}

#[test]
fn full_spectrum_is_reproducible_for_a_seed() {
    let f = resonance::fixture::Fixture::embedded().unwrap();
    let run = || full_spectrum(&f.hamiltonian, &[], &IhhlOptions::default(), 99).unwrap().eigenvalues();
    assert_eq!(run(), run());
}
