#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use resonance::linalg::{ComplexMatrix, ComplexVector};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Direct-diagonalization row of the tabulated eigenvalue table, ascending real part.
pub const TABULATED_DIAGONALIZATION: [(f64, f64); 8] = [
    (1.5967, -1.1574),
    (3.6284, -2.7683),
    (7.6260, -5.9790),
    (11.8079, -1.8110),
    (17.3572, -12.6788),
    (29.3705, -22.4434),
    (48.8284, -52.2619),
    (97.9800, -123.9785),
];

/// Iterative-HHL row of the same table.
pub const TABULATED_ITERATIVE: [(f64, f64); 8] = [
    (1.5968, -1.1574),
    (3.6297, -2.7683),
    (7.6254, -5.9790),
    (11.8211, -1.8107),
    (17.3525, -12.6788),
    (29.3599, -22.4433),
    (48.8163, -52.2620),
    (97.9506, -123.9743),
];

pub const TABULATED_FIRST: Complex64 = Complex64::new(29.3599, -22.4433);
pub const TABULATED_SECOND: Complex64 = Complex64::new(11.8211, -1.8107);
/// R-matrix resonance quoted with the table.
pub const R_MATRIX_RESONANCE: Complex64 = Complex64::new(11.8079, -1.8085);

pub fn tabulated(pairs: &[(f64, f64)]) -> Vec<Complex64> {
    pairs.iter().map(|&(r, i)| c(r, i)).collect()
}

pub fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn from_nalgebra(m: &DMatrix<Complex64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigenvalues from nalgebra's complex Schur form, ascending real part.
pub fn oracle_eigenvalues(m: &ComplexMatrix) -> Vec<Complex64> {
    let schur = nalgebra::Schur::new(to_nalgebra(m));
    let mut ev: Vec<Complex64> = schur.eigenvalues().expect("complex Schur form is triangular").iter().copied().collect();
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    ev
}

pub fn oracle_solve(a: &ComplexMatrix, b: &ComplexVector) -> ComplexVector {
    let x = to_nalgebra(a).lu().solve(&nalgebra::DVector::from_iterator(b.len(), b.iter().copied())).expect("nonsingular");
    ComplexVector::new(x.iter().copied().collect())
}

pub fn componentwise(a: Complex64, b: Complex64) -> f64 {
    (a.re - b.re).abs().max((a.im - b.im).abs())
}

pub fn nearest(z: Complex64, pool: &[Complex64]) -> Complex64 {
    *pool.iter().min_by(|a, b| (*a - z).norm().total_cmp(&(*b - z).norm())).expect("non-empty")
}

/// Worst distance under a one-to-one nearest matching; infinite on length mismatch.
pub fn worst_match(found: &[Complex64], reference: &[Complex64], metric: fn(Complex64, Complex64) -> f64) -> f64 {
    if found.len() != reference.len() {
        return f64::INFINITY;
    }
    let mut pool = reference.to_vec();
    found.iter().fold(0.0, |worst: f64, &z| {
        let (k, d) = pool.iter().enumerate().map(|(k, &r)| (k, metric(z, r))).min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        pool.swap_remove(k);
        worst.max(d)
    })
}

pub fn distance(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm()
}

/// `|⟨a|b⟩|² / (‖a‖² ‖b‖²)`
pub fn fidelity(a: &ComplexVector, b: &ComplexVector) -> f64 {
    let inner: Complex64 = a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum();
    let na: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    inner.norm_sqr() / (na * nb)
}
