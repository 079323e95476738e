//! Complex Schur decomposition by Hessenberg reduction and shifted QR sweeps,
//! and the eigen decompositions derived from it.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::{hermitian_norm, require_square, ComplexMatrix, ComplexVector, LinalgError, LuFactors, Tolerances, ONE, ZERO};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// `A = Q T Q†` with `Q` unitary and `T` upper triangular.
#[derive(Debug, Clone)]
pub struct Schur {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
}

/// Eigenpairs sorted by ascending real part, then ascending imaginary part.
/// Column `k` of `eigenvectors` has unit Hermitian norm and pairs with `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<Complex64>,
    pub eigenvectors: ComplexMatrix,
    /// `‖A v − λ v‖₂` (or `‖H v − λ N v‖₂` for the generalized problem).
    pub residual_norms: Vec<f64>,
}

impl EigenDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvector(&self, k: usize) -> ComplexVector {
        self.eigenvectors.column(k)
    }

    /// Index of the eigenvalue nearest to `target` in the complex plane.
    pub fn nearest(&self, target: Complex64) -> Option<usize> {
        self.eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - target).norm().total_cmp(&(b.1 - target).norm()))
            .map(|(i, _)| i)
    }
}

/// Real eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

pub(crate) fn spectral_order(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Complex Givens rotation `G = [[c, s], [-s̄, c]]` with `G [a; b] = [r; 0]`.
#[derive(Clone, Copy)]
struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    fn zeroing(a: Complex64, b: Complex64) -> Self {
        let bn = b.norm();
        if bn == 0.0 {
            return Self { c: 1.0, s: ZERO };
        }
        let an = a.norm();
        if an == 0.0 {
            return Self { c: 0.0, s: b.conj() / bn };
        }
        let r = an.hypot(bn);
        Self { c: an / r, s: (a / an) * b.conj() / r }
    }

    /// Rows `k`, `k+1` ← `G` applied from the left, over columns `cols`.
    fn apply_left(&self, m: &mut ComplexMatrix, k: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let x = m[(k, j)];
            let y = m[(k + 1, j)];
            m[(k, j)] = x * self.c + self.s * y;
            m[(k + 1, j)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// Columns `k`, `k+1` ← multiplied on the right by `G†`, over rows `rows`.
    fn apply_right_adjoint(&self, m: &mut ComplexMatrix, k: usize, rows: std::ops::Range<usize>) {
        for i in rows {
            let x = m[(i, k)];
            let y = m[(i, k + 1)];
            m[(i, k)] = x * self.c + y * self.s.conj();
            m[(i, k + 1)] = -x * self.s + y * self.c;
        }
    }
}

fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if v[0].norm() == 0.0 { ONE } else { v[0] / v[0].norm() };
        v[0] += phase * xnorm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= vnorm);

        // H ← P H with P = I − 2 v v†
        for j in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)]).sum();
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= 2.0 * vr * dot;
            }
        }
        // H ← H P, Q ← Q P
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let dot: Complex64 = v.iter().enumerate().map(|(r, vr)| m[(i, k + 1 + r)] * vr).sum();
                for (r, vr) in v.iter().enumerate() {
                    m[(i, k + 1 + r)] -= 2.0 * dot * vr.conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (h, q)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let (l1, l2) = (mean + disc, mean - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Complex Schur form of a square matrix.
pub fn schur(a: &ComplexMatrix) -> Result<Schur, LinalgError> {
    let n = require_square(a)?;
    if !a.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let (mut t, mut q) = hessenberg(a);
    let eps = f64::EPSILON;
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut hi = n - 1;
    let mut sweeps = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        // Locate the start of the active unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = t[(lo, lo - 1)].norm();
            let diag = t[(lo, lo)].norm() + t[(lo - 1, lo - 1)].norm();
            if sub <= eps * diag || sub <= eps * eps * scale {
                t[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            sweeps = 0;
            continue;
        }
        sweeps += 1;
        total += 1;
        if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(LinalgError::NoConvergence { iterations: total });
        }
        let shift = if sweeps % 11 == 10 {
            // Exceptional shift breaks rare cycling.
            t[(hi, hi)] + Complex64::new(1.5 * t[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(t[(hi - 1, hi - 1)], t[(hi - 1, hi)], t[(hi, hi - 1)], t[(hi, hi)])
        };

        for k in lo..=hi {
            t[(k, k)] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let g = Givens::zeroing(t[(k, k)], t[(k + 1, k)]);
            g.apply_left(&mut t, k, k..n);
            t[(k + 1, k)] = ZERO;
            rotations.push(g);
        }
        for (offset, g) in rotations.iter().enumerate() {
            let k = lo + offset;
            g.apply_right_adjoint(&mut t, k, 0..(k + 2).min(hi + 1));
            g.apply_right_adjoint(&mut q, k, 0..n);
        }
        for k in lo..=hi {
            t[(k, k)] += shift;
        }
    }
    for i in 0..n {
        for j in 0..i {
            t[(i, j)] = ZERO;
        }
    }
    Ok(Schur { q, t })
}

/// Eigenvectors of upper-triangular `t` by back substitution, mapped through `q`.
fn triangular_eigenvectors(s: &Schur) -> ComplexMatrix {
    let n = s.t.rows();
    let t = &s.t;
    let small = f64::EPSILON * t.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut vectors = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut y = vec![ZERO; n];
        y[k] = ONE;
        for j in (0..k).rev() {
            let acc: Complex64 = (j + 1..=k).map(|l| t[(j, l)] * y[l]).sum();
            let mut denom = t[(j, j)] - lambda;
            if denom.norm() < small {
                denom = Complex64::new(small, 0.0);
            }
            y[j] = -acc / denom;
        }
        let mut v: ComplexVector = (0..n).map(|i| (0..=k).map(|l| s.q[(i, l)] * y[l]).sum()).collect();
        let norm = hermitian_norm(&v);
        v = v.scale(Complex64::new(1.0 / norm, 0.0));
        fix_phase(&mut v);
        for i in 0..n {
            vectors[(i, k)] = v[i];
        }
    }
    vectors
}

/// Rotate so the largest-magnitude component is real and positive.
pub(crate) fn fix_phase(v: &mut ComplexVector) {
    let Some(pivot) = v.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())) else {
        return;
    };
    if pivot.norm() == 0.0 {
        return;
    }
    let rot = pivot.conj() / pivot.norm();
    for z in v.as_mut_slice() {
        *z *= rot;
    }
}

fn residual(a: &ComplexMatrix, lambda: Complex64, v: &ComplexVector, n_mat: Option<&ComplexMatrix>) -> f64 {
    let av = a.matvec(v).expect("square");
    let bv = match n_mat {
        Some(m) => m.matvec(v).expect("square"),
        None => v.clone(),
    };
    hermitian_norm(&av.axpy(-lambda, &bv))
}

fn sorted_decomposition(
    values: Vec<Complex64>,
    vectors: ComplexMatrix,
    a: &ComplexMatrix,
    n_mat: Option<&ComplexMatrix>,
) -> EigenDecomposition {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| spectral_order(&values[i], &values[j]));
    let eigenvalues: Vec<Complex64> = order.iter().map(|&i| values[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    let residual_norms = (0..n).map(|k| residual(a, eigenvalues[k], &eigenvectors.column(k), n_mat)).collect();
    EigenDecomposition { eigenvalues, eigenvectors, residual_norms }
}

/// All eigenpairs of a general (non-normal) complex matrix.
pub fn dense_eigen(a: &ComplexMatrix) -> Result<EigenDecomposition, LinalgError> {
    let s = schur(a)?;
    let values: Vec<Complex64> = (0..a.rows()).map(|k| s.t[(k, k)]).collect();
    let vectors = triangular_eigenvectors(&s);
    let out = sorted_decomposition(values, vectors, a, None);
    if out.eigenvalues.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    Ok(out)
}

/// Hermitian eigenproblem: the Schur vectors of a Hermitian matrix are already
/// an orthonormal eigenbasis, so no back substitution is needed.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen, LinalgError> {
    let n = require_square(a)?;
    // Symmetrize first so roundoff in the input cannot leak into T.
    let sym = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let s = schur(&sym)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s.t[(i, i)].re.total_cmp(&s.t[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| s.t[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |r, c| s.q[(r, order[c])]);
    Ok(HermitianEigen { eigenvalues, eigenvectors })
}

/// `H v = λ N v` for invertible `N`.
pub fn generalized_eigen(h: &ComplexMatrix, n_mat: &ComplexMatrix) -> Result<EigenDecomposition, LinalgError> {
    let n = require_square(h)?;
    if require_square(n_mat)? != n {
        return Err(LinalgError::DimensionMismatch { expected: n, actual: n_mat.rows() });
    }
    let lu = LuFactors::factor(n_mat).map_err(|_| LinalgError::RedundantBasis)?;
    let n_inv = lu.inverse()?;
    let condition = n_mat.frobenius_norm() * n_inv.frobenius_norm();
    if !condition.is_finite() || condition > Tolerances::default().max_condition {
        return Err(LinalgError::RedundantBasis);
    }
    let reduced = n_inv.matmul(h)?;
    let s = schur(&reduced)?;
    let values: Vec<Complex64> = (0..n).map(|k| s.t[(k, k)]).collect();
    let vectors = triangular_eigenvectors(&s);
    Ok(sorted_decomposition(values, vectors, h, Some(n_mat)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_spectrum() {
        let e = dense_eigen(&ComplexMatrix::identity(4)).unwrap();
        assert!(e.eigenvalues.iter().all(|z| (z - ONE).norm() < 1e-14));
    }

    #[test]
    fn one_by_one() {
        let m = ComplexMatrix::from_row_major(1, 1, vec![c(2.0, -1.0)]).unwrap();
        let e = dense_eigen(&m).unwrap();
        assert_eq!(e.eigenvalues, vec![c(2.0, -1.0)]);
    }

    #[test]
    fn jordan_block_does_not_blow_up() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let e = dense_eigen(&m).unwrap();
        assert!(e.eigenvectors.is_finite());
        assert!(e.residual_norms.iter().all(|&r| r < 1e-10));
    }

    #[test]
    fn generalized_diag() {
        let h = ComplexMatrix::diagonal(&[c(2.0, 0.0), c(6.0, 0.0)]);
        let n = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let e = generalized_eigen(&h, &n).unwrap();
        assert!((e.eigenvalues[0] - c(2.0, 0.0)).norm() < 1e-14);
        assert!((e.eigenvalues[1] - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn generalized_singular_overlap() {
        let h = ComplexMatrix::identity(2);
        let n = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert_eq!(generalized_eigen(&h, &n).unwrap_err(), LinalgError::RedundantBasis);
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(dense_eigen(&ComplexMatrix::zeros(2, 3)), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn hermitian_identity_keeps_orthonormal_vectors() {
        let h = hermitian_eigen(&ComplexMatrix::identity(3)).unwrap();
        let gram = h.eigenvectors.adjoint().matmul(&h.eigenvectors).unwrap();
        assert!(gram.sub(&ComplexMatrix::identity(3)).frobenius_norm() < 1e-14);
    }
}
