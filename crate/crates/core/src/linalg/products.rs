use num_complex::Complex64;

use super::{ComplexMatrix, ComplexVector, LinalgError, Tolerances};

/// Which pairing a routine should orthonormalize against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerProduct {
    Hermitian,
    CProduct,
}

/// Bilinear pairing `Σ uᵢ vᵢ`, no conjugation.
pub fn c_product(u: &ComplexVector, v: &ComplexVector) -> Result<Complex64, LinalgError> {
    if u.len() != v.len() {
        return Err(LinalgError::DimensionMismatch { expected: u.len(), actual: v.len() });
    }
    Ok(u.iter().zip(v.iter()).map(|(a, b)| a * b).sum())
}

/// `Σ conj(uᵢ) vᵢ`
pub fn hermitian_inner(u: &ComplexVector, v: &ComplexVector) -> Result<Complex64, LinalgError> {
    if u.len() != v.len() {
        return Err(LinalgError::DimensionMismatch { expected: u.len(), actual: v.len() });
    }
    Ok(u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum())
}

pub fn hermitian_norm(v: &ComplexVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn hermitian_normalize(v: &ComplexVector) -> Result<ComplexVector, LinalgError> {
    let n = hermitian_norm(v);
    if n == 0.0 || !n.is_finite() {
        return Err(LinalgError::QuasiNull { c_norm_sq: n * n });
    }
    Ok(v.scale(Complex64::new(1.0 / n, 0.0)))
}

/// Scale `v` so that `(v|v) = 1`. The square-root branch is the principal one.
pub fn c_normalize(v: &ComplexVector, tol: &Tolerances) -> Result<ComplexVector, LinalgError> {
    let norm_sq = hermitian_norm(v).powi(2);
    let c = c_product(v, v)?;
    if norm_sq == 0.0 || c.norm() < tol.quasi_null * norm_sq {
        return Err(LinalgError::QuasiNull { c_norm_sq: c.norm() / norm_sq.max(f64::MIN_POSITIVE) });
    }
    Ok(v.scale(c.sqrt().inv()))
}

/// `(v|Hv) / (v|v)`
pub fn c_rayleigh_quotient(h: &ComplexMatrix, v: &ComplexVector) -> Result<Complex64, LinalgError> {
    let hv = h.matvec(v)?;
    let denom = c_product(v, v)?;
    let norm_sq = hermitian_norm(v).powi(2);
    if denom.norm() < Tolerances::default().quasi_null * norm_sq || norm_sq == 0.0 {
        return Err(LinalgError::QuasiNull { c_norm_sq: denom.norm() / norm_sq.max(f64::MIN_POSITIVE) });
    }
    Ok(c_product(v, &hv)? / denom)
}

/// Result of an orthonormalization pass.
#[derive(Debug, Clone, PartialEq)]
pub struct GramSchmidt {
    pub vectors: Vec<ComplexVector>,
    /// Input positions that were dropped as linearly dependent.
    pub dropped: Vec<usize>,
}

/// Orthonormalize in input order; dependent inputs are dropped.
pub fn gram_schmidt(vectors: &[ComplexVector], product: InnerProduct) -> Result<GramSchmidt, LinalgError> {
    gram_schmidt_with(vectors, product, &Tolerances::default())
}

/// Modified Gram-Schmidt with one full re-orthogonalization pass, which keeps
/// the output Gram matrix at the identity even when the inputs are nearly
/// collinear (training vectors from neighbouring couplings are).
pub fn gram_schmidt_with(
    vectors: &[ComplexVector],
    product: InnerProduct,
    tol: &Tolerances,
) -> Result<GramSchmidt, LinalgError> {
    let first = vectors.first().ok_or(LinalgError::Empty)?;
    let dim = first.len();
    let pair = |u: &ComplexVector, v: &ComplexVector| match product {
        InnerProduct::Hermitian => hermitian_inner(u, v),
        InnerProduct::CProduct => c_product(u, v),
    };

    let mut out: Vec<ComplexVector> = Vec::new();
    let mut dropped = Vec::new();
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(LinalgError::DimensionMismatch { expected: dim, actual: v.len() });
        }
        let original = hermitian_norm(v);
        if original == 0.0 {
            dropped.push(index);
            continue;
        }
        let mut w = v.clone();
        for _pass in 0..2 {
            for q in &out {
                let coeff = pair(q, &w)?;
                w = w.axpy(-coeff, q);
            }
        }
        let residual = hermitian_norm(&w);
        if residual < tol.dependence * original {
            dropped.push(index);
            continue;
        }
        let unit = match product {
            InnerProduct::Hermitian => w.scale(Complex64::new(1.0 / residual, 0.0)),
            InnerProduct::CProduct => c_normalize(&w, tol)?,
        };
        out.push(unit);
    }
    Ok(GramSchmidt { vectors: out, dropped })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn c_product_basics() {
        let e1 = ComplexVector::basis(3, 0);
        assert_eq!(c_product(&e1, &e1).unwrap(), c(1.0, 0.0));
        let v = ComplexVector::new(vec![c(1.0, 0.0), c(0.0, 1.0)]);
        assert_eq!(c_product(&v, &v).unwrap(), c(0.0, 0.0));
        assert!(c_product(&v, &e1).is_err());
    }

    #[test]
    fn hermitian_norm_basics() {
        let v = ComplexVector::new(vec![c(3.0, 0.0), c(0.0, 4.0)]);
        assert_eq!(hermitian_norm(&v), 5.0);
        assert_eq!(hermitian_norm(&ComplexVector::zeros(4)), 0.0);
    }

    #[test]
    fn gram_schmidt_hermitian_two_vectors() {
        let vs = [ComplexVector::from_real(&[1.0, 0.0]), ComplexVector::from_real(&[1.0, 1.0])];
        let gs = gram_schmidt(&vs, InnerProduct::Hermitian).unwrap();
        assert_eq!(gs.vectors.len(), 2);
        assert!((gs.vectors[1][0]).norm() < 1e-15);
        assert!((gs.vectors[1][1] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn gram_schmidt_drops_dependent() {
        let vs = [ComplexVector::from_real(&[1.0, 0.0]), ComplexVector::from_real(&[2.0, 0.0])];
        let gs = gram_schmidt(&vs, InnerProduct::Hermitian).unwrap();
        assert_eq!(gs.vectors.len(), 1);
        assert_eq!(gs.dropped, vec![1]);
    }

    #[test]
    fn gram_schmidt_c_product_quasi_null() {
        let vs = [ComplexVector::new(vec![c(1.0, 0.0), c(0.0, 1.0)])];
        assert!(matches!(gram_schmidt(&vs, InnerProduct::CProduct), Err(LinalgError::QuasiNull { .. })));
    }

    #[test]
    fn gram_schmidt_c_product_orthonormal() {
        let vs = [
            ComplexVector::new(vec![c(1.0, 0.3), c(0.2, -0.5), c(0.0, 1.0)]),
            ComplexVector::new(vec![c(-0.4, 0.1), c(1.0, 0.0), c(0.3, 0.3)]),
        ];
        let gs = gram_schmidt(&vs, InnerProduct::CProduct).unwrap();
        for (i, u) in gs.vectors.iter().enumerate() {
            for (j, v) in gs.vectors.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((c_product(u, v).unwrap() - c(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn c_normalize_rejects_zero() {
        assert!(c_normalize(&ComplexVector::zeros(2), &Tolerances::default()).is_err());
    }
}
