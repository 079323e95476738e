use num_complex::Complex64;

use super::{require_square, ComplexMatrix, ComplexVector, LinalgError, Tolerances, ONE, ZERO};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

impl LuFactors {
    pub fn factor(a: &ComplexMatrix) -> Result<Self, LinalgError> {
        let n = require_square(a)?;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (pivot_row, pivot_abs) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs == 0.0 {
                return Err(LinalgError::Singular { column: k });
            }
            if pivot_row != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                perm.swap(k, pivot_row);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == ZERO {
                    continue;
                }
                for j in k + 1..n {
                    let ukj = lu[(k, j)];
                    lu[(i, j)] -= factor * ukj;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>, LinalgError> {
        let n = self.dim();
        if b.len() != n {
            return Err(LinalgError::DimensionMismatch { expected: n, actual: b.len() });
        }
        let mut y: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut acc = y[i];
            for j in 0..i {
                acc -= self.lu[(i, j)] * y[j];
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in i + 1..n {
                acc -= self.lu[(i, j)] * y[j];
            }
            y[i] = acc / self.lu[(i, i)];
        }
        Ok(y)
    }

    pub fn inverse(&self) -> Result<ComplexMatrix, LinalgError> {
        let n = self.dim();
        let mut inv = ComplexMatrix::zeros(n, n);
        let mut e = vec![ZERO; n];
        for j in 0..n {
            e.iter_mut().for_each(|z| *z = ZERO);
            e[j] = ONE;
            let col = self.solve(&e)?;
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        Ok(inv)
    }
}

fn one_norm(a: &ComplexMatrix) -> f64 {
    (0..a.cols()).map(|j| (0..a.rows()).map(|i| a[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
}

pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    LuFactors::factor(a)?.inverse()
}

/// Solve `A x = b` with the default conditioning limit.
pub fn linear_solve(a: &ComplexMatrix, b: &ComplexVector) -> Result<ComplexVector, LinalgError> {
    linear_solve_with(a, b, &Tolerances::default())
}

pub fn linear_solve_with(a: &ComplexMatrix, b: &ComplexVector, tol: &Tolerances) -> Result<ComplexVector, LinalgError> {
    let lu = LuFactors::factor(a)?;
    if b.len() != lu.dim() {
        return Err(LinalgError::DimensionMismatch { expected: lu.dim(), actual: b.len() });
    }
    // Explicit inverse is affordable at these sizes and gives an exact 1-norm condition number.
    let condition = one_norm(a) * one_norm(&lu.inverse()?);
    if !condition.is_finite() || condition > tol.max_condition {
        return Err(LinalgError::IllConditioned { condition });
    }
    let x = ComplexVector::new(lu.solve(b.as_slice())?);
    if !x.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    Ok(x)
}
