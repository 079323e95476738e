//! Pauli strings. A word is written most significant qubit first, so
//! `word[0]` acts on qubit `m − 1` and the last letter on qubit 0, matching
//! the left-to-right Kronecker product.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{log2_exact, QsimError};
use crate::linalg::ComplexMatrix;

const DROP_RELATIVE: f64 = 1e-15;
const TROTTER_MAX_QUBITS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Self::I),
            'X' => Some(Self::X),
            'Y' => Some(Self::Y),
            'Z' => Some(Self::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Self::I => 'I',
            Self::X => 'X',
            Self::Y => 'Y',
            Self::Z => 'Z',
        }
    }

    fn flips(self) -> bool {
        matches!(self, Self::X | Self::Y)
    }

    /// `⟨bit ⊕ flip| P |bit⟩`
    fn phase(self, bit: usize) -> Complex64 {
        let sign = if bit == 1 { -1.0 } else { 1.0 };
        match self {
            Self::I | Self::X => Complex64::new(1.0, 0.0),
            Self::Y => Complex64::new(0.0, sign),
            Self::Z => Complex64::new(sign, 0.0),
        }
    }

    /// `a·b = phase · c`
    fn multiply(self, other: Self) -> (Complex64, Self) {
        use Pauli::*;
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        match (self, other) {
            (I, p) | (p, I) => (one, p),
            (a, b) if a == b => (one, I),
            (X, Y) => (i, Z),
            (Y, X) => (-i, Z),
            (Y, Z) => (i, X),
            (Z, Y) => (-i, X),
            (Z, X) => (i, Y),
            (X, Z) => (-i, Y),
            _ => unreachable!(),
        }
    }
}

/// `coefficient · σ_{word[0]} ⊗ … ⊗ σ_{word[m−1]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coefficient: Complex64,
    pub word: String,
}

impl PauliTerm {
    pub fn new(coefficient: Complex64, word: impl Into<String>) -> Result<Self, QsimError> {
        let word = word.into();
        if word.is_empty() || word.chars().any(|c| Pauli::from_char(c).is_none()) {
            return Err(QsimError::InvalidPauliWord(word));
        }
        Ok(Self { coefficient, word })
    }

    pub fn num_qubits(&self) -> usize {
        self.word.len()
    }

    fn letters(&self) -> Vec<Pauli> {
        self.word.chars().map(|c| Pauli::from_char(c).expect("validated word")).collect()
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        pauli_to_matrix(std::slice::from_ref(self), self.num_qubits()).expect("term matches its own width")
    }
}

/// `P|col⟩ = phase |row⟩`.
fn act(letters: &[Pauli], col: usize) -> (usize, Complex64) {
    let m = letters.len();
    let mut row = col;
    let mut phase = Complex64::new(1.0, 0.0);
    for (pos, p) in letters.iter().enumerate() {
        let qubit = m - 1 - pos;
        let bit = col >> qubit & 1;
        phase *= p.phase(bit);
        if p.flips() {
            row ^= 1 << qubit;
        }
    }
    (row, phase)
}

/// `c_P = Tr(P H) / 2^m` for every nonzero Pauli string.
pub fn pauli_decompose(h: &ComplexMatrix) -> Result<Vec<PauliTerm>, QsimError> {
    if !h.is_square() {
        return Err(QsimError::DimensionMismatch { expected: h.rows(), actual: h.cols() });
    }
    let dim = h.rows();
    let m = log2_exact(dim)?;
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let mut terms = Vec::new();
    let mut letters = vec![Pauli::I; m];
    for code in 0..(1usize << (2 * m)) {
        for (pos, slot) in letters.iter_mut().enumerate() {
            *slot = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][code >> (2 * (m - 1 - pos)) & 3];
        }
        // Tr(P H) = Σ_y ⟨y|P|x⟩⟨x|H|y⟩ with x = P's image of y.
        let mut trace = Complex64::new(0.0, 0.0);
        for y in 0..dim {
            let (x, phase) = act(&letters, y);
            trace += phase * h[(y, x)];
        }
        let coefficient = trace / dim as f64;
        if coefficient.norm() > DROP_RELATIVE * scale {
            terms.push(PauliTerm { coefficient, word: letters.iter().map(|p| p.as_char()).collect() });
        }
    }
    Ok(terms)
}

pub fn pauli_to_matrix(terms: &[PauliTerm], num_qubits: usize) -> Result<ComplexMatrix, QsimError> {
    let dim = 1usize << num_qubits;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for term in terms {
        if term.num_qubits() != num_qubits {
            return Err(QsimError::DimensionMismatch { expected: num_qubits, actual: term.num_qubits() });
        }
        let letters = term.letters();
        for col in 0..dim {
            let (row, phase) = act(&letters, col);
            data[row * dim + col] += phase * term.coefficient;
        }
    }
    Ok(ComplexMatrix::from_row_major(dim, dim, data).expect("square"))
}

/// Product of two Pauli sums, like terms merged and zeros dropped.
pub fn multiply(a: &[PauliTerm], b: &[PauliTerm]) -> Vec<PauliTerm> {
    let mut acc: BTreeMap<String, Complex64> = BTreeMap::new();
    for ta in a {
        for tb in b {
            let mut coefficient = ta.coefficient * tb.coefficient;
            let word: String = ta
                .letters()
                .into_iter()
                .zip(tb.letters())
                .map(|(pa, pb)| {
                    let (phase, p) = pa.multiply(pb);
                    coefficient *= phase;
                    p.as_char()
                })
                .collect();
            *acc.entry(word).or_default() += coefficient;
        }
    }
    acc.into_iter()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(word, coefficient)| PauliTerm { coefficient, word })
        .collect()
}

fn mode_word(mode: usize, n_modes: usize, at_mode: Pauli) -> String {
    (0..n_modes)
        .rev()
        .map(|q| match q.cmp(&mode) {
            std::cmp::Ordering::Less => 'Z',
            std::cmp::Ordering::Equal => at_mode.as_char(),
            std::cmp::Ordering::Greater => 'I',
        })
        .collect()
}

fn check_mode(mode: usize, n_modes: usize) -> Result<(), QsimError> {
    if mode >= n_modes {
        return Err(QsimError::ModeOutOfRange { mode, n_modes });
    }
    Ok(())
}

/// `a_j = Z_0 ⋯ Z_{j−1} (X_j + iY_j)/2`; occupied mode `j` is qubit `j` in `|1⟩`.
pub fn annihilation(mode: usize, n_modes: usize) -> Result<Vec<PauliTerm>, QsimError> {
    check_mode(mode, n_modes)?;
    Ok(vec![
        PauliTerm { coefficient: Complex64::new(0.5, 0.0), word: mode_word(mode, n_modes, Pauli::X) },
        PauliTerm { coefficient: Complex64::new(0.0, 0.5), word: mode_word(mode, n_modes, Pauli::Y) },
    ])
}

/// `a†_j = Z_0 ⋯ Z_{j−1} (X_j − iY_j)/2`
pub fn creation(mode: usize, n_modes: usize) -> Result<Vec<PauliTerm>, QsimError> {
    check_mode(mode, n_modes)?;
    Ok(vec![
        PauliTerm { coefficient: Complex64::new(0.5, 0.0), word: mode_word(mode, n_modes, Pauli::X) },
        PauliTerm { coefficient: Complex64::new(0.0, -0.5), word: mode_word(mode, n_modes, Pauli::Y) },
    ])
}

/// Pauli form of `a†_i a_j` on `n_modes` qubits.
pub fn jordan_wigner(i: usize, j: usize, n_modes: usize) -> Result<Vec<PauliTerm>, QsimError> {
    Ok(multiply(&creation(i, n_modes)?, &annihilation(j, n_modes)?))
}

/// First-order Trotter product `Π_k exp(i c_k P_k t/steps)` repeated `steps`
/// times; real coefficients only, at most four qubits.
pub fn trotter_evolution(terms: &[PauliTerm], t: f64, steps: usize) -> Result<ComplexMatrix, QsimError> {
    let Some(first) = terms.first() else {
        return Err(QsimError::InvalidConfig("empty Pauli sum".into()));
    };
    let m = first.num_qubits();
    if m > TROTTER_MAX_QUBITS {
        return Err(QsimError::TooManyQubits { requested: m, limit: TROTTER_MAX_QUBITS });
    }
    if steps == 0 {
        return Err(QsimError::InvalidConfig("trotter steps must be positive".into()));
    }
    let dim = 1usize << m;
    let dt = t / steps as f64;
    let mut step = ComplexMatrix::identity(dim);
    for term in terms {
        if term.coefficient.im.abs() > 1e-12 * term.coefficient.norm().max(1.0) {
            return Err(QsimError::NotHermitian { defect: term.coefficient.im.abs() });
        }
        let angle = term.coefficient.re * dt;
        let p = PauliTerm { coefficient: Complex64::new(0.0, angle.sin()), word: term.word.clone() }.to_matrix();
        let factor = ComplexMatrix::identity(dim).scale(Complex64::new(angle.cos(), 0.0)).add(&p);
        step = factor.matmul(&step)?;
    }
    let mut out = ComplexMatrix::identity(dim);
    for _ in 0..steps {
        out = step.matmul(&out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_term_decompositions() {
        let z = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
        assert_eq!(pauli_decompose(&z).unwrap(), vec![PauliTerm::new(Complex64::new(1.0, 0.0), "Z").unwrap()]);
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert_eq!(pauli_decompose(&x).unwrap(), vec![PauliTerm::new(Complex64::new(1.0, 0.0), "X").unwrap()]);
    }

    #[test]
    fn word_order_is_most_significant_first() {
        // Z on qubit 0 only: diag(1, −1, 1, −1)
        let m = PauliTerm::new(Complex64::new(1.0, 0.0), "IZ").unwrap().to_matrix();
        let d: Vec<f64> = (0..4).map(|k| m[(k, k)].re).collect();
        assert_eq!(d, vec![1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn number_operator() {
        let n0 = jordan_wigner(0, 0, 1).unwrap();
        let m = pauli_to_matrix(&n0, 1).unwrap();
        assert!(m.sub(&ComplexMatrix::diagonal(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])).max_abs() < 1e-15);
        let mut words: Vec<(String, f64)> = n0.iter().map(|t| (t.word.clone(), t.coefficient.re)).collect();
        words.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(words, vec![("I".into(), 0.5), ("Z".into(), -0.5)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(pauli_decompose(&ComplexMatrix::identity(3)), Err(QsimError::NotPowerOfTwo(3))));
        assert!(matches!(jordan_wigner(2, 0, 2), Err(QsimError::ModeOutOfRange { .. })));
        assert!(PauliTerm::new(Complex64::new(1.0, 0.0), "XQ").is_err());
    }

    #[test]
    fn trotter_single_term_is_exact() {
        let terms = vec![PauliTerm::new(Complex64::new(0.7, 0.0), "X").unwrap()];
        let u = trotter_evolution(&terms, 1.3, 1).unwrap();
        let exact = super::super::evolve_unitary(&pauli_to_matrix(&terms, 1).unwrap(), 1.3).unwrap();
        assert!(u.sub(&exact).max_abs() < 1e-14);
    }
}
