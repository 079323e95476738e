//! Pauli-string expansion of a Hermitian matrix and the Jordan–Wigner image
//! of a hopping term.

use num_complex::Complex64;
use resonance::linalg::ComplexMatrix;
use resonance::qsim::{jordan_wigner, pauli_decompose, pauli_to_matrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = ComplexMatrix::from_fn(4, 4, |i, j| match (i, j) {
        _ if i == j => Complex64::new(i as f64, 0.0),
        (0, 3) => Complex64::new(0.0, 0.5),
        (3, 0) => Complex64::new(0.0, -0.5),
        _ if i + 1 == j || j + 1 == i => Complex64::new(0.25, 0.0),
        _ => Complex64::new(0.0, 0.0),
    });
    let terms = pauli_decompose(&h)?;
    for t in &terms {
        println!("{:+.4} {}", t.coefficient.re, t.word);
    }
    let rebuilt = pauli_to_matrix(&terms, 2)?;
    println!("round-trip error {:.1e}", rebuilt.sub(&h).max_abs());

    println!("\na†_0 a_2 on 3 modes:");
    for t in jordan_wigner(0, 2, 3)? {
        println!("{:+.3} {}", t.coefficient, t.word);
    }
    Ok(())
}
