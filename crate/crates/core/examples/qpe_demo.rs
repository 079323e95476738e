//! Phase estimation of a single-qubit phase gate. A dyadic phase lands on
//! one clock bin; anything else spreads over its neighbours.

use std::f64::consts::PI;

use num_complex::Complex64;
use resonance::linalg::ComplexMatrix;
use resonance::qsim::{qpe, QuantumState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let clock = 4;
    let eigenstate = QuantumState::from_amplitudes(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])?;
    for phase in [0.3125, 0.3] {
        let u = ComplexMatrix::diagonal(&[Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, 2.0 * PI * phase)]);
        let distribution = qpe(&u, &eigenstate, clock)?;
        println!("phase {phase}");
        for (k, p) in distribution.iter().enumerate().filter(|(_, p)| **p > 1e-3) {
            println!("  bin {k:>2} ({:.4}): {p:.4}", k as f64 / (1 << clock) as f64);
        }
    }
    Ok(())
}
