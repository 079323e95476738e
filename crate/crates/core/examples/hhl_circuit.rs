//! One HHL solve of a small Hermitian system, the gate list it ran, and how
//! the answer sharpens with more clock qubits.

use resonance::linalg::{linear_solve, ComplexMatrix, ComplexVector};
use resonance::qsim::{hhl_circuit, hhl_run, resolve_settings, HhlConfig, SpectralForm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = ComplexMatrix::from_real_rows(&[
        &[1.5, 0.5, 0.0, 0.2],
        &[0.5, -1.0, 0.3, 0.0],
        &[0.0, 0.3, 2.0, -0.4],
        &[0.2, 0.0, -0.4, -0.7],
    ])?;
    let b = ComplexVector::from_real(&[1.0, 0.0, 0.5, -0.5]);
    let exact = linear_solve(&a, &b)?;

    for clock in [4, 6, 8, 10] {
        let solution = hhl_run(&a, &b, &HhlConfig::circuit(clock))?;
        let error = solution.x.sub(&exact).max_abs() / exact.max_abs();
        println!(
            "n_c = {clock:>2}: relative error {error:.2e}, post-selection probability {:.3e}",
            solution.success_probability.unwrap_or_default()
        );
    }

    let spectral = SpectralForm::new(&a)?;
    let settings = resolve_settings(&HhlConfig::circuit(4), spectral.spectral_radius())?;
    let circuit = hhl_circuit(&spectral, &settings)?;
    println!("\n4 clock qubits, t = {:.4}: {} gates", settings.evolution_time, circuit.records().len());
    for record in circuit.records() {
        println!("  {:<28} targets {:?} controls {:?}", record.gate, record.targets, record.controls);
    }
    Ok(())
}
