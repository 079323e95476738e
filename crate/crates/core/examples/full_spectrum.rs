//! Every eigenvalue of the fixture by repeated deflation, with the
//! convergence history of the first pair written as CSV to stdout.

use resonance::fixture::Fixture;
use resonance::ihhl::{full_spectrum, IhhlOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixture = Fixture::embedded()?;
    let seeds = [fixture.reference.seed_first.clone(), fixture.reference.seed_second.clone()];
    let spectrum = full_spectrum(&fixture.hamiltonian, &seeds, &IhhlOptions::default(), 2024)?;
    for pair in &spectrum.pairs {
        println!("{:.4}  after {} iterations", pair.eigenvalue, pair.trace.iterations_used);
    }
    println!();
    print!("{}", spectrum.pairs[0].trace.to_csv());
    Ok(())
}
