//! The two seeded eigenpairs of the fixture with each linear-solver backend.
//! The second solve deflates the first eigenvector.

use resonance::fixture::Fixture;
use resonance::ihhl::{ihhl_solve, DeflationSet, IhhlOptions, SolverKind};
use resonance::qsim::HhlConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixture = Fixture::embedded()?;
    let h = &fixture.hamiltonian;
    for solver in [SolverKind::Classical, SolverKind::HhlIdeal, SolverKind::HhlCircuit] {
        let options = IhhlOptions { hhl: HhlConfig::circuit(10), ..IhhlOptions::with_solver(solver) };
        let first = ihhl_solve(h, &fixture.reference.seed_first, None, &options, &DeflationSet::new())?;
        let mut deflation = DeflationSet::new();
        deflation.push(first.eigenvalue, &first.eigenvector)?;
        let second = ihhl_solve(h, &fixture.reference.seed_second, None, &options, &deflation)?;
        println!("{} ({} updates)", solver.as_str(), options.energy_update().as_str());
        for (label, r) in [("first", &first), ("second", &second)] {
            println!(
                "  {label:<6} {:.4}  iterations {:>2}  residual {:.1e}",
                r.eigenvalue, r.trace.iterations_used, r.residual_norm
            );
        }
    }
    Ok(())
}
