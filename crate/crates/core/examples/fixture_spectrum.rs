//! Dense eigenvalues of the bundled 4×4 complex-scaled Hamiltonian next to
//! the tabulated reference values.

use resonance::fixture::Fixture;
use resonance::linalg::dense_eigen;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixture = Fixture::embedded()?;
    let eig = dense_eigen(&fixture.hamiltonian)?;
    println!("{:>22}  {:>22}  {:>9}", "computed", "tabulated", "|diff|");
    for reference in fixture.reference.diagonalization() {
        let k = eig.nearest(reference).expect("non-empty");
        let e = eig.eigenvalues[k];
        println!("{:>10.4} {:>+10.4}i  {:>10.4} {:>+10.4}i  {:>9.2e}", e.re, e.im, reference.re, reference.im, (e - reference).norm());
    }
    Ok(())
}
