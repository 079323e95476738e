//! Complex-scaled α–α spectrum at two angles. Continuum states swing with
//! the angle while the resonance stays put.

use resonance::physics::{check_angle, AlphaAlphaModel, RadialBasis, ScalingAngle, REFERENCE_RESONANCE};
use resonance::linalg::dense_eigen;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = AlphaAlphaModel::alpha_alpha(RadialBasis::default())?;
    for degrees in [15.0, 25.0] {
        let theta = ScalingAngle::from_degrees(degrees)?;
        let h = model.hamiltonian_checked(1.0, theta)?;
        let eig = dense_eigen(&h.matrix)?;
        let resonance = eig.eigenvalues[eig.nearest(REFERENCE_RESONANCE).expect("non-empty")];
        println!("θ = {degrees}°: resonance {resonance:.4}, exposed: {}", check_angle(theta, resonance)?);
        let mut low: Vec<_> = eig.eigenvalues.iter().filter(|e| e.re.abs() < 12.0).collect();
        low.sort_by(|a, b| a.re.total_cmp(&b.re));
        for e in low.iter().take(4) {
            println!("    {e:.4}  arg {:.1}°", e.arg().to_degrees());
        }
    }
    Ok(())
}
