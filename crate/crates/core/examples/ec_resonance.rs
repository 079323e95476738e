//! Eigenvector continuation: train on bound ground states at stronger
//! coupling, then read the resonance off the small projected problem.

use resonance::ec::{build_subspace, default_training_lambdas, project_target, solve_training_set};
use resonance::linalg::dense_eigen;
use resonance::physics::{AlphaAlphaModel, RadialBasis, ScalingAngle, REFERENCE_RESONANCE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = AlphaAlphaModel::alpha_alpha(RadialBasis::default())?;
    let points = solve_training_set(&default_training_lambdas(), &model)?;
    for p in &points {
        println!("λ = {:.4}  E = {:.4} MeV", p.lambda, p.energy);
    }
    let subspace = build_subspace(&points)?;
    let theta = ScalingAngle::from_degrees(20.0)?;
    let projected = project_target(&subspace, &model, 1.0, theta)?;
    let ec = projected.resonance_candidate(None)?;

    let full = dense_eigen(&model.hamiltonian(1.0, theta).matrix)?;
    let exact = full.eigenvalues[full.nearest(REFERENCE_RESONANCE).expect("non-empty")];
    println!("EC ({} vectors): {ec:.4}", subspace.dimension());
    println!("full basis:     {exact:.4}");
    println!("relative gap:   {:.2e}", (ec - exact).norm() / exact.norm());
    Ok(())
}
