//! Resonance energies of complex-scaled Hamiltonians from an iterative
//! HHL eigensolver, with eigenvector continuation to shrink the problem
//! first.
//!
//! - [`linalg`]: dense complex matrices, c-product, eigen and linear solvers
//! - [`physics`]: the α–α G-wave Hamiltonian in a Gaussian basis, complex scaled
//! - [`ec`]: training states, subspace, projection
//! - [`qsim`]: statevector simulator, phase estimation, HHL, Pauli strings
//! - [`ihhl`]: fixed-point iteration, dilation, deflation, traces
//! - [`fixture`]: the bundled 8×8 reference matrix with checksums
//! - [`verify`]: the acceptance suite behind `resonance verify`

pub mod cli;
pub mod ec;
pub mod fixture;
pub mod ihhl;
pub mod linalg;
pub mod physics;
pub mod qsim;
pub mod verify;
