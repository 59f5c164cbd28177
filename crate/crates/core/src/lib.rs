//! Numerical laboratory for the Toda lattice on finite-gap spectra.
//!
//! * [`jacobi`]: Jacobi operators, the Toda flow, Lax pair, transfer matrices.
//! * [`spectral`]: spectra, Weyl functions, the M-matrix, Dirichlet data.
//! * [`flow`]: Craig conditions, the vector field Ψ, the Dubrovin flow, trace formulas.
//! * [`potential`]: equilibrium measure, Green's function, Abel map, density of states.

pub mod error;
pub mod fit;
pub mod flow;
pub mod jacobi;
pub mod linalg;
pub mod ode;
pub mod potential;
pub mod quad;
pub mod spectral;

pub use error::{Error, Result};
pub use flow::{CraigReport, DubrovinTrajectory};
pub use jacobi::{JacobiOperator, Sequence, TodaState, Topology, TransferStep};
pub use num_complex::Complex64;
pub use potential::{AbelGeometry, AbelImage, EquilibriumData};
pub use spectral::{AngleVector, DirichletDivisor, GapSet, Sheet, WeylMMatrix};
