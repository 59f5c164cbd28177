//! Potential theory of finite-gap sets and the Abel map.

mod abel;
mod approx;
mod dos;
mod edges;
mod equilibrium;
mod harmonic;

pub use abel::{
    abel_inverse, abel_jacobian, abel_map, shift_character, shift_residual, toda_frequencies, translate, AbelGeometry,
    AbelImage, Frequencies,
};
pub use approx::{approximation_experiment, truncate_gapset, ApproximationReport, ApproximationRow};
pub use dos::{
    density_of_states, dos_vs_equilibrium, geometric_mean, lyapunov_exponent, thouless_check, thouless_values,
    truncation_eigenvalues,
};
pub use equilibrium::{capacity, equilibrium_measure, green_function, EquilibriumData};
pub use harmonic::{xi_harmonic, HarmonicMeasures};
