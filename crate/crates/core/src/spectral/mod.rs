//! Spectra, Weyl functions, the M-matrix and Dirichlet data.

pub mod divisor;
pub mod floquet;
pub mod gapset;
pub mod mmatrix;
pub mod weyl;

pub use divisor::{
    angles_from_divisor, dirichlet_data, divisor_from_angles, reduce_angle, AngleVector, DirichletDivisor,
    DirichletPoint, Sheet,
};
pub use floquet::{discriminant, monodromy, periodic_spectrum};
pub use gapset::{Band, Gap, GapSet, Truncation};
pub use mmatrix::{flow_generator, m_matrix, m_matrix_flow_residual, m_matrix_flow_residual_at, WeylMMatrix};
pub use weyl::{
    green_diag, green_from_m, reflectionless_residual, weyl_m, weyl_m_continued_fraction, weyl_vectors, Side,
    WeylVectors,
};
