//! Craig conditions, the vector field Ψ, the angle flow and trace formulas.

mod craig;
mod dubrovin;
mod psi;
mod trace;

pub use craig::{craig_report, CraigReport};
pub use dubrovin::{
    integrate_dubrovin, integrate_field, time_to_reach, AngleField, DubrovinField, DubrovinTrajectory, LiftedField,
};
pub use psi::{
    circle_distance, mu_of_angle, mu_velocity, psi, psi_jacobian, sigma_of_angle, tangent_norm, torus_distance,
};
pub use trace::{trace_p, trace_q};
