//! Jacobi operators, the Toda lattice and its Lax pair, transfer matrices.

pub mod chain;
pub mod lax;
pub mod operator;
pub mod toda;
pub mod transfer;

pub use chain::{flaschka, hamiltonian, inverse_flaschka, Closure, ParticleChain};
pub use lax::{bloch_matrix, lax_p_apply, lax_residual, periodic_matrix, periodic_p_matrix, restriction_residual};
pub use operator::{apply_jacobi, JacobiOperator, Sequence, Topology};
pub use toda::{integrate_toda, integrate_with_solutions, toda_rhs, toda_trajectory, TodaState};
pub use transfer::{conserved_traces, one_step, solve_recurrence, transfer_matrix, wronskian, TransferStep};
