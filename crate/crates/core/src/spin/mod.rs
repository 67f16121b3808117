//! Dense state vectors on `mu = M + N` spin-1/2 sites.
//!
//! Sites `0..M` form the top row (initially up), sites `M..mu` the bottom row
//! (initially down). Basis states are bit masks with bit `i` set when site `i`
//! points up.

mod basis;
mod construct;
mod observables;
mod operators;
mod schmidt;
mod shape;
mod state;

pub use basis::BasisState;
pub use construct::{
    collapse_with_weight, collapsed_state, product_state, rvb_state, rvb_state_from_dimers, CollapsedState,
};
pub use observables::{spin_correlation, states_equal_up_to_phase, PhaseComparison};
pub use operators::{
    apply_lowering, apply_raising, apply_s_squared, apply_sz, eigen_residual, project_sector,
    s_squared_expectation, sz_expectation,
};
pub use schmidt::{row_schmidt, RowSchmidt};
pub use shape::{SystemShape, MAX_SITES};
pub use state::StateVector;
