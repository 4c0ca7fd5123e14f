//! Integer linear algebra: Smith normal form, integer solution lattices of
//! linear systems, their substitution into affine forms, and solvability
//! modulo an integer.

mod hnf;
mod lattice;
mod matrix;
mod modsolve;
mod snf;
mod solve;

pub use hnf::hermite_rows;
pub use lattice::AffineLattice;
pub use matrix::IntMatrix;
pub use modsolve::solvable_mod;
pub use snf::{smith_normal_form, SnfResult};
pub use solve::{
    apply_solution, solve_affine, solve_linear, system_matrix, LatticeKey, LinearInfeasibility,
    LinearSolutionSet, NamedSolution,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("cannot substitute an empty solution set")]
    EmptySolution,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
