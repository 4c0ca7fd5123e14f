//! Exact solution of pure exponential equations as unions of integer lattices.
//!
//! `sum beta_j k^(y_j) + C = 0` over `Z` becomes a finite union of affine
//! lattices by repeatedly fixing the gap between two terms; the bound on
//! useful gaps comes from the dominant-term estimate in [`delta_bound`].
//! Equations `sum a_i t^(s_i) = 0` over `Z_n[t, t^-1]` become lattices by
//! grouping terms into blocks of equal exponent whose coefficients cancel.

mod grouping;
mod semenov;

pub use grouping::{group_partitions, grouping_solve, GroupedEquation};
pub use semenov::{delta_bound, semenov_solve, semenov_solve_sums, SemenovEquation, SemenovSystem};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpSolveError {
    #[error("exponential solver exceeded its budget of {0} branches")]
    Budget(u64),
}

/// Countdown of branch nodes shared by a solver run.
#[derive(Clone, Debug)]
pub struct SolveBudget {
    limit: u64,
    used: u64,
}

impl SolveBudget {
    pub fn new(limit: u64) -> Self {
        SolveBudget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<(), ExpSolveError> {
        self.used += 1;
        if self.used > self.limit {
            Err(ExpSolveError::Budget(self.limit))
        } else {
            Ok(())
        }
    }
}
