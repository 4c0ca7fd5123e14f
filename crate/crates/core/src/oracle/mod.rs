//! Exhaustive search over small balls, used as ground truth in tests.
//!
//! Nothing here depends on the reduction or decision code: group witnesses
//! are checked with the group arithmetic directly and exponential equations
//! are evaluated exactly.

mod ball;
mod exp;

pub use ball::{ball_elements, brute_force_group, SearchBall};
pub use exp::{brute_force_cyclic, brute_force_exp, ExpEquation};
