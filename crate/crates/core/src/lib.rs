//! Decision machinery for systems of equations in the solvable
//! Baumslag–Solitar groups `BS(1,k)` and in wreath products `A wr Z`.

pub mod affine;
pub mod decide;
pub mod expsolve;
pub mod frontend;
pub mod groups;
pub mod intlinalg;
pub mod oracle;
pub mod reduce;
pub mod rings;
mod serde_big;
