//! Coefficient domains: `Z[1/k]`, the abelian component ring `R`, Laurent
//! polynomials over it, and polynomial arithmetic over `Z_n`.

mod laurent;
mod modular;
mod relem;
mod zkfrac;
mod znpoly;

pub use laurent::{Coeff, LaurentPoly};
pub use modular::{
    divisors, gcd_u64, inv_mod, is_prime, lcm_u64, mult_order, pow_mod, prime_powers_coprime_to,
    primes_up_to,
};
pub use relem::{AbelianShape, RElem};
pub use zkfrac::{zk_normalize, ZkFrac};
pub use znpoly::{monic_enum, poly_reduce, t_period, ModPoly, Residue, ZnPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("{k} is not invertible modulo {q}")]
    NotCoprime { k: u64, q: u64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("polynomial {0} is not monic of positive degree")]
    NotMonic(String),
    #[error("constant term of {0} is not a unit, t is not invertible modulo it")]
    NonUnitConstant(String),
}
