use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// `Z^m + Z_{n_1} + ... + Z_{n_s}` as a direct sum of cyclic components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianShape {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianShape {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Self {
        AbelianShape { free_rank, torsion }
    }

    pub fn components(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Modulus of component `c`; zero for a free component.
    pub fn modulus(&self, c: usize) -> u64 {
        if c < self.free_rank {
            0
        } else {
            self.torsion[c - self.free_rank]
        }
    }
}

/// Element of the component ring `R`, with componentwise operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RElem {
    shape: Arc<AbelianShape>,
    free: Vec<BigInt>,
    torsion: Vec<u64>,
}

impl RElem {
    pub fn zero(shape: &Arc<AbelianShape>) -> Self {
        RElem {
            shape: shape.clone(),
            free: vec![BigInt::zero(); shape.free_rank],
            torsion: vec![0; shape.torsion.len()],
        }
    }

    /// Builds an element from one integer per component, reducing torsion parts.
    pub fn from_components(shape: &Arc<AbelianShape>, values: &[BigInt]) -> Self {
        assert_eq!(values.len(), shape.components(), "component count mismatch");
        let free = values[..shape.free_rank].to_vec();
        let torsion = values[shape.free_rank..]
            .iter()
            .zip(&shape.torsion)
            .map(|(v, &n)| reduce(v, n))
            .collect();
        RElem { shape: shape.clone(), free, torsion }
    }

    /// Unit vector of component `c` scaled by `e`.
    pub fn basis(shape: &Arc<AbelianShape>, c: usize, e: &BigInt) -> Self {
        let mut values = vec![BigInt::zero(); shape.components()];
        values[c] = e.clone();
        Self::from_components(shape, &values)
    }

    pub fn shape(&self) -> &Arc<AbelianShape> {
        &self.shape
    }

    /// Component `c` as an integer (torsion parts in `[0, n)`).
    pub fn component(&self, c: usize) -> BigInt {
        if c < self.shape.free_rank {
            self.free[c].clone()
        } else {
            BigInt::from(self.torsion[c - self.shape.free_rank])
        }
    }

    pub fn components(&self) -> Vec<BigInt> {
        (0..self.shape.components()).map(|c| self.component(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(|&t| t == 0)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.shape, other.shape, "mixing elements of different component rings");
        let values: Vec<BigInt> = self
            .components()
            .iter()
            .zip(other.components().iter())
            .map(|(a, b)| f(a, b))
            .collect();
        Self::from_components(&self.shape, &values)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        let values: Vec<BigInt> = self.components().iter().map(|a| -a).collect();
        Self::from_components(&self.shape, &values)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let values: Vec<BigInt> = self.components().iter().map(|a| a * c).collect();
        Self::from_components(&self.shape, &values)
    }
}

fn reduce(v: &BigInt, n: u64) -> u64 {
    use num_integer::Integer;
    v.mod_floor(&BigInt::from(n)).try_into().expect("residue fits in u64")
}

impl fmt::Display for RElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.components();
        if parts.len() == 1 {
            return write!(f, "{}", parts[0]);
        }
        let free: Vec<String> = parts[..self.shape.free_rank].iter().map(|p| p.to_string()).collect();
        let tors: Vec<String> = parts[self.shape.free_rank..].iter().map(|p| p.to_string()).collect();
        write!(f, "({};{})", free.join(","), tors.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape() -> Arc<AbelianShape> {
        Arc::new(AbelianShape::new(1, vec![2, 6]))
    }

    #[test]
    fn torsion_is_reduced() {
        let s = shape();
        let x = RElem::from_components(&s, &[BigInt::from(-3), BigInt::from(3), BigInt::from(-1)]);
        assert_eq!(x.components(), vec![BigInt::from(-3), BigInt::from(1), BigInt::from(5)]);
        assert_eq!(x.to_string(), "(-3;1,5)");
        assert!(x.add(&x.neg()).is_zero());
    }

    fn elem() -> impl Strategy<Value = RElem> {
        (-20i64..20, 0i64..2, 0i64..6).prop_map(|(a, b, c)| {
            RElem::from_components(&shape(), &[a.into(), b.into(), c.into()])
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in elem(), b in elem(), c in elem()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.add(&a.neg()).is_zero());
        }
    }
}
