use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{RElem, Residue, ZkFrac};

/// Operations a Laurent polynomial needs from its coefficients.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Coeff for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coeff for RElem {
    fn is_zero(&self) -> bool {
        RElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RElem::add(self, other)
    }
    fn neg(&self) -> Self {
        RElem::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        RElem::mul(self, other)
    }
}

impl Coeff for Residue {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, other: &Self) -> Self {
        Residue::add(self, other)
    }
    fn neg(&self) -> Self {
        Residue::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        Residue::mul(self, other)
    }
}

impl Coeff for ZkFrac {
    fn is_zero(&self) -> bool {
        ZkFrac::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        ZkFrac::add(self, other)
    }
    fn neg(&self) -> Self {
        ZkFrac::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        ZkFrac::mul(self, other)
    }
}

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(degree: i64, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, degree: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get(&degree) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&degree);
                } else {
                    self.terms.insert(degree, s);
                }
            }
            None => {
                self.terms.insert(degree, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn coeff(&self, degree: i64) -> Option<&C> {
        self.terms.get(&degree)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(d, c)| (*d, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in other.terms() {
                out.add_term(d1 + d2, c1.mul(c2));
            }
        }
        out
    }

    /// Multiply by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(d, c)| (d + e, c.clone())).collect() }
    }

    /// Apply `f` to every coefficient, dropping those that become zero.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.terms().map(|(d, c)| (d, f(c))))
    }

    /// The presentation `f(t) * t^shift` with `f` an ordinary polynomial
    /// (dense, low degree first) and `shift` the minimal degree.
    pub fn as_shifted_poly(&self, zero: &C) -> (i64, Vec<C>) {
        let Some(lo) = self.min_degree() else {
            return (0, Vec::new());
        };
        let hi = self.max_degree().unwrap();
        let mut dense = vec![zero.clone(); (hi - lo + 1) as usize];
        for (d, c) in self.terms() {
            dense[(d - lo) as usize] = c.clone();
        }
        (lo, dense)
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (d, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::AbelianShape;
    use proptest::prelude::*;
    use std::sync::Arc;

    #[test]
    fn sparse_form_and_rendering() {
        let p = LaurentPoly::from_terms([(2, BigInt::from(1)), (-1, BigInt::from(3)), (2, BigInt::from(-1))]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.to_string(), "{-1:3}");
        let (shift, dense) = LaurentPoly::from_terms([(-2, BigInt::from(1)), (0, BigInt::from(5))])
            .as_shifted_poly(&BigInt::zero());
        assert_eq!(shift, -2);
        assert_eq!(dense, vec![BigInt::from(1), BigInt::from(0), BigInt::from(5)]);
    }

    fn poly() -> impl Strategy<Value = LaurentPoly<RElem>> {
        let shape = Arc::new(AbelianShape::new(1, vec![2]));
        proptest::collection::vec((-3i64..4, -5i64..5, 0i64..2), 0..5).prop_map(move |ts| {
            LaurentPoly::from_terms(
                ts.into_iter().map(|(d, a, b)| (d, RElem::from_components(&shape, &[a.into(), b.into()]))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms_over_r(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.add(&a.neg()).is_zero());
            prop_assert!(a.terms().all(|(_, c)| !Coeff::is_zero(c)));
        }
    }
}
