//! Normal-form arithmetic in `BS(1,k)` and `A wr Z`.
//!
//! `BS(1,k)` elements are pairs `(u, r)` with `u` in `Z[1/k]`:
//! `(u1, r1)(u2, r2) = (u1 + u2 k^-r1, r1 + r2)`, `a = (1, 0)`, `b = (0, 1)`.
//!
//! `A wr Z` elements are pairs `(P, x)` with `P` a Laurent polynomial over
//! the component ring: `(P1, x1)(P2, x2) = (P1 + t^x1 P2, x1 + x2)`.

mod element;

pub use element::{BsElement, ElementRecord, GroupElement, WreathElement};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frontend::{EquationSystem, Symbol, Word};
use crate::rings::AbelianShape;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element does not belong to {0}")]
    SpecMismatch(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("exponent or shift too large for exact evaluation")]
    Overflow,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Bs { k: u32 },
    Wreath { shape: Arc<AbelianShape> },
}

pub type Assignment = BTreeMap<String, GroupElement>;

impl GroupSpec {
    pub fn bs(k: u32) -> Self {
        assert!(k >= 1, "BS base must be positive");
        GroupSpec::Bs { k }
    }

    pub fn wreath(free_rank: usize, torsion: Vec<u64>) -> Self {
        assert!(torsion.iter().all(|&n| n >= 2), "torsion orders must be at least 2");
        GroupSpec::Wreath { shape: Arc::new(AbelianShape::new(free_rank, torsion)) }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Bs { k } => GroupElement::Bs(BsElement::identity(*k)),
            GroupSpec::Wreath { shape } => GroupElement::Wreath(WreathElement::identity(shape)),
        }
    }

    /// Generator names, in canonical order.
    pub fn generator_names(&self) -> Vec<String> {
        match self {
            GroupSpec::Bs { .. } => vec!["a".into(), "b".into()],
            GroupSpec::Wreath { shape } => {
                let mut names = vec!["t".to_string()];
                names.extend((1..=shape.free_rank).map(|i| format!("a{i}")));
                names.extend((1..=shape.torsion.len()).map(|i| format!("c{i}")));
                names
            }
        }
    }

    /// Resolves a generator name. With a single component, `a` names it.
    pub fn canonical_generator(&self, name: &str) -> Option<String> {
        let names = self.generator_names();
        if names.iter().any(|n| n == name) {
            return Some(name.to_string());
        }
        match self {
            GroupSpec::Wreath { shape } if name == "a" && shape.components() == 1 => Some(names[1].clone()),
            _ => None,
        }
    }

    pub fn generator(&self, name: &str) -> Option<GroupElement> {
        let name = self.canonical_generator(name)?;
        Some(match self {
            GroupSpec::Bs { k } => GroupElement::Bs(if name == "a" {
                BsElement::new(crate::rings::ZkFrac::one(*k), BigInt::from(0))
            } else {
                BsElement::new(crate::rings::ZkFrac::zero(*k), BigInt::from(1))
            }),
            GroupSpec::Wreath { shape } => {
                if name == "t" {
                    GroupElement::Wreath(WreathElement::new(crate::rings::LaurentPoly::zero(), BigInt::from(1)))
                } else {
                    let idx: usize = name[1..].parse().ok()?;
                    let c = if name.starts_with('a') { idx - 1 } else { shape.free_rank + idx - 1 };
                    let coeff = crate::rings::RElem::basis(shape, c, &BigInt::from(1));
                    GroupElement::Wreath(WreathElement::new(
                        crate::rings::LaurentPoly::monomial(0, coeff),
                        BigInt::from(0),
                    ))
                }
            }
        })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupSpec::Bs { k }, GroupElement::Bs(e)) => e.u.base() == *k,
            (GroupSpec::Wreath { shape }, GroupElement::Wreath(e)) => e.p.terms().all(|(_, c)| c.shape() == shape),
            _ => false,
        }
    }

    fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::SpecMismatch(self.to_string()))
        }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        self.check(h)?;
        match (g, h) {
            (GroupElement::Bs(x), GroupElement::Bs(y)) => Ok(GroupElement::Bs(x.mul(y)?)),
            (GroupElement::Wreath(x), GroupElement::Wreath(y)) => Ok(GroupElement::Wreath(x.mul(y)?)),
            _ => Err(GroupError::SpecMismatch(self.to_string())),
        }
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        match g {
            GroupElement::Bs(x) => Ok(GroupElement::Bs(x.inv()?)),
            GroupElement::Wreath(x) => Ok(GroupElement::Wreath(x.inv()?)),
        }
    }

    /// `g^e` by repeated squaring.
    pub fn pow(&self, g: &GroupElement, e: i64) -> Result<GroupElement, GroupError> {
        let base = if e < 0 { self.inv(g)? } else { g.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &sq)?;
            }
            n >>= 1;
            if n > 0 {
                sq = self.mul(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    pub fn eval_word(&self, w: &Word, assignment: &Assignment) -> Result<GroupElement, GroupError> {
        let mut acc = self.identity();
        for letter in &w.letters {
            let g = match &letter.symbol {
                Symbol::Gen(name) => self.generator(name).ok_or_else(|| GroupError::UnknownGenerator(name.clone()))?,
                Symbol::Var(name) => {
                    assignment.get(name).cloned().ok_or_else(|| GroupError::UnboundVariable(name.clone()))?
                }
            };
            acc = self.mul(&acc, &self.pow(&g, letter.exp)?)?;
        }
        Ok(acc)
    }
}

/// True iff every equation holds under `assignment`.
pub fn verify_witness(system: &EquationSystem, assignment: &Assignment) -> Result<bool, GroupError> {
    let spec = &system.spec;
    for eq in &system.equations {
        let l = spec.eval_word(&eq.lhs, assignment)?;
        let r = spec.eval_word(&eq.rhs, assignment)?;
        if l != r {
            return Ok(false);
        }
    }
    Ok(true)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Bs { k } => write!(f, "group BS {k}"),
            GroupSpec::Wreath { shape } => {
                write!(f, "group wreath Z^{}", shape.free_rank)?;
                for n in &shape.torsion {
                    write!(f, " x Z_{n}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests;
