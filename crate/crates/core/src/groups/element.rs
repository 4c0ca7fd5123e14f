use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{GroupError, GroupSpec};
use crate::rings::{AbelianShape, LaurentPoly, RElem, ZkFrac};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BsElement {
    pub u: ZkFrac,
    pub r: BigInt,
}

fn small(x: &BigInt) -> Result<i64, GroupError> {
    x.to_i64().filter(|v| v.unsigned_abs() < (1 << 40)).ok_or(GroupError::Overflow)
}

impl BsElement {
    pub fn new(u: ZkFrac, r: BigInt) -> Self {
        BsElement { u, r }
    }

    pub fn identity(k: u32) -> Self {
        BsElement { u: ZkFrac::zero(k), r: BigInt::zero() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        let shifted = if self.u.base() == 1 { other.u.clone() } else { other.u.mul_k_pow(-small(&self.r)?) };
        Ok(BsElement { u: self.u.add(&shifted), r: &self.r + &other.r })
    }

    pub fn inv(&self) -> Result<Self, GroupError> {
        let u = if self.u.base() == 1 { self.u.neg() } else { self.u.neg().mul_k_pow(small(&self.r)?) };
        Ok(BsElement { u, r: -&self.r })
    }

    /// Word `b^i a^z b^(r-i)` for `u = z * k^-i`.
    pub fn word(&self) -> String {
        fn pow(g: char, e: &BigInt) -> Option<String> {
            match e.to_i64() {
                Some(0) => None,
                Some(1) => Some(g.to_string()),
                _ => Some(format!("{g}^{e}")),
            }
        }
        let parts: Vec<String> = if self.u.is_zero() {
            pow('b', &self.r).into_iter().collect()
        } else {
            let i = BigInt::from(self.u.depth());
            [pow('b', &i), pow('a', self.u.numerator()), pow('b', &(&self.r - &i))].into_iter().flatten().collect()
        };
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for BsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.u, self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub p: LaurentPoly<RElem>,
    pub x: BigInt,
}

impl WreathElement {
    pub fn new(p: LaurentPoly<RElem>, x: BigInt) -> Self {
        WreathElement { p, x }
    }

    pub fn identity(_shape: &Arc<AbelianShape>) -> Self {
        WreathElement { p: LaurentPoly::zero(), x: BigInt::zero() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        let p = if other.p.is_zero() { self.p.clone() } else { self.p.add(&other.p.shift(small(&self.x)?)) };
        Ok(WreathElement { p, x: &self.x + &other.x })
    }

    pub fn inv(&self) -> Result<Self, GroupError> {
        let p = if self.p.is_zero() { LaurentPoly::zero() } else { self.p.shift(-small(&self.x)?).neg() };
        Ok(WreathElement { p, x: -&self.x })
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.p, self.x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Bs(BsElement),
    Wreath(WreathElement),
}

impl GroupElement {
    pub fn as_bs(&self) -> Option<&BsElement> {
        match self {
            GroupElement::Bs(e) => Some(e),
            GroupElement::Wreath(_) => None,
        }
    }

    pub fn as_wreath(&self) -> Option<&WreathElement> {
        match self {
            GroupElement::Wreath(e) => Some(e),
            GroupElement::Bs(_) => None,
        }
    }

    pub fn to_record(&self) -> ElementRecord {
        match self {
            GroupElement::Bs(e) => ElementRecord::Bs {
                z: e.u.numerator().to_string(),
                i: e.u.depth(),
                r: e.r.to_string(),
            },
            GroupElement::Wreath(e) => ElementRecord::Wreath {
                terms: e
                    .p
                    .terms()
                    .map(|(d, c)| (d, c.components().iter().map(ToString::to_string).collect()))
                    .collect(),
                x: e.x.to_string(),
            },
        }
    }

    pub fn from_record(rec: &ElementRecord, spec: &GroupSpec) -> Result<Self, GroupError> {
        let bad = || GroupError::SpecMismatch(spec.to_string());
        let int = |s: &str| s.parse::<BigInt>().map_err(|_| bad());
        match (rec, spec) {
            (ElementRecord::Bs { z, i, r }, GroupSpec::Bs { k }) => {
                Ok(GroupElement::Bs(BsElement::new(ZkFrac::new(int(z)?, *i, *k), int(r)?)))
            }
            (ElementRecord::Wreath { terms, x }, GroupSpec::Wreath { shape }) => {
                let mut p = LaurentPoly::zero();
                for (d, comps) in terms {
                    if comps.len() != shape.components() {
                        return Err(bad());
                    }
                    let vals = comps.iter().map(|c| int(c)).collect::<Result<Vec<_>, _>>()?;
                    p.add_term(*d, RElem::from_components(shape, &vals));
                }
                Ok(GroupElement::Wreath(WreathElement::new(p, int(x)?)))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Bs(e) => e.fmt(f),
            GroupElement::Wreath(e) => e.fmt(f),
        }
    }
}

/// Structured, serializable form of an element. Integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ElementRecord {
    /// `z * k^-i`, shift `r`.
    Bs { z: String, i: u64, r: String },
    /// Sparse `(degree, components)` list, shift `x`.
    Wreath { terms: Vec<(i64, Vec<String>)>, x: String },
}
