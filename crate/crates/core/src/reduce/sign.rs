use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{ExpRing, ExpSum, Pivot, TriSystem};
use crate::affine::{AffineForm, Substitution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

/// A branch of the sign split: variables marked `Neg` have been replaced by
/// their negatives; all variables now range over the naturals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSystem<R: ExpRing> {
    pub signs: BTreeMap<String, Sign>,
    pub system: TriSystem<R>,
}

/// Multiply by the smallest `base^M` making every exponent a sum of
/// variables with nonnegative coefficients plus a nonnegative constant.
fn clear_negative<R: ExpRing>(s: &ExpSum<R>) -> ExpSum<R> {
    let mut need: BTreeMap<String, BigInt> = BTreeMap::new();
    let mut need_const = BigInt::zero();
    for (k, _) in s.terms() {
        for (v, c) in k.exp.coeffs() {
            if c.is_negative() {
                let e = need.entry(v.clone()).or_default();
                if -c > *e {
                    *e = -c;
                }
            }
        }
        if k.exp.constant_term().is_negative() && -k.exp.constant_term() > need_const {
            need_const = -k.exp.constant_term();
        }
    }
    let m = AffineForm::from_parts(need, need_const);
    s.mul_base_pow(&m)
}

pub fn sign_split<R: ExpRing>(tri: &TriSystem<R>, natural: &BTreeSet<String>) -> Vec<SignedSystem<R>> {
    let mut vars: BTreeSet<String> = BTreeSet::new();
    for p in &tri.pivots {
        vars.extend(p.row.exp_vars());
    }
    for r in tri.residuals.iter().chain(&tri.nonzero) {
        vars.extend(r.exp_vars());
    }
    let free: Vec<String> = vars.into_iter().filter(|v| !natural.contains(v)).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut signs = BTreeMap::new();
        let mut sub = Substitution::new();
        for (i, v) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                signs.insert(v.clone(), Sign::Neg);
                sub.insert(v.clone(), AffineForm::term(v, -1));
            } else {
                signs.insert(v.clone(), Sign::Pos);
            }
        }
        let fix = |s: &ExpSum<R>| clear_negative(&s.substitute(&sub));
        let system = TriSystem {
            pivots: tri
                .pivots
                .iter()
                .map(|p| {
                    let row = fix(&p.row);
                    Pivot { atom: p.atom, coeff: row.coefficient(p.atom), row }
                })
                .collect(),
            residuals: tri.residuals.iter().map(fix).collect(),
            nonzero: tri.nonzero.iter().map(fix).collect(),
        };
        out.push(SignedSystem { signs, system });
    }
    out
}
