use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::affine::AffineForm;

/// `sum coeff * base^exp + constant = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpEquation {
    pub terms: Vec<(BigInt, AffineForm)>,
    pub constant: BigInt,
}

fn points(bounds: &[(i64, i64)]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let total: u64 = bounds.iter().map(|(lo, hi)| (hi - lo + 1).max(0) as u64).product();
    (0..total).map(move |mut code| {
        bounds
            .iter()
            .map(|(lo, hi)| {
                let w = (hi - lo + 1) as u64;
                let v = lo + (code % w) as i64;
                code /= w;
                v
            })
            .collect()
    })
}

fn eval_exp(e: &AffineForm, vars: &[String], x: &[i64]) -> i64 {
    let mut acc = e.constant_term().to_i64().expect("small exponent");
    for (v, c) in e.coeffs() {
        let i = vars.iter().position(|w| w == v).expect("variable in box");
        acc += c.to_i64().expect("small coefficient") * x[i];
    }
    acc
}

/// Value times `k^-min_exponent`, an integer, compared with zero.
fn holds_k(k: u32, eq: &ExpEquation, vars: &[String], x: &[i64]) -> bool {
    let mut items: Vec<(&BigInt, i64)> = eq.terms.iter().map(|(c, e)| (c, eval_exp(e, vars, x))).collect();
    items.push((&eq.constant, 0));
    let m = items.iter().map(|(_, e)| *e).min().unwrap_or(0);
    // fast path in i128
    let mut acc: Option<i128> = Some(0);
    for (c, e) in &items {
        acc = acc.and_then(|a| {
            let p = (k as i128).checked_pow((e - m) as u32)?;
            a.checked_add(c.to_i128()?.checked_mul(p)?)
        });
    }
    if let Some(v) = acc {
        return v == 0;
    }
    let kb = BigInt::from(k);
    let total: BigInt = items.iter().map(|(c, e)| *c * num_traits::pow(kb.clone(), (e - m) as usize)).sum();
    total.is_zero()
}

/// Integer points of the box satisfying every equation over `Z[1/k]`.
pub fn brute_force_exp(k: u32, vars: &[String], eqs: &[ExpEquation], bounds: &[(i64, i64)]) -> Vec<Vec<i64>> {
    assert_eq!(vars.len(), bounds.len(), "one interval per variable");
    points(bounds).filter(|x| eqs.iter().all(|eq| holds_k(k, eq, vars, x))).collect()
}

/// Integer points of the box where every `sum c t^exp + constant` vanishes in
/// `Z_n[t, t^-1]` (`n == 0` for `Z`).
pub fn brute_force_cyclic(n: u64, vars: &[String], eqs: &[ExpEquation], bounds: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let reduce = |v: BigInt| if n == 0 { v } else { v.mod_floor(&BigInt::from(n)) };
    points(bounds)
        .filter(|x| {
            eqs.iter().all(|eq| {
                let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
                *acc.entry(0).or_default() += &eq.constant;
                for (c, e) in &eq.terms {
                    *acc.entry(eval_exp(e, vars, x)).or_default() += c;
                }
                acc.into_values().all(|v| reduce(v).is_zero())
            })
        })
        .collect()
}
