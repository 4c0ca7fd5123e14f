use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ExpSolveError, SolveBudget};
use crate::affine::{AffineForm, Substitution};
use crate::intlinalg::{solve_affine, AffineLattice};
use crate::reduce::{CyclicRing, ExpSum};

/// A partition of an equation's terms into blocks of cancelling coefficients,
/// with the exponent equalities it forces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupedEquation {
    pub blocks: Vec<Vec<usize>>,
    pub equalities: Vec<AffineForm>,
}

fn zero_sum(ring: &CyclicRing, coeffs: &[BigInt], block: &[usize]) -> bool {
    ring.reduce(block.iter().map(|&i| &coeffs[i]).sum()).is_zero()
}

/// A zero-sum block that splits into two zero-sum blocks only adds equalities.
fn minimal_block(ring: &CyclicRing, coeffs: &[BigInt], block: &[usize]) -> bool {
    let n = block.len();
    if n > 16 {
        return true;
    }
    // proper subsets containing the first element
    (0u32..(1 << (n - 1)) - 1).all(|mask| {
        let sub: Vec<usize> = std::iter::once(block[0])
            .chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| block[i]))
            .collect();
        !zero_sum(ring, coeffs, &sub)
    })
}

/// Partitions of the terms into minimal zero-sum blocks, in restricted-growth order.
pub fn group_partitions(terms: &[(BigInt, AffineForm)], ring: &CyclicRing) -> Vec<GroupedEquation> {
    let coeffs: Vec<BigInt> = terms.iter().map(|(c, _)| ring.reduce(c.clone())).collect();
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    rgs(ring, &coeffs, 0, &mut blocks, &mut |blocks| {
        if blocks.iter().all(|b| minimal_block(ring, &coeffs, b)) {
            let mut equalities = Vec::new();
            for b in blocks {
                for &j in &b[1..] {
                    let f = terms[b[0]].1.sub(&terms[j].1);
                    if !f.is_zero() {
                        equalities.push(f);
                    }
                }
            }
            out.push(GroupedEquation { blocks: blocks.to_vec(), equalities });
        }
    });
    out
}

fn rgs(
    ring: &CyclicRing,
    coeffs: &[BigInt],
    i: usize,
    blocks: &mut Vec<Vec<usize>>,
    emit: &mut impl FnMut(&[Vec<usize>]),
) {
    let open = blocks.iter().filter(|b| !zero_sum(ring, coeffs, b)).count();
    if coeffs.len() - i < open {
        return;
    }
    if i == coeffs.len() {
        emit(blocks);
        return;
    }
    for b in 0..=blocks.len() {
        if b == blocks.len() {
            blocks.push(vec![i]);
        } else {
            blocks[b].push(i);
        }
        rgs(ring, coeffs, i + 1, blocks, emit);
        if blocks[b].len() == 1 {
            blocks.pop();
        } else {
            blocks[b].pop();
        }
    }
}

struct Branch {
    params: Vec<String>,
    sub: Substitution,
}

/// Solves `eqs[i] = 0` in `Z_n[t, t^-1]` (or `Z[t, t^-1]`) over the exponent
/// variables `vars`. The union of the returned lattices is the solution set.
pub fn grouping_solve(
    eqs: &[ExpSum<CyclicRing>],
    vars: &[String],
    budget: &mut SolveBudget,
) -> Result<Vec<AffineLattice>, ExpSolveError> {
    let start = Branch {
        params: vars.to_vec(),
        sub: vars.iter().map(|v| (v.clone(), AffineForm::var(v))).collect(),
    };
    let mut out = BTreeSet::new();
    solve(eqs, start, 0, vars, budget, &mut out)?;
    Ok(out.into_iter().collect())
}

fn solve(
    eqs: &[ExpSum<CyclicRing>],
    br: Branch,
    depth: usize,
    vars: &[String],
    budget: &mut SolveBudget,
    out: &mut BTreeSet<AffineLattice>,
) -> Result<(), ExpSolveError> {
    budget.tick()?;
    let Some((first, rest)) = eqs.split_first() else {
        out.insert(AffineLattice::from_substitution(vars, &br.sub, &br.params));
        return Ok(());
    };
    let cur = first.substitute(&br.sub);
    if cur.is_zero() {
        return solve(rest, br, depth + 1, vars, budget, out);
    }
    if cur.is_ground() {
        return Ok(());
    }
    let terms: Vec<(BigInt, AffineForm)> = cur.terms().map(|(k, c)| (c.clone(), k.exp.clone())).collect();
    for g in group_partitions(&terms, cur.ring()) {
        let sol = solve_affine(&g.equalities, &br.params, &format!("_g{depth}_"));
        let Some(step) = sol.substitution() else {
            continue;
        };
        let sub = br.sub.iter().map(|(v, f)| (v.clone(), f.substitute(&step))).collect();
        solve(rest, Branch { params: sol.params, sub }, depth + 1, vars, budget, out)?;
    }
    Ok(())
}
