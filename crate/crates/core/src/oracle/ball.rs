use num_bigint::BigInt;

use crate::frontend::EquationSystem;
use crate::groups::{verify_witness, Assignment, BsElement, GroupElement, GroupSpec, WreathElement};
use crate::rings::{LaurentPoly, RElem, ZkFrac};

/// Elements of size at most `radius`.
///
/// `BS(1,k)`: `(z k^-i, r)` in canonical form with `|z|, i, |r| <= radius`.
/// Wreath: shift `|x| <= radius`, support in `[-radius, radius]`, and the
/// sum over all coefficients of their components' absolute values (torsion
/// residues taken nearest to zero) at most `radius`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBall {
    pub radius: u32,
}

pub fn ball_elements(spec: &GroupSpec, ball: SearchBall) -> Vec<GroupElement> {
    let r = ball.radius as i64;
    match spec {
        GroupSpec::Bs { k } => {
            let mut out = Vec::new();
            for shift in -r..=r {
                for i in 0..=r as u64 {
                    for z in -r..=r {
                        let u = ZkFrac::new(z, i, *k);
                        // skip non-canonical duplicates
                        if u.depth() != i || u.numerator() != &BigInt::from(z) {
                            continue;
                        }
                        out.push(GroupElement::Bs(BsElement::new(u, BigInt::from(shift))));
                    }
                }
            }
            out
        }
        GroupSpec::Wreath { shape } => {
            // every (degree, component, value) "unit" with its cost
            let mut units: Vec<(i64, usize, i64, i64)> = Vec::new();
            for d in -r..=r {
                for c in 0..shape.components() {
                    let n = shape.modulus(c) as i64;
                    let values: Vec<i64> = if n == 0 {
                        (-r..=r).filter(|&v| v != 0).collect()
                    } else {
                        (1..n).collect()
                    };
                    for v in values {
                        let cost = if n == 0 { v.abs() } else { v.min(n - v) };
                        if cost <= r {
                            units.push((d, c, v, cost));
                        }
                    }
                }
            }
            let mut polys = Vec::new();
            let mut chosen: Vec<(i64, usize, i64)> = Vec::new();
            collect_polys(&units, 0, r, &mut chosen, &mut polys, shape);
            let mut out = Vec::new();
            for x in -r..=r {
                for p in &polys {
                    out.push(GroupElement::Wreath(WreathElement::new(p.clone(), BigInt::from(x))));
                }
            }
            out
        }
    }
}

/// Subsets of `units` using each (degree, component) slot at most once.
fn collect_polys(
    units: &[(i64, usize, i64, i64)],
    start: usize,
    budget: i64,
    chosen: &mut Vec<(i64, usize, i64)>,
    out: &mut Vec<LaurentPoly<RElem>>,
    shape: &std::sync::Arc<crate::rings::AbelianShape>,
) {
    let mut p = LaurentPoly::zero();
    for &(d, c, v) in chosen.iter() {
        p.add_term(d, RElem::basis(shape, c, &BigInt::from(v)));
    }
    out.push(p);
    for i in start..units.len() {
        let (d, c, v, cost) = units[i];
        if cost > budget || chosen.iter().any(|&(d2, c2, _)| d2 == d && c2 == c) {
            continue;
        }
        chosen.push((d, c, v));
        collect_polys(units, i + 1, budget - cost, chosen, out, shape);
        chosen.pop();
    }
}

/// All assignments from the ball satisfying `system`, in a fixed order.
/// Stops after `limit` witnesses when given.
pub fn brute_force_group(system: &EquationSystem, ball: SearchBall, limit: Option<usize>) -> Vec<Assignment> {
    let elems = ball_elements(&system.spec, ball);
    let vars = &system.variables;
    let mut out = Vec::new();
    if vars.is_empty() {
        if verify_witness(system, &Assignment::new()).unwrap_or(false) {
            out.push(Assignment::new());
        }
        return out;
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let asg: Assignment = vars.iter().zip(&idx).map(|(v, &i)| (v.clone(), elems[i].clone())).collect();
        if verify_witness(system, &asg).unwrap_or(false) {
            out.push(asg);
            if limit.is_some_and(|l| out.len() >= l) {
                return out;
            }
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
