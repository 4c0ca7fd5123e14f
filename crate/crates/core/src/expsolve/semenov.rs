use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExpSolveError, SolveBudget};
use crate::affine::{AffineForm, Substitution};
use crate::intlinalg::{solve_affine, AffineLattice};
use crate::reduce::{ExpSum, KRing};
use crate::rings::ZkFrac;

/// `sum beta * k^exp + constant = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemenovEquation {
    pub terms: Vec<(BigInt, AffineForm)>,
    pub constant: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemenovSystem {
    pub k: u32,
    pub vars: Vec<String>,
    pub equations: Vec<SemenovEquation>,
}

impl SemenovEquation {
    pub fn to_sum(&self, k: u32) -> ExpSum<KRing> {
        let ring = KRing { k };
        let mut s = ExpSum::constant(&ring, ZkFrac::from_int(self.constant.clone(), k));
        for (b, e) in &self.terms {
            s.add_term(None, e.clone(), ZkFrac::from_int(b.clone(), k));
        }
        s
    }
}

/// Smallest `d` with `k^d >= x` (for `x >= 1`).
fn ceil_log(k: u32, x: &BigInt) -> u64 {
    let kb = BigInt::from(k);
    let mut p = BigInt::one();
    let mut d = 0;
    while &p < x {
        p *= &kb;
        d += 1;
    }
    d
}

/// `ceil(log_k(sum |beta| + |C| + 1)) + 1`. If one term's exponent exceeds
/// every other exponent (and 0, the constant's) by more than this, the
/// equation has no solution.
pub fn delta_bound(eq: &SemenovEquation, k: u32) -> u64 {
    assert!(k >= 2, "delta bound needs k >= 2");
    let s: BigInt = eq.terms.iter().map(|(b, _)| b.abs()).sum::<BigInt>() + eq.constant.abs();
    ceil_log(k, &(s + 1)) + 1
}

fn sum_delta(sum: &ExpSum<KRing>, k: u32) -> u64 {
    let s: BigInt = sum.terms().map(|(_, c)| c.numerator().abs()).sum();
    ceil_log(k, &(s + 1)) + 1
}

/// `g` with `k^g = num / den`, if any.
fn k_log_ratio(num: &BigInt, den: &BigInt, k: u32) -> Option<i64> {
    let g = num.gcd(den);
    let (mut p, mut q) = (num / &g, den / &g);
    if q.is_negative() {
        p = -p;
        q = -q;
    }
    if !p.is_positive() {
        return None;
    }
    let kb = BigInt::from(k);
    let exact_log = |mut x: BigInt| -> Option<i64> {
        let mut e = 0;
        while x > BigInt::one() {
            let (d, r) = x.div_rem(&kb);
            if !r.is_zero() {
                return None;
            }
            x = d;
            e += 1;
        }
        Some(e)
    };
    if q.is_one() {
        exact_log(p)
    } else if p.is_one() {
        exact_log(q).map(|e| -e)
    } else {
        None
    }
}

struct Branch {
    params: Vec<String>,
    sub: Substitution,
}

struct Solver<'a> {
    k: u32,
    vars: &'a [String],
    budget: &'a mut SolveBudget,
    out: BTreeSet<AffineLattice>,
}

impl Solver<'_> {
    /// Restricts `br` to `forms = 0`; `None` if that is empty.
    fn restrict(&self, br: &Branch, forms: &[AffineForm], depth: usize) -> Option<Branch> {
        let sol = solve_affine(forms, &br.params, &format!("_s{depth}_"));
        let step = sol.substitution()?;
        let sub = br.sub.iter().map(|(v, f)| (v.clone(), f.substitute(&step))).collect();
        Some(Branch { params: sol.params, sub })
    }

    fn solve(&mut self, eqs: &[ExpSum<KRing>], br: Branch, depth: usize) -> Result<(), ExpSolveError> {
        self.budget.tick()?;
        let Some((first, rest)) = eqs.split_first() else {
            self.out.insert(AffineLattice::from_substitution(self.vars, &br.sub, &br.params));
            return Ok(());
        };
        let cur = first.substitute(&br.sub);
        if cur.is_zero() {
            return self.solve(rest, br, depth + 1);
        }
        if cur.is_ground() {
            return Ok(());
        }
        // exponent value of a term: linear part minus the k-adic depth of its coefficient
        let terms: Vec<(AffineForm, BigInt)> = cur
            .terms()
            .map(|(key, c)| (key.exp.sub(&AffineForm::constant(c.depth())), c.numerator().clone()))
            .collect();
        if terms.len() == 2 {
            // z1 k^e1 = -z2 k^e2
            let Some(g) = k_log_ratio(&-&terms[1].1, &terms[0].1, self.k) else {
                return Ok(());
            };
            let form = terms[0].0.sub(&terms[1].0).sub(&AffineForm::constant(g));
            if let Some(next) = self.restrict(&br, &[form], depth) {
                self.solve(rest, next, depth + 1)?;
            }
            return Ok(());
        }
        let delta = sum_delta(&cur, self.k) as i64;
        for a in 0..terms.len() {
            for b in 0..terms.len() {
                if a == b {
                    continue;
                }
                for c in 0..=delta {
                    let form = terms[a].0.sub(&terms[b].0).sub(&AffineForm::constant(c));
                    if let Some(next) = self.restrict(&br, &[form], depth) {
                        self.solve(eqs, next, depth + 1)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Solves atom-free rows over `Z[1/k]` in the exponent variables `vars`.
/// The union of the returned lattices (sorted, deduplicated) is exactly the
/// integer solution set.
pub fn semenov_solve_sums(
    eqs: &[ExpSum<KRing>],
    vars: &[String],
    budget: &mut SolveBudget,
) -> Result<Vec<AffineLattice>, ExpSolveError> {
    let k = eqs.first().map_or(2, |e| e.ring().k);
    assert!(k >= 2, "exponential equations need k >= 2");
    let start = Branch {
        params: vars.to_vec(),
        sub: vars.iter().map(|v| (v.clone(), AffineForm::var(v))).collect(),
    };
    let mut solver = Solver { k, vars, budget, out: BTreeSet::new() };
    solver.solve(eqs, start, 0)?;
    Ok(solver.out.into_iter().collect())
}

pub fn semenov_solve(sys: &SemenovSystem, budget: &mut SolveBudget) -> Result<Vec<AffineLattice>, ExpSolveError> {
    let sums: Vec<ExpSum<KRing>> = sys.equations.iter().map(|e| e.to_sum(sys.k)).collect();
    semenov_solve_sums(&sums, &sys.vars, budget)
}
