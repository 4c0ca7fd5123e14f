//! Candidate search: exponent parameters in growing l1 shells; for each
//! point the atom system is linear and is solved exactly (over `Z[1/k]`,
//! or over `Z_n` / `Z` with the Laurent support bounded by a radius that
//! grows with the shell).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::pipeline::{AnyLeaf, Leaf};
use crate::frontend::EquationSystem;
use crate::groups::{verify_witness, Assignment, BsElement, GroupElement, GroupSpec, WreathElement};
use crate::intlinalg::{smith_normal_form, solve_linear, IntMatrix, LinearSolutionSet};
use crate::reduce::{CyclicRing, IntLaurent, KRing};
use crate::rings::{LaurentPoly, RElem, ZkFrac};

/// Exponents beyond this are skipped rather than expanded.
const MAX_EXPONENT: i64 = 4096;

/// Integer vectors of l1 norm `n` in a fixed order.
pub fn l1_shell(dim: usize, n: u32) -> Vec<Vec<i64>> {
    fn go(dim: usize, n: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if dim == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if dim == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            if n != 0 {
                prefix.push(-n);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for a in 0..=n {
            for s in if a == 0 { vec![0] } else { vec![a, -a] } {
                prefix.push(s);
                go(dim - 1, n - a, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(dim, n as i64, &mut Vec::new(), &mut out);
    out
}

/// State of the dovetailed enumeration over one leaf. For wreath leaves a
/// point is `(u, R)` with shell `|u|_1 + R`.
#[derive(Clone, Debug)]
pub struct EnumerationState {
    pub shell: u32,
    queue: Vec<(Vec<i64>, u32)>,
    pos: usize,
    max_radius: u32,
}

pub enum EnumStep {
    Continue,
    Exhausted,
    Witness(Assignment),
}

impl EnumerationState {
    pub fn new(max_radius: u32) -> Self {
        EnumerationState { shell: 0, queue: Vec::new(), pos: 0, max_radius }
    }

    fn fill(&mut self, leaf: &AnyLeaf) {
        let dim = leaf.dim();
        self.queue = match leaf {
            AnyLeaf::Bs(_) => l1_shell(dim, self.shell).into_iter().map(|u| (u, 0)).collect(),
            AnyLeaf::Wreath(_) => (0..=self.shell)
                .flat_map(|r| l1_shell(dim, self.shell - r).into_iter().map(move |u| (u, r)))
                .collect(),
        };
        self.pos = 0;
    }

    /// Test up to `max_steps` points; returns the steps used.
    pub fn advance(&mut self, system: &EquationSystem, leaf: &AnyLeaf, max_steps: u64) -> (u64, EnumStep) {
        let mut used = 0;
        if self.shell == 0 && self.queue.is_empty() && self.pos == 0 {
            self.fill(leaf);
        }
        while used < max_steps {
            if self.pos >= self.queue.len() {
                if self.shell >= self.max_radius {
                    return (used, EnumStep::Exhausted);
                }
                self.shell += 1;
                self.fill(leaf);
                continue;
            }
            let (u, radius) = self.queue[self.pos].clone();
            self.pos += 1;
            used += 1;
            if let Some(asg) = try_point(system, leaf, &u, radius) {
                return (used, EnumStep::Witness(asg));
            }
        }
        (used, EnumStep::Continue)
    }
}

fn point_map(params: &[String], u: &[i64]) -> BTreeMap<String, BigInt> {
    params.iter().cloned().zip(u.iter().map(|&x| BigInt::from(x))).collect()
}

fn shift_values(shifts: &[(String, crate::affine::AffineForm)], pt: &BTreeMap<String, BigInt>) -> Vec<BigInt> {
    shifts.iter().map(|(_, f)| f.eval(pt).expect("shift forms use leaf parameters")).collect()
}

fn small_exponents(values: &[BigInt]) -> bool {
    values.iter().all(|v| v.to_i64().is_some_and(|x| x.abs() <= MAX_EXPONENT))
}

/// Candidate assignment at one point, checked on the original system.
pub fn try_point(system: &EquationSystem, leaf: &AnyLeaf, u: &[i64], radius: u32) -> Option<Assignment> {
    let asg = match leaf {
        AnyLeaf::Bs(l) => bs_candidate(system, l, u)?,
        AnyLeaf::Wreath(l) => wreath_candidate(system, l, u, radius)?,
    };
    matches!(verify_witness(system, &asg), Ok(true)).then_some(asg)
}

fn bs_candidate(system: &EquationSystem, leaf: &Leaf<KRing>, u: &[i64]) -> Option<Assignment> {
    let GroupSpec::Bs { k } = system.spec else { return None };
    let pt = point_map(&leaf.params, u);
    let shifts = shift_values(&leaf.shifts, &pt);
    if !small_exponents(&shifts) {
        return None;
    }
    let natoms = leaf.atoms.len();
    let mut a = Vec::with_capacity(leaf.rows.len());
    let mut b = Vec::with_capacity(leaf.rows.len());
    for row in &leaf.rows {
        for key in row.terms().map(|(key, _)| key) {
            let e = key.exp.eval(&pt)?;
            if e.abs() > BigInt::from(MAX_EXPONENT) {
                return None;
            }
        }
        let coeffs: Option<Vec<ZkFrac>> = (0..natoms).map(|j| row.coefficient(j).eval(&pt, &[])).collect();
        a.push(coeffs?);
        b.push(row.atom_free_part().eval(&pt, &[])?.neg());
    }
    let z = solve_zk(&a, &b, k, natoms)?;
    let mut asg = Assignment::new();
    for (i, var) in system.variables.iter().enumerate() {
        asg.insert(var.clone(), GroupElement::Bs(BsElement::new(z[i].clone(), shifts[i].clone())));
    }
    Some(asg)
}

/// Least `e` with `d | k^e`, if any.
fn k_exponent(d: &BigInt, k: u32) -> Option<u64> {
    let kb = BigInt::from(k);
    let mut rest = d.abs();
    let mut e = 0;
    while !rest.is_one() {
        let g = rest.gcd(&kb);
        if g.is_one() {
            return None;
        }
        rest /= &g;
        e += 1;
    }
    // every step divides by a factor of k, so k^e is a multiple of d
    Some(e)
}

/// A solution of `A z = b` over `Z[1/k]` (free coordinates set to zero).
pub fn solve_zk(a: &[Vec<ZkFrac>], b: &[ZkFrac], k: u32, cols: usize) -> Option<Vec<ZkFrac>> {
    let kb = BigInt::from(k);
    let mut rows = Vec::with_capacity(a.len());
    let mut rhs = Vec::with_capacity(a.len());
    for (row, c) in a.iter().zip(b) {
        let depth = row.iter().chain(std::iter::once(c)).map(ZkFrac::depth).max().unwrap_or(0);
        let lift = |x: &ZkFrac| x.numerator() * num_traits::pow(kb.clone(), (depth - x.depth()) as usize);
        rows.push(row.iter().map(lift).collect::<Vec<_>>());
        rhs.push(lift(c));
    }
    let m = IntMatrix::from_rows_with_cols(&rows, cols);
    let snf = smith_normal_form(&m);
    let ub = snf.u.mul_vec(&rhs);
    let mut y = vec![ZkFrac::zero(k); cols];
    for (i, c) in ub.iter().enumerate() {
        let d = if i < cols { snf.d[(i, i)].clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
            continue;
        }
        let g = c.gcd(&d);
        let den = &d / &g;
        let num = c / &g;
        let e = k_exponent(&den, k)?;
        let scale = num_traits::pow(kb.clone(), e as usize) / &den;
        y[i] = ZkFrac::new(num * scale, e, k);
    }
    let mut z = Vec::with_capacity(cols);
    for r in 0..cols {
        let mut acc = ZkFrac::zero(k);
        for (j, yj) in y.iter().enumerate() {
            acc = acc.add(&yj.scale(&snf.v[(r, j)]));
        }
        z.push(acc);
    }
    Some(z)
}

fn wreath_candidate(system: &EquationSystem, leaf: &Leaf<CyclicRing>, u: &[i64], radius: u32) -> Option<Assignment> {
    let GroupSpec::Wreath { shape } = &system.spec else { return None };
    let pt = point_map(&leaf.params, u);
    let shifts = shift_values(&leaf.shifts, &pt);
    if !small_exponents(&shifts) {
        return None;
    }
    let comps = shape.components();
    let rad = radius as i64;
    let width = (2 * rad + 1) as usize;
    // values[atom][d + rad]
    let mut values = vec![vec![BigInt::zero(); width]; leaf.atoms.len()];
    for c in 0..comps {
        let n = shape.modulus(c);
        let atoms: Vec<usize> = leaf.atoms.iter().enumerate().filter(|(_, a)| a.component == c).map(|(i, _)| i).collect();
        let mut eqs: BTreeMap<(usize, i64), (BTreeMap<usize, BigInt>, BigInt)> = BTreeMap::new();
        for (ri, (row, _)) in leaf.rows.iter().zip(&leaf.row_components).enumerate().filter(|(_, (_, &rc))| rc == c) {
            for key in row.terms().map(|(key, _)| key) {
                let e = key.exp.eval(&pt)?;
                if e.abs() > BigInt::from(MAX_EXPONENT) {
                    return None;
                }
            }
            let constant: IntLaurent = row.atom_free_part().eval(&pt, &[])?;
            for (d, v) in constant {
                eqs.entry((ri, d)).or_default().1 -= v;
            }
            for (slot, &atom) in atoms.iter().enumerate() {
                let coeff: IntLaurent = row.coefficient(atom).eval(&pt, &[])?;
                for (d, v) in &coeff {
                    for s in -rad..=rad {
                        let col = slot * width + (s + rad) as usize;
                        let entry = eqs.entry((ri, d + s)).or_default();
                        *entry.0.entry(col).or_insert_with(BigInt::zero) += v;
                    }
                }
            }
        }
        let unknowns = atoms.len() * width;
        let slack = if n > 0 { eqs.len() } else { 0 };
        let mut mat = Vec::with_capacity(eqs.len());
        let mut rhs = Vec::with_capacity(eqs.len());
        for (i, (_, (coeffs, c))) in eqs.iter().enumerate() {
            let mut row = vec![BigInt::zero(); unknowns + slack];
            for (&j, v) in coeffs {
                row[j] = v.clone();
            }
            if n > 0 {
                row[unknowns + i] = BigInt::from(n);
            }
            mat.push(row);
            rhs.push(c.clone());
        }
        if mat.is_empty() {
            continue;
        }
        let sol = solve_linear(&IntMatrix::from_rows_with_cols(&mat, unknowns + slack), &rhs);
        let LinearSolutionSet::Lattice { particular, .. } = sol else {
            return None;
        };
        let ring = CyclicRing { n };
        for (slot, &atom) in atoms.iter().enumerate() {
            for w in 0..width {
                values[atom][w] = ring.reduce(particular[slot * width + w].clone());
            }
        }
    }
    let mut asg = Assignment::new();
    for (i, var) in system.variables.iter().enumerate() {
        let mut p = LaurentPoly::<RElem>::zero();
        for c in 0..comps {
            for w in 0..width {
                let v = &values[i * comps + c][w];
                if !v.is_zero() {
                    p.add_term(w as i64 - rad, RElem::basis(shape, c, v));
                }
            }
        }
        asg.insert(var.clone(), GroupElement::Wreath(WreathElement::new(p, shifts[i].clone())));
    }
    Some(asg)
}
