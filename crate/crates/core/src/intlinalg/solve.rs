use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{hermite_rows, smith_normal_form, IntMatrix, LinalgError};
use crate::affine::{AffineForm, Substitution};
use crate::serde_big;

/// Witness that `A x = b` has no integer solution: `multiplier * A` is
/// zero modulo `modulus` while `multiplier * b` is not (`modulus == 0`
/// means exact equality).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearInfeasibility {
    #[serde(with = "serde_big::vec")]
    pub multiplier: Vec<BigInt>,
    #[serde(with = "serde_big::one")]
    pub modulus: BigInt,
}

impl LinearInfeasibility {
    fn divides(&self, x: &BigInt) -> bool {
        if self.modulus.is_zero() {
            x.is_zero()
        } else {
            x.is_multiple_of(&self.modulus)
        }
    }

    /// Re-check the witness against a system.
    pub fn check(&self, a: &IntMatrix, b: &[BigInt]) -> bool {
        if self.multiplier.len() != a.rows() || b.len() != a.rows() {
            return false;
        }
        let lhs_ok = (0..a.cols()).all(|j| {
            let s: BigInt = self.multiplier.iter().enumerate().map(|(i, m)| m * &a[(i, j)]).sum();
            self.divides(&s)
        });
        let rhs: BigInt = self.multiplier.iter().zip(b).map(|(m, x)| m * x).sum();
        lhs_ok && !self.divides(&rhs)
    }
}

/// All integer solutions of `A x = b`: `particular + span_Z(basis)`.
/// `cobasis` rows recover lattice coordinates: `c = cobasis * (x - particular)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolutionSet {
    Empty(LinearInfeasibility),
    Lattice { particular: Vec<BigInt>, basis: Vec<Vec<BigInt>>, cobasis: Vec<Vec<BigInt>> },
}

impl LinearSolutionSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, LinearSolutionSet::Empty(_))
    }

    /// Canonical description of the solution lattice; equal keys mean equal sets.
    pub fn key(&self) -> Option<LatticeKey> {
        let LinearSolutionSet::Lattice { particular, basis, .. } = self else {
            return None;
        };
        let hnf = hermite_rows(basis);
        let mut p = particular.clone();
        for row in &hnf {
            let (c, pivot) = row.iter().enumerate().find(|(_, x)| !x.is_zero()).expect("nonzero row");
            let q = p[c].div_floor(pivot);
            for (pj, rj) in p.iter_mut().zip(row) {
                *pj -= &q * rj;
            }
        }
        Some(LatticeKey { point: p, basis: hnf })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeKey {
    pub point: Vec<BigInt>,
    pub basis: Vec<Vec<BigInt>>,
}

/// Integer solutions of `A x = b`.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt]) -> LinearSolutionSet {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let n = a.cols();
    let mut y = vec![BigInt::zero(); n];
    for (i, c) in ub.iter().enumerate() {
        let d = if i < n { snf.d[(i, i)].clone() } else { BigInt::zero() };
        let solvable = if d.is_zero() { c.is_zero() } else { c.is_multiple_of(&d) };
        if !solvable {
            return LinearSolutionSet::Empty(LinearInfeasibility { multiplier: snf.u.row(i).to_vec(), modulus: d });
        }
        if !d.is_zero() {
            y[i] = c / &d;
        }
    }
    let rank = snf.rank();
    let particular = snf.v.mul_vec(&y);
    let basis = (rank..n).map(|j| snf.v.col(j)).collect();
    let cobasis = (rank..n).map(|j| snf.v_inv.row(j).to_vec()).collect();
    LinearSolutionSet::Lattice { particular, basis, cobasis }
}

/// A solution set over named variables, with names for its lattice parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSolution {
    pub vars: Vec<String>,
    pub params: Vec<String>,
    pub set: LinearSolutionSet,
}

impl NamedSolution {
    /// `var -> affine form over params`, `None` when empty.
    pub fn substitution(&self) -> Option<Substitution> {
        let LinearSolutionSet::Lattice { particular, basis, .. } = &self.set else {
            return None;
        };
        let mut out = Substitution::new();
        for (i, v) in self.vars.iter().enumerate() {
            let mut f = AffineForm::constant(particular[i].clone());
            for (p, b) in self.params.iter().zip(basis) {
                f.add_term(p, &b[i]);
            }
            out.insert(v.clone(), f);
        }
        Some(out)
    }

    /// `param -> affine form over vars`, inverse to [`Self::substitution`] on the lattice.
    pub fn inverse(&self) -> Option<Substitution> {
        let LinearSolutionSet::Lattice { particular, cobasis, .. } = &self.set else {
            return None;
        };
        let mut out = Substitution::new();
        for (p, row) in self.params.iter().zip(cobasis) {
            let mut f = AffineForm::zero();
            let mut shift = BigInt::zero();
            for (i, v) in self.vars.iter().enumerate() {
                f.add_term(v, &row[i]);
                shift += &row[i] * &particular[i];
            }
            f.add_constant(&-shift);
            out.insert(p.clone(), f);
        }
        Some(out)
    }

    /// Equations `form = 0` over `vars` cutting out exactly this lattice.
    pub fn defining_equations(&self) -> Option<Vec<AffineForm>> {
        let LinearSolutionSet::Lattice { particular, basis, .. } = &self.set else {
            return None;
        };
        // integer kernel of basis^T gives the normals of the lattice
        let n = self.vars.len();
        let bt = IntMatrix::from_rows_with_cols(basis, n);
        let normals = match solve_linear(&bt, &vec![BigInt::zero(); bt.rows()]) {
            LinearSolutionSet::Lattice { basis, .. } => hermite_rows(&basis),
            LinearSolutionSet::Empty(_) => unreachable!("homogeneous systems are solvable"),
        };
        Some(
            normals
                .iter()
                .map(|row| {
                    let rhs: BigInt = row.iter().zip(particular).map(|(a, b)| a * b).sum();
                    AffineForm::from_parts(self.vars.iter().cloned().zip(row.iter().cloned()), -rhs)
                })
                .collect(),
        )
    }
}

/// Solve `forms[i] = 0` over `vars`, naming lattice parameters `{prefix}{j}`.
pub fn solve_affine(forms: &[AffineForm], vars: &[String], prefix: &str) -> NamedSolution {
    let a = IntMatrix::from_rows_with_cols(
        &forms.iter().map(|f| vars.iter().map(|v| f.coeff(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        vars.len(),
    );
    let b: Vec<BigInt> = forms.iter().map(|f| -f.constant_term()).collect();
    let set = solve_linear(&a, &b);
    let params = match &set {
        LinearSolutionSet::Lattice { basis, .. } => (0..basis.len()).map(|j| format!("{prefix}{}", j + 1)).collect(),
        LinearSolutionSet::Empty(_) => Vec::new(),
    };
    NamedSolution { vars: vars.to_vec(), params, set }
}

/// Rewrite affine forms over the free parameters of `sol`.
pub fn apply_solution(sol: &NamedSolution, forms: &[AffineForm]) -> Result<Vec<AffineForm>, LinalgError> {
    let sub = sol.substitution().ok_or(LinalgError::EmptySolution)?;
    Ok(forms.iter().map(|f| f.substitute(&sub)).collect())
}

/// Matrix and right-hand side of `forms = 0` over `vars`.
pub fn system_matrix(forms: &[AffineForm], vars: &[String]) -> (IntMatrix, Vec<BigInt>) {
    let a = IntMatrix::from_rows_with_cols(
        &forms.iter().map(|f| vars.iter().map(|v| f.coeff(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        vars.len(),
    );
    (a, forms.iter().map(|f| -f.constant_term()).collect())
}
