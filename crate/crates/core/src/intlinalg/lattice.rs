use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use serde::{Deserialize, Serialize};

use super::{LinearSolutionSet, NamedSolution};
use crate::affine::{AffineForm, Substitution};
use crate::serde_big;

/// `point + span_Z(basis)` over named variables, in canonical form: `basis`
/// is in Hermite normal form and `point` is reduced against it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineLattice {
    pub vars: Vec<String>,
    #[serde(with = "serde_big::vec")]
    pub point: Vec<BigInt>,
    #[serde(with = "serde_big::nested")]
    pub basis: Vec<Vec<BigInt>>,
}

impl AffineLattice {
    pub fn new(vars: Vec<String>, point: Vec<BigInt>, basis: Vec<Vec<BigInt>>) -> Self {
        let set = LinearSolutionSet::Lattice { particular: point, basis, cobasis: Vec::new() };
        let key = set.key().expect("lattice");
        AffineLattice { vars, point: key.point, basis: key.basis }
    }

    /// All of `Z^vars`.
    pub fn full(vars: Vec<String>) -> Self {
        let n = vars.len();
        let basis = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
            .collect();
        AffineLattice { vars, point: vec![BigInt::zero(); n], basis }
    }

    pub fn from_solution(sol: &NamedSolution) -> Option<Self> {
        match &sol.set {
            LinearSolutionSet::Lattice { particular, basis, .. } => {
                Some(Self::new(sol.vars.clone(), particular.clone(), basis.clone()))
            }
            LinearSolutionSet::Empty(_) => None,
        }
    }

    /// Image of `params` under `sub`, which maps each of `vars` to a form over `params`.
    pub fn from_substitution(vars: &[String], sub: &Substitution, params: &[String]) -> Self {
        let point = vars.iter().map(|v| sub[v].constant_term().clone()).collect();
        let basis = params.iter().map(|p| vars.iter().map(|v| sub[v].coeff(p)).collect()).collect();
        Self::new(vars.to_vec(), point, basis)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn param_names(&self, prefix: &str) -> Vec<String> {
        (1..=self.dim()).map(|i| format!("{prefix}{i}")).collect()
    }

    /// `var -> form over param_names(prefix)`.
    pub fn substitution(&self, prefix: &str) -> Substitution {
        let params = self.param_names(prefix);
        self.vars
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut f = AffineForm::constant(self.point[i].clone());
                for (p, b) in params.iter().zip(&self.basis) {
                    f.add_term(p, &b[i]);
                }
                (v.clone(), f)
            })
            .collect()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        let mut rem: Vec<BigInt> = x.iter().zip(&self.point).map(|(a, b)| a - b).collect();
        for row in &self.basis {
            let (c, pivot) = row.iter().enumerate().find(|(_, v)| !v.is_zero()).expect("nonzero row");
            let (q, r) = rem[c].div_rem(pivot);
            if !r.is_zero() {
                return false;
            }
            for (x, b) in rem.iter_mut().zip(row) {
                *x -= &q * b;
            }
        }
        rem.iter().all(Zero::is_zero)
    }

    /// Equations `form = 0` over `vars` cutting out exactly this lattice.
    pub fn defining_equations(&self) -> Vec<AffineForm> {
        let sol = NamedSolution {
            vars: self.vars.clone(),
            params: self.param_names("_"),
            set: LinearSolutionSet::Lattice {
                particular: self.point.clone(),
                basis: self.basis.clone(),
                cobasis: Vec::new(),
            },
        };
        sol.defining_equations().expect("lattice")
    }
}

impl fmt::Display for AffineLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tuple = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "({}) = ({})", self.vars.join(", "), tuple(&self.point))?;
        for b in &self.basis {
            write!(f, " + Z({})", tuple(b))?;
        }
        Ok(())
    }
}
