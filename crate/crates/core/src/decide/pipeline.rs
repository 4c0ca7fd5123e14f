//! Root system after the linear stage, and its leaves: sublattices of the
//! shift parameters on which the atom systems are examined separately.

use std::collections::BTreeSet;

use crate::affine::{AffineForm, Substitution};
use crate::expsolve::{grouping_solve, semenov_solve_sums, ExpSolveError, SolveBudget};
use crate::frontend::EquationSystem;
use crate::groups::GroupSpec;
use crate::intlinalg::{solve_affine, AffineLattice, LinearInfeasibility, LinearSolutionSet};
use crate::reduce::{reduce_bs, reduce_wreath, triangularize, Atom, CyclicRing, ExpRing, ExpSum, KRing};

/// Branch cap for triangularization before falling back to a single leaf.
pub const TRI_BRANCHES: usize = 64;
/// Node budget of the exponential solvers before falling back.
pub const EXP_BUDGET: u64 = 20_000;

/// Ring families whose residual equations can be solved exactly.
pub trait Family: ExpRing {
    fn solve_residuals(
        rows: &[ExpSum<Self>],
        vars: &[String],
        budget: &mut SolveBudget,
    ) -> Result<Vec<AffineLattice>, ExpSolveError>;
}

impl Family for KRing {
    fn solve_residuals(
        rows: &[ExpSum<KRing>],
        vars: &[String],
        budget: &mut SolveBudget,
    ) -> Result<Vec<AffineLattice>, ExpSolveError> {
        if rows.is_empty() {
            return Ok(vec![AffineLattice::full(vars.to_vec())]);
        }
        semenov_solve_sums(rows, vars, budget)
    }
}

impl Family for CyclicRing {
    fn solve_residuals(
        rows: &[ExpSum<CyclicRing>],
        vars: &[String],
        budget: &mut SolveBudget,
    ) -> Result<Vec<AffineLattice>, ExpSolveError> {
        grouping_solve(rows, vars, budget)
    }
}

/// Atom rows after the shift equations are solved.
#[derive(Clone, Debug)]
pub struct Root<R: ExpRing> {
    /// Lattice parameters of the shift solution.
    pub params: Vec<String>,
    /// Shift variable of each group variable, as a form over `params`.
    pub shifts: Vec<(String, AffineForm)>,
    pub atoms: Vec<Atom>,
    pub rows: Vec<ExpSum<R>>,
    /// Component of `A` each row lives in (always 0 for BS).
    pub row_components: Vec<usize>,
    /// Ring of each component (a single one for BS).
    pub component_rings: Vec<R>,
}

/// The root restricted to a sublattice of its parameters.
#[derive(Clone, Debug)]
pub struct Leaf<R: ExpRing> {
    pub lattice: AffineLattice,
    pub params: Vec<String>,
    pub shifts: Vec<(String, AffineForm)>,
    pub atoms: Vec<Atom>,
    pub rows: Vec<ExpSum<R>>,
    pub row_components: Vec<usize>,
    pub component_rings: Vec<R>,
}

#[derive(Clone, Debug)]
pub enum AnyRoot {
    Bs(Root<KRing>),
    Wreath(Root<CyclicRing>),
}

#[derive(Clone, Debug)]
pub enum AnyLeaf {
    Bs(Leaf<KRing>),
    Wreath(Leaf<CyclicRing>),
}

/// How the leaf list was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    /// Union of the leaves is exactly the set of parameters where the atom
    /// system can be solvable; pruned leaves carried a vanishing pivot.
    Exact { leaves: Vec<AffineLattice>, pruned: usize },
    /// Triangularization left no consistent branch.
    EmptyTriangular,
    /// Every branch had an empty residual solution set.
    EmptyResidual,
    /// Budgets were exceeded; the full parameter lattice is the only leaf.
    Fallback,
}

/// Linear stage: solve the shift equations, or return the obstruction.
pub fn build_root(system: &EquationSystem) -> Result<AnyRoot, LinearInfeasibility> {
    match &system.spec {
        GroupSpec::Bs { k } => {
            let red = reduce_bs(system);
            let (params, sub) = solve_shifts(&red.lin, &red.exp_vars)?;
            let rows: Vec<_> = red.rows.iter().map(|r| r.substitute(&sub)).filter(|r| !r.is_zero()).collect();
            Ok(AnyRoot::Bs(Root {
                params,
                shifts: red.exp_vars.iter().map(|v| (v.clone(), sub[v].clone())).collect(),
                atoms: red.atoms.clone(),
                row_components: vec![0; rows.len()],
                rows,
                component_rings: vec![KRing { k: *k }],
            }))
        }
        GroupSpec::Wreath { shape } => {
            let parts = reduce_wreath(system);
            let first = &parts[0];
            let (params, sub) = solve_shifts(&first.lin, &first.exp_vars)?;
            let mut rows = Vec::new();
            let mut row_components = Vec::new();
            for (c, part) in parts.iter().enumerate() {
                for r in &part.rows {
                    let r = r.substitute(&sub);
                    if !r.is_zero() {
                        rows.push(r);
                        row_components.push(c);
                    }
                }
            }
            Ok(AnyRoot::Wreath(Root {
                params,
                shifts: first.exp_vars.iter().map(|v| (v.clone(), sub[v].clone())).collect(),
                atoms: first.atoms.clone(),
                rows,
                row_components,
                component_rings: (0..shape.components()).map(|c| CyclicRing { n: shape.modulus(c) }).collect(),
            }))
        }
    }
}

/// Coefficient matrix data of the shift equations, for certificate checks.
pub fn shift_equations(system: &EquationSystem) -> (Vec<AffineForm>, Vec<String>) {
    match &system.spec {
        GroupSpec::Bs { .. } => {
            let red = reduce_bs(system);
            (red.lin, red.exp_vars)
        }
        GroupSpec::Wreath { .. } => {
            let parts = reduce_wreath(system);
            (parts[0].lin.clone(), parts[0].exp_vars.clone())
        }
    }
}

fn solve_shifts(lin: &[AffineForm], vars: &[String]) -> Result<(Vec<String>, Substitution), LinearInfeasibility> {
    let sol = solve_affine(lin, vars, "s");
    if let LinearSolutionSet::Empty(inf) = &sol.set {
        return Err(inf.clone());
    }
    let sub = sol.substitution().expect("nonempty");
    Ok((sol.params, sub))
}

impl<R: ExpRing> Root<R> {
    pub fn full_lattice(&self) -> AffineLattice {
        AffineLattice::full(self.params.clone())
    }

    /// The root rows over the parameters of `lattice`, named `u1, u2, ...`.
    pub fn leaf(&self, lattice: &AffineLattice) -> Leaf<R> {
        let sub = lattice.substitution("u");
        Leaf {
            lattice: lattice.clone(),
            params: lattice.param_names("u"),
            shifts: self.shifts.iter().map(|(v, f)| (v.clone(), f.substitute(&sub))).collect(),
            atoms: self.atoms.clone(),
            rows: self.rows.iter().map(|r| r.substitute(&sub)).collect(),
            row_components: self.row_components.clone(),
            component_rings: self.component_rings.clone(),
        }
    }
}

impl<R: Family> Root<R> {
    /// Split the parameter space by triangularizing the atom rows and solving
    /// each branch's residual equations.
    pub fn structure(&self) -> Structure {
        let branches = match triangularize(&self.rows, TRI_BRANCHES) {
            Ok(b) => b,
            Err(_) => return Structure::Fallback,
        };
        if branches.is_empty() {
            return Structure::EmptyTriangular;
        }
        let mut budget = SolveBudget::new(EXP_BUDGET);
        let mut leaves = BTreeSet::new();
        let mut pruned = 0;
        for br in &branches {
            let lattices = match R::solve_residuals(&br.residuals, &self.params, &mut budget) {
                Ok(l) => l,
                Err(_) => return Structure::Fallback,
            };
            for lat in lattices {
                let sub = lat.substitution("u");
                if br.nonzero.iter().any(|c| c.substitute(&sub).is_zero()) {
                    pruned += 1;
                } else {
                    leaves.insert(lat);
                }
            }
        }
        if leaves.is_empty() {
            return Structure::EmptyResidual;
        }
        Structure::Exact { leaves: leaves.into_iter().collect(), pruned }
    }
}

impl AnyRoot {
    pub fn params(&self) -> &[String] {
        match self {
            AnyRoot::Bs(r) => &r.params,
            AnyRoot::Wreath(r) => &r.params,
        }
    }

    pub fn full_lattice(&self) -> AffineLattice {
        AffineLattice::full(self.params().to_vec())
    }

    pub fn structure(&self) -> Structure {
        match self {
            AnyRoot::Bs(r) => r.structure(),
            AnyRoot::Wreath(r) => r.structure(),
        }
    }

    pub fn leaf(&self, lattice: &AffineLattice) -> AnyLeaf {
        match self {
            AnyRoot::Bs(r) => AnyLeaf::Bs(r.leaf(lattice)),
            AnyRoot::Wreath(r) => AnyLeaf::Wreath(r.leaf(lattice)),
        }
    }

    /// Text form for `--debug-stage`.
    pub fn render(&self) -> String {
        match self {
            AnyRoot::Bs(r) => render_root(r),
            AnyRoot::Wreath(r) => render_root(r),
        }
    }

    /// Triangular branches of the root rows, for `--debug-stage`.
    pub fn render_triangular(&self) -> String {
        match self {
            AnyRoot::Bs(r) => render_tri(r),
            AnyRoot::Wreath(r) => render_tri(r),
        }
    }
}

fn render_tri<R: ExpRing>(r: &Root<R>) -> String {
    let names: Vec<String> = r.atoms.iter().map(|a| a.name.clone()).collect();
    match triangularize(&r.rows, TRI_BRANCHES) {
        Err(e) => format!("{e}\n"),
        Ok(branches) if branches.is_empty() => "no consistent branch\n".into(),
        Ok(branches) => {
            let mut out = String::new();
            for (i, b) in branches.iter().enumerate() {
                out.push_str(&format!("branch {i}:\n{}", b.render(&names)));
            }
            out
        }
    }
}

fn render_root<R: ExpRing>(r: &Root<R>) -> String {
    let names: Vec<String> = r.atoms.iter().map(|a| a.name.clone()).collect();
    let mut out = format!("parameters: {}\n", r.params.join(", "));
    for (v, f) in &r.shifts {
        out.push_str(&format!("  {v} = {f}\n"));
    }
    for (row, c) in r.rows.iter().zip(&r.row_components) {
        out.push_str(&format!("  [{c}] {} = 0\n", row.render(&names)));
    }
    out
}

impl AnyLeaf {
    pub fn lattice(&self) -> &AffineLattice {
        match self {
            AnyLeaf::Bs(l) => &l.lattice,
            AnyLeaf::Wreath(l) => &l.lattice,
        }
    }

    pub fn dim(&self) -> usize {
        self.lattice().dim()
    }
}
