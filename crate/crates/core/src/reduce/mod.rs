//! From group equations to exponential sums over the component rings.
//!
//! A `BS(1,k)` unknown `X = (Z_X, r_X)` contributes `Z_X * k^(-prefix)` where
//! `prefix` is the sum of the shifts of the factors to its left; `X^-1`
//! contributes `-Z_X * k^(r_X - prefix)`. Wreath unknowns `X = (f_X, x_X)`
//! contribute `t^prefix * f_X` and `-t^(prefix - x_X) * f_X`. The shifts
//! themselves add up to a linear equation.

mod expsum;
mod sign;
mod tri;

pub use expsum::{laurent_add_term, CyclicRing, ExpRing, ExpSum, IntLaurent, KRing, TermKey};
pub use sign::{sign_split, Sign, SignedSystem};
pub use tri::{triangularize, Pivot, TriError, TriSystem};

use std::fmt;

use num_bigint::BigInt;

use crate::affine::{AffineForm, Substitution};
use crate::frontend::{EquationSystem, Symbol};
use crate::groups::GroupSpec;

/// Atomic unknown: component `component` of the non-shift part of `var`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub var: String,
    pub component: usize,
    pub name: String,
}

/// Rows `sum = 0` over atoms and exponent variables, plus linear equations
/// `form = 0` over the exponent variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSystem<R: ExpRing> {
    pub rows: Vec<ExpSum<R>>,
    pub lin: Vec<AffineForm>,
    pub atoms: Vec<Atom>,
    pub exp_vars: Vec<String>,
}

pub type ExpLinSystem = ExpSystem<KRing>;
pub type WreathCompSystem = ExpSystem<CyclicRing>;

impl<R: ExpRing> ExpSystem<R> {
    pub fn atom_names(&self) -> Vec<String> {
        self.atoms.iter().map(|a| a.name.clone()).collect()
    }

    /// Rows rewritten through `sub`, with the linear part dropped.
    pub fn substitute(&self, sub: &Substitution, exp_vars: Vec<String>) -> Self {
        ExpSystem {
            rows: self.rows.iter().map(|r| r.substitute(sub)).filter(|r| !r.is_zero()).collect(),
            lin: Vec::new(),
            atoms: self.atoms.clone(),
            exp_vars,
        }
    }

    /// Stable text form for debugging.
    pub fn render(&self) -> String {
        let names = self.atom_names();
        let mut out = String::new();
        out.push_str(&format!("atoms: {}\n", names.join(", ")));
        out.push_str(&format!("exponents: {}\n", self.exp_vars.join(", ")));
        for r in &self.rows {
            out.push_str(&format!("  {} = 0\n", r.render(&names)));
        }
        for l in &self.lin {
            out.push_str(&format!("  {l} = 0  (linear)\n"));
        }
        out
    }
}

impl<R: ExpRing> fmt::Display for ExpSystem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

pub fn shift_var(spec: &GroupSpec, var: &str) -> String {
    match spec {
        GroupSpec::Bs { .. } => format!("r_{var}"),
        GroupSpec::Wreath { .. } => format!("x_{var}"),
    }
}

fn push_lin(lin: &mut Vec<AffineForm>, f: AffineForm) {
    if !f.is_zero() {
        lin.push(f);
    }
}

/// Coordinates of a `BS(1,k)` system: one exponential row and one linear
/// equation per group equation.
pub fn reduce_bs(system: &EquationSystem) -> ExpLinSystem {
    let GroupSpec::Bs { k } = system.spec else {
        panic!("reduce_bs needs a BS system");
    };
    let ring = KRing { k };
    let atoms: Vec<Atom> = system
        .variables
        .iter()
        .map(|v| Atom { var: v.clone(), component: 0, name: format!("Z_{v}") })
        .collect();
    let exp_vars: Vec<String> = system.variables.iter().map(|v| shift_var(&system.spec, v)).collect();
    let index = |v: &str| system.variables.iter().position(|x| x == v).expect("known variable");
    let mut rows = Vec::new();
    let mut lin = Vec::new();
    for w in system.relators() {
        let mut row = ExpSum::zero(&ring);
        let mut prefix = AffineForm::zero();
        for letter in &w.letters {
            let e = letter.exp;
            match &letter.symbol {
                Symbol::Gen(g) if g == "a" => row.add_term(None, prefix.neg(), ring.from_int(&BigInt::from(e))),
                Symbol::Gen(_) => prefix.add_constant(&BigInt::from(e)),
                Symbol::Var(v) => {
                    let i = index(v);
                    let r = AffineForm::var(&exp_vars[i]);
                    for _ in 0..e.unsigned_abs() {
                        if e > 0 {
                            row.add_term(Some(i), prefix.neg(), ring.from_int(&BigInt::from(1)));
                            prefix = prefix.add(&r);
                        } else {
                            row.add_term(Some(i), r.sub(&prefix), ring.from_int(&BigInt::from(-1)));
                            prefix = prefix.sub(&r);
                        }
                    }
                }
            }
        }
        if !row.is_zero() {
            rows.push(row);
        }
        push_lin(&mut lin, prefix);
    }
    ExpSystem { rows, lin, atoms, exp_vars }
}

/// One system per component of `A`, all sharing the shift variables and the
/// linear equations. Atom indices are global across components.
pub fn reduce_wreath(system: &EquationSystem) -> Vec<WreathCompSystem> {
    let GroupSpec::Wreath { shape } = &system.spec else {
        panic!("reduce_wreath needs a wreath system");
    };
    let comps = shape.components();
    let single = comps == 1;
    let mut atoms = Vec::new();
    for v in &system.variables {
        for c in 0..comps {
            let name = if single { format!("f_{v}") } else { format!("f_{v}[{c}]") };
            atoms.push(Atom { var: v.clone(), component: c, name });
        }
    }
    let exp_vars: Vec<String> = system.variables.iter().map(|v| shift_var(&system.spec, v)).collect();
    let rings: Vec<CyclicRing> = (0..comps).map(|c| CyclicRing { n: shape.modulus(c) }).collect();
    let index = |v: &str| system.variables.iter().position(|x| x == v).expect("known variable");
    let mut rows: Vec<Vec<ExpSum<CyclicRing>>> = vec![Vec::new(); comps];
    let mut lin = Vec::new();
    for w in system.relators() {
        let mut row: Vec<ExpSum<CyclicRing>> = rings.iter().map(ExpSum::zero).collect();
        let mut prefix = AffineForm::zero();
        for letter in &w.letters {
            let e = letter.exp;
            match &letter.symbol {
                Symbol::Gen(g) if g == "t" => prefix.add_constant(&BigInt::from(e)),
                Symbol::Gen(g) => {
                    let idx: usize = g[1..].parse().expect("canonical generator");
                    let c = if g.starts_with('a') { idx - 1 } else { shape.free_rank + idx - 1 };
                    let coeff = rings[c].from_int(&BigInt::from(e));
                    row[c].add_term(None, prefix.clone(), coeff);
                }
                Symbol::Var(v) => {
                    let i = index(v);
                    let x = AffineForm::var(&exp_vars[i]);
                    for _ in 0..e.unsigned_abs() {
                        for (c, rc) in row.iter_mut().enumerate() {
                            let ring = &rings[c];
                            if e > 0 {
                                rc.add_term(Some(i * comps + c), prefix.clone(), ring.from_int(&BigInt::from(1)));
                            } else {
                                rc.add_term(Some(i * comps + c), prefix.sub(&x), ring.from_int(&BigInt::from(-1)));
                            }
                        }
                        prefix = if e > 0 { prefix.add(&x) } else { prefix.sub(&x) };
                    }
                }
            }
        }
        for (c, rc) in row.into_iter().enumerate() {
            if !rc.is_zero() {
                rows[c].push(rc);
            }
        }
        push_lin(&mut lin, prefix);
    }
    rows.into_iter()
        .map(|rs| ExpSystem { rows: rs, lin: lin.clone(), atoms: atoms.clone(), exp_vars: exp_vars.clone() })
        .collect()
}

/// Concatenates per-component systems produced by [`reduce_wreath`].
pub fn merge_components(parts: &[WreathCompSystem], system: &EquationSystem) -> WreathCompSystem {
    let mut merged = ExpSystem {
        rows: Vec::new(),
        lin: Vec::new(),
        atoms: Vec::new(),
        exp_vars: system.variables.iter().map(|v| shift_var(&system.spec, v)).collect(),
    };
    if let Some(first) = parts.first() {
        merged.lin = first.lin.clone();
        merged.atoms = first.atoms.clone();
    } else {
        // trivial A: only the shift equations matter
        let GroupSpec::Wreath { .. } = &system.spec else { unreachable!() };
        merged.lin = wreath_shift_equations(system);
    }
    for p in parts {
        merged.rows.extend(p.rows.iter().cloned());
    }
    merged
}

fn wreath_shift_equations(system: &EquationSystem) -> Vec<AffineForm> {
    let mut lin = Vec::new();
    for w in system.relators() {
        let mut prefix = AffineForm::zero();
        for letter in &w.letters {
            match &letter.symbol {
                Symbol::Gen(g) if g == "t" => prefix.add_constant(&BigInt::from(letter.exp)),
                Symbol::Gen(_) => {}
                Symbol::Var(v) => {
                    prefix = prefix.add(&AffineForm::term(&shift_var(&system.spec, v), letter.exp));
                }
            }
        }
        push_lin(&mut lin, prefix);
    }
    lin
}

#[cfg(test)]
mod tests;
