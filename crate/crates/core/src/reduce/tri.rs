use std::collections::BTreeSet;

use thiserror::Error;

use super::{ExpRing, ExpSum};

/// Row `row = 0` solved for `atom`, whose coefficient `coeff` is nonzero on the branch.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pivot<R: ExpRing> {
    pub atom: usize,
    pub coeff: ExpSum<R>,
    pub row: ExpSum<R>,
}

/// One branch of the elimination. Later pivots never occur in earlier rows'
/// coefficients; `residuals` are atom-free consequences (including vanishing
/// conditions of dropped pivots); `nonzero` lists assumed nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriSystem<R: ExpRing> {
    pub pivots: Vec<Pivot<R>>,
    pub residuals: Vec<ExpSum<R>>,
    pub nonzero: Vec<ExpSum<R>>,
}

impl<R: ExpRing> TriSystem<R> {
    pub fn render(&self, atoms: &[String]) -> String {
        let mut out = String::new();
        for p in &self.pivots {
            let name = atoms.get(p.atom).map_or("?", |s| s.as_str());
            out.push_str(&format!("  pivot {name}: {} = 0\n", p.row.render(atoms)));
        }
        for r in &self.residuals {
            out.push_str(&format!("  residual: {} = 0\n", r.render(atoms)));
        }
        for n in &self.nonzero {
            out.push_str(&format!("  nonzero: {}\n", n.render(atoms)));
        }
        out
    }

    fn canonical_key(&self) -> String {
        let mut res: Vec<String> = self.residuals.iter().map(|r| format!("{r:?}")).collect();
        res.sort();
        res.dedup();
        let mut nz: Vec<String> = self.nonzero.iter().map(|r| format!("{r:?}")).collect();
        nz.sort();
        nz.dedup();
        format!("{:?}|{res:?}|{nz:?}", self.pivots)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriError {
    #[error("elimination produced more than {0} branches")]
    TooManyBranches(usize),
}

struct State<R: ExpRing> {
    rows: Vec<ExpSum<R>>,
    tri: TriSystem<R>,
}

/// Outcome of adding an atom-free equation to a branch.
fn push_residual<R: ExpRing>(tri: &mut TriSystem<R>, r: ExpSum<R>) -> bool {
    if r.is_zero() {
        return true;
    }
    if r.is_ground() {
        return false;
    }
    if !tri.residuals.contains(&r) {
        tri.residuals.push(r);
    }
    true
}

fn definitely_nonzero<R: ExpRing>(c: &ExpSum<R>) -> bool {
    c.is_monomial() || (c.is_ground() && !c.is_zero())
}

/// Fraction-free Gaussian elimination on the atoms, splitting on whether a
/// non-monomial pivot coefficient vanishes. The union of the branches'
/// solution sets contains the input's; each branch is implied by the input
/// together with its own assumptions.
pub fn triangularize<R: ExpRing>(rows: &[ExpSum<R>], max_branches: usize) -> Result<Vec<TriSystem<R>>, TriError> {
    let mut stack = vec![State {
        rows: Vec::new(),
        tri: TriSystem { pivots: Vec::new(), residuals: Vec::new(), nonzero: Vec::new() },
    }];
    let mut alive = true;
    for r in rows {
        if r.has_atoms() {
            stack[0].rows.push(r.clone());
        } else {
            alive &= push_residual(&mut stack[0].tri, r.clone());
        }
    }
    if !alive {
        return Ok(Vec::new());
    }
    let mut done: Vec<TriSystem<R>> = Vec::new();
    let mut seen = BTreeSet::new();
    while let Some(mut st) = stack.pop() {
        if stack.len() + done.len() > max_branches {
            return Err(TriError::TooManyBranches(max_branches));
        }
        let Some((ri, atom, coeff)) = choose_pivot(&st.rows) else {
            if seen.insert(st.tri.canonical_key()) {
                done.push(st.tri);
            }
            continue;
        };
        if !definitely_nonzero(&coeff) {
            // branch where the coefficient vanishes: drop the atom from this row
            let mut zero = State { rows: st.rows.clone(), tri: st.tri.clone() };
            let reduced = zero.rows[ri].drop_atom(atom);
            let mut ok = push_residual(&mut zero.tri, coeff.clone());
            if reduced.has_atoms() {
                zero.rows[ri] = reduced;
            } else {
                zero.rows.remove(ri);
                ok &= push_residual(&mut zero.tri, reduced);
            }
            if !coeff.is_ground() && !st.tri.nonzero.contains(&coeff) {
                st.tri.nonzero.push(coeff.clone());
            }
            if ok {
                stack.push(zero);
            }
        }
        if eliminate(&mut st, ri, atom, coeff) {
            stack.push(st);
        }
    }
    Ok(done)
}

fn choose_pivot<R: ExpRing>(rows: &[ExpSum<R>]) -> Option<(usize, usize, ExpSum<R>)> {
    let mut best: Option<((u8, usize, usize, usize), ExpSum<R>)> = None;
    for (ri, row) in rows.iter().enumerate() {
        for atom in row.atoms() {
            let c = row.coefficient(atom);
            let score = (u8::from(!definitely_nonzero(&c)), c.len(), ri, atom);
            if best.as_ref().is_none_or(|(s, _)| score < *s) {
                best = Some((score, c));
            }
        }
    }
    best.map(|((_, _, ri, atom), c)| (ri, atom, c))
}

fn eliminate<R: ExpRing>(st: &mut State<R>, ri: usize, atom: usize, coeff: ExpSum<R>) -> bool {
    let pivot_row = st.rows.remove(ri);
    // a monomial c*base^L is cleared by base^-L, leaving only the scalar c
    let (scale, pivot_factor) = match coeff.terms().next() {
        Some((k, c)) if coeff.is_monomial() => {
            let ring = coeff.ring();
            (ExpSum::constant(ring, c.clone()), Some(k.exp.neg()))
        }
        _ => (coeff.clone(), None),
    };
    let mut rest = Vec::new();
    let mut ok = true;
    for row in st.rows.drain(..) {
        let cj = row.coefficient(atom);
        let new_row = if cj.is_zero() {
            row
        } else {
            let cj = match &pivot_factor {
                Some(e) => cj.mul_base_pow(e),
                None => cj,
            };
            scale.mul(&row).sub(&cj.mul(&pivot_row))
        };
        if new_row.has_atoms() {
            rest.push(new_row);
        } else {
            ok &= push_residual(&mut st.tri, new_row);
        }
    }
    st.rows = rest;
    st.tri.pivots.push(Pivot { atom, coeff, row: pivot_row });
    ok
}
