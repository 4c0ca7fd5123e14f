//! Residue obstructions: a leaf system reduced modulo a prime power `q`
//! (BS) or modulo `(n', h(t))` with `h` monic (wreath) depends on the
//! exponent parameters only through their residues mod the period of the
//! base, so solvability is a finite table. Tables for successive moduli
//! are intersected in a refinement node over the lcm of their periods.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::pipeline::{AnyLeaf, Leaf};
use crate::affine::AffineForm;
use crate::intlinalg::solvable_mod;
use crate::reduce::{CyclicRing, ExpSum, KRing};
use crate::rings::{divisors, gcd_u64, inv_mod, is_prime, lcm_u64, mult_order, pow_mod, primes_up_to, t_period, ZnPoly};

/// A modulus of the obstruction search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModulusDesc {
    /// `Z[1/k]` reduced mod a prime power `q` coprime to `k`.
    PrimePower { q: u64 },
    /// Component `component` reduced to `Z_n[t] / (h)`; `h` lists its
    /// coefficients from the constant term up and is monic.
    Monic { component: usize, n: u64, h: Vec<u64> },
}

impl ModulusDesc {
    pub fn render(&self) -> String {
        match self {
            ModulusDesc::PrimePower { q } => format!("q = {q}"),
            ModulusDesc::Monic { component, n, h } => {
                let poly = ZnPoly::new(*n, h.iter().map(|&c| c as i128));
                format!("component {component}: Z_{n}[t] / ({poly})")
            }
        }
    }
}

/// Solvability table of a leaf for one modulus: the residue vectors of the
/// leaf parameters mod `period` for which the reduced system is solvable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModRecord {
    pub modulus: ModulusDesc,
    pub period: u64,
    pub survivors: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableError {
    /// The modulus does not fit the leaf's group family or is malformed.
    Invalid,
    /// `period^dim` exceeds the residue cap.
    TooLarge,
}

/// Joint residue constraints on the leaf parameters: a parameter vector
/// can only be a solution if its residue mod `period` is listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementNode {
    pub dim: usize,
    pub period: u64,
    pub residues: Vec<Vec<u64>>,
    pub processed: Vec<ModulusDesc>,
}

impl RefinementNode {
    pub fn root(dim: usize) -> Self {
        RefinementNode { dim, period: 1, residues: vec![vec![0; dim]], processed: Vec::new() }
    }

    /// Intersect with a table; `None` when the work or the result exceeds `cap`.
    pub fn refine(&self, rec: &ModRecord, cap: usize) -> Option<RefinementNode> {
        let dim = self.dim;
        if rec.period == 0 || rec.survivors.iter().any(|s| s.len() != dim || s.iter().any(|&x| x >= rec.period)) {
            return None;
        }
        let period = lcm_u64(self.period, rec.period);
        let step = period / self.period;
        let lifts = step.checked_pow(dim as u32)?;
        if (self.residues.len() as u128) * (lifts as u128) > (cap as u128) * 64 {
            return None;
        }
        let allowed: BTreeSet<&Vec<u64>> = rec.survivors.iter().collect();
        let mut out = Vec::new();
        for base in &self.residues {
            for j in 0..lifts {
                let mut idx = j;
                let mut v = Vec::with_capacity(dim);
                for &b in base {
                    v.push(b + self.period * (idx % step));
                    idx /= step;
                }
                let red: Vec<u64> = v.iter().map(|x| x % rec.period).collect();
                if allowed.contains(&red) {
                    out.push(v);
                    if out.len() > cap {
                        return None;
                    }
                }
            }
        }
        out.sort();
        let mut processed = self.processed.clone();
        processed.push(rec.modulus.clone());
        Some(RefinementNode { dim, period, residues: out, processed })
    }
}

/// Prime powers coprime to `k` up to `max`, increasing.
pub fn bs_schedule(k: u32, max: u64) -> Vec<ModulusDesc> {
    crate::rings::prime_powers_coprime_to(k as u64, max).into_iter().map(|q| ModulusDesc::PrimePower { q }).collect()
}

/// `(component, n, degree)` classes in search order: for `Z_n` components
/// degree increases with divisors of `n` in decreasing order inside each
/// degree; for `Z` components primes and degrees are dovetailed along
/// diagonals. Classes of different components are interleaved by rank.
pub fn wreath_classes(moduli: &[u64], max_prime: u64, max_degree: usize) -> Vec<(usize, u64, usize)> {
    let mut ranked = Vec::new();
    for (c, &n) in moduli.iter().enumerate() {
        if n > 0 {
            let divs = divisors(n);
            for deg in 1..=max_degree {
                for (i, &d) in divs.iter().enumerate() {
                    ranked.push(((deg - 1) * divs.len() + i, deg, c, d));
                }
            }
        } else {
            for (i, &p) in primes_up_to(max_prime).iter().enumerate() {
                for deg in 1..=max_degree {
                    ranked.push((i + deg - 1, deg, c, p));
                }
            }
        }
    }
    ranked.sort();
    ranked.into_iter().map(|(_, deg, c, n)| (c, n, deg)).collect()
}

/// Lazily enumerates monic `h` with unit constant term over the classes.
pub struct WreathSchedule {
    classes: Vec<(usize, u64, usize)>,
    class: usize,
    index: u64,
}

impl WreathSchedule {
    pub fn new(moduli: &[u64], max_prime: u64, max_degree: usize) -> Self {
        WreathSchedule { classes: wreath_classes(moduli, max_prime, max_degree), class: 0, index: 0 }
    }
}

impl Iterator for WreathSchedule {
    type Item = ModulusDesc;

    fn next(&mut self) -> Option<ModulusDesc> {
        loop {
            let &(component, n, deg) = self.classes.get(self.class)?;
            let count = n.checked_pow(deg as u32).unwrap_or(u64::MAX);
            if self.index >= count {
                self.class += 1;
                self.index = 0;
                continue;
            }
            let mut idx = self.index;
            self.index += 1;
            let mut h = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                h.push(idx % n);
                idx /= n;
            }
            h.push(1);
            if gcd_u64(h[0], n) == 1 {
                return Some(ModulusDesc::Monic { component, n, h });
            }
        }
    }
}

fn residue_of(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

/// Exponent form as (coefficients per parameter, constant), reduced mod `p`.
fn exponent_residues(e: &AffineForm, params: &[String], p: u64) -> (Vec<u64>, u64) {
    (params.iter().map(|v| residue_of(&e.coeff(v), p)).collect(), residue_of(e.constant_term(), p))
}

fn eval_exponent(e: &(Vec<u64>, u64), rho: &[u64], p: u64) -> u64 {
    let mut acc = e.1 as u128;
    for (c, r) in e.0.iter().zip(rho) {
        acc += *c as u128 * *r as u128;
    }
    (acc % p as u128) as u64
}

fn residue_vectors(dim: usize, period: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = period.pow(dim as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; dim];
        for slot in v.iter_mut().rev() {
            *slot = idx % period;
            idx /= period;
        }
        v
    })
}

fn checked_total(period: u64, dim: usize, cap: u64) -> Result<u64, TableError> {
    match period.checked_pow(dim as u32) {
        Some(t) if t <= cap => Ok(t),
        _ => Err(TableError::TooLarge),
    }
}

/// Period and survivor table of `leaf` for `desc`, or an error when the
/// modulus does not apply or the table would have more than `cap` entries.
pub fn survivor_table(leaf: &AnyLeaf, desc: &ModulusDesc, cap: u64) -> Result<(u64, Vec<Vec<u64>>), TableError> {
    match (leaf, desc) {
        (AnyLeaf::Bs(l), ModulusDesc::PrimePower { q }) => bs_table(l, *q, cap),
        (AnyLeaf::Wreath(l), ModulusDesc::Monic { component, n, h }) => wreath_table(l, *component, *n, h, cap),
        _ => Err(TableError::Invalid),
    }
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q has a prime factor");
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1
}

fn bs_table(leaf: &Leaf<KRing>, q: u64, cap: u64) -> Result<(u64, Vec<Vec<u64>>), TableError> {
    let k = leaf.component_rings[0].k as u64;
    if !is_prime_power(q) || gcd_u64(k, q) != 1 {
        return Err(TableError::Invalid);
    }
    let period = mult_order(k, q).map_err(|_| TableError::Invalid)?;
    let dim = leaf.params.len();
    checked_total(period, dim, cap)?;
    let k_inv = inv_mod(k % q, q).map_err(|_| TableError::Invalid)?;
    let powers: Vec<u64> = (0..period).map(|e| pow_mod(k, e, q)).collect();
    let natoms = leaf.atoms.len();
    // per row: (atom, coefficient mod q, exponent residues)
    let rows: Vec<Vec<(Option<usize>, u64, (Vec<u64>, u64))>> = leaf
        .rows
        .iter()
        .map(|r: &ExpSum<KRing>| {
            r.terms()
                .map(|(key, c)| (key.atom, c.residue(q, k_inv), exponent_residues(&key.exp, &leaf.params, period)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for rho in residue_vectors(dim, period) {
        let mut a = vec![vec![0u64; natoms]; rows.len()];
        let mut b = vec![0u64; rows.len()];
        for (i, terms) in rows.iter().enumerate() {
            for (atom, c, e) in terms {
                let v = ((*c as u128 * powers[eval_exponent(e, &rho, period) as usize] as u128) % q as u128) as u64;
                match atom {
                    Some(j) => a[i][*j] = (a[i][*j] + v) % q,
                    None => b[i] = (b[i] + q - v) % q,
                }
            }
        }
        if solvable_mod(&a, &b, q) {
            out.push(rho);
        }
    }
    Ok((period, out))
}

/// `g * t` modulo the monic `h` over `Z_n`, in coordinates.
fn mul_t(g: &[u64], h: &[u64], n: u64) -> Vec<u64> {
    let d = g.len();
    let top = g[d - 1];
    let mut out = vec![0u64; d];
    for i in 0..d {
        let shifted = if i == 0 { 0 } else { g[i - 1] };
        let sub = ((top as u128 * h[i] as u128) % n as u128) as u64;
        out[i] = (shifted + n - sub) % n;
    }
    out
}

fn add_scaled(acc: &mut [u64], v: &[u64], c: u64, n: u64) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a = ((*a as u128 + c as u128 * *x as u128) % n as u128) as u64;
    }
}

fn wreath_table(
    leaf: &Leaf<CyclicRing>,
    component: usize,
    n: u64,
    h: &[u64],
    cap: u64,
) -> Result<(u64, Vec<Vec<u64>>), TableError> {
    let Some(base) = component_modulus(leaf, component) else {
        return Err(TableError::Invalid);
    };
    let fits = if base == 0 { is_prime(n) } else { n >= 2 && base % n == 0 };
    if !fits || h.len() < 2 || h.last() != Some(&1) || h.iter().any(|&c| c >= n) || gcd_u64(h[0], n) != 1 {
        return Err(TableError::Invalid);
    }
    let hp = ZnPoly::new(n, h.iter().map(|&c| c as i128));
    let period = t_period(&hp).map_err(|_| TableError::Invalid)?;
    let dim = leaf.params.len();
    checked_total(period, dim, cap)?;
    let d = h.len() - 1;
    let hlow = &h[..d];
    // coordinates of t^e mod h for e in [0, period)
    let mut tpow = Vec::with_capacity(period as usize);
    let mut cur = vec![0u64; d];
    cur[0] = 1 % n;
    for _ in 0..period {
        tpow.push(cur.clone());
        cur = mul_t(&cur, hlow, n);
    }
    let atoms: Vec<usize> =
        leaf.atoms.iter().enumerate().filter(|(_, a)| a.component == component).map(|(i, _)| i).collect();
    let col = |a: usize| atoms.iter().position(|&x| x == a);
    let rows: Vec<Vec<(Option<usize>, u64, (Vec<u64>, u64))>> = leaf
        .rows
        .iter()
        .zip(&leaf.row_components)
        .filter(|(_, &c)| c == component)
        .map(|(r, _)| {
            r.terms()
                .map(|(key, c)| (key.atom, residue_of(c, n), exponent_residues(&key.exp, &leaf.params, period)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for rho in residue_vectors(dim, period) {
        let mut a = vec![vec![0u64; atoms.len() * d]; rows.len() * d];
        let mut b = vec![0u64; rows.len() * d];
        for (i, terms) in rows.iter().enumerate() {
            let mut coeffs = vec![vec![0u64; d]; atoms.len()];
            let mut constant = vec![0u64; d];
            for (atom, c, e) in terms {
                let tp = &tpow[eval_exponent(e, &rho, period) as usize];
                match atom.and_then(col) {
                    Some(j) => add_scaled(&mut coeffs[j], tp, *c, n),
                    None => add_scaled(&mut constant, tp, *c, n),
                }
            }
            for (j, g) in coeffs.iter().enumerate() {
                let mut colv = g.clone();
                for s in 0..d {
                    for r in 0..d {
                        a[i * d + r][j * d + s] = colv[r];
                    }
                    colv = mul_t(&colv, hlow, n);
                }
            }
            for r in 0..d {
                b[i * d + r] = (n - constant[r]) % n;
            }
        }
        if solvable_mod(&a, &b, n) {
            out.push(rho);
        }
    }
    Ok((period, out))
}

fn component_modulus(leaf: &Leaf<CyclicRing>, component: usize) -> Option<u64> {
    leaf.component_rings.get(component).map(|r| r.n)
}

/// Outcome of feeding one modulus to a refinement node.
pub enum Refinement {
    /// No residue was excluded or the table was too large; nothing recorded.
    Skipped,
    Refined(RefinementNode, ModRecord),
    /// The survivor set outgrew the cap.
    Saturated,
}

pub fn refine_with(
    leaf: &AnyLeaf,
    node: &RefinementNode,
    desc: &ModulusDesc,
    residue_cap: u64,
    survivor_cap: usize,
) -> (u64, Refinement) {
    let (period, survivors) = match survivor_table(leaf, desc, residue_cap) {
        Ok(t) => t,
        Err(_) => return (1, Refinement::Skipped),
    };
    let total = period.pow(leaf.dim() as u32);
    if survivors.len() as u64 == total {
        return (total, Refinement::Skipped);
    }
    let rec = ModRecord { modulus: desc.clone(), period, survivors };
    match node.refine(&rec, survivor_cap) {
        Some(next) => (total, Refinement::Refined(next, rec)),
        None => (total, Refinement::Saturated),
    }
}

/// Replays a chain: every table must match its recomputation and the final
/// intersection must be empty.
pub fn check_chain(leaf: &AnyLeaf, chain: &[ModRecord], residue_cap: u64, survivor_cap: usize) -> bool {
    let mut node = RefinementNode::root(leaf.dim());
    for rec in chain {
        match survivor_table(leaf, &rec.modulus, residue_cap) {
            Ok((p, s)) if p == rec.period && s == rec.survivors => {}
            _ => return false,
        }
        match node.refine(rec, survivor_cap) {
            Some(next) => node = next,
            None => return false,
        }
    }
    !chain.is_empty() && node.residues.is_empty()
}
