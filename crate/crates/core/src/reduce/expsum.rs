use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::affine::{AffineForm, Substitution};
use crate::rings::ZkFrac;

/// Scalar ring of an exponential sum together with the meaning of its base.
pub trait ExpRing: Clone + fmt::Debug + PartialEq + Eq + Hash {
    type C: Clone + fmt::Debug + PartialEq + Eq + Hash + fmt::Display;

    fn zero(&self) -> Self::C;
    fn from_int(&self, v: &BigInt) -> Self::C;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    /// Normal form of `c * base^e`: scalar bases fold the constant of `e` into `c`.
    fn absorb(&self, c: Self::C, e: AffineForm) -> (Self::C, AffineForm);
    fn base_symbol(&self) -> String;
}

/// `Z[1/k]` with base `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KRing {
    pub k: u32,
}

impl ExpRing for KRing {
    type C = ZkFrac;

    fn zero(&self) -> ZkFrac {
        ZkFrac::zero(self.k)
    }
    fn from_int(&self, v: &BigInt) -> ZkFrac {
        ZkFrac::from_int(v.clone(), self.k)
    }
    fn is_zero(&self, c: &ZkFrac) -> bool {
        c.is_zero()
    }
    fn add(&self, a: &ZkFrac, b: &ZkFrac) -> ZkFrac {
        a.add(b)
    }
    fn neg(&self, a: &ZkFrac) -> ZkFrac {
        a.neg()
    }
    fn mul(&self, a: &ZkFrac, b: &ZkFrac) -> ZkFrac {
        a.mul(b)
    }
    fn absorb(&self, c: ZkFrac, e: AffineForm) -> (ZkFrac, AffineForm) {
        if self.k == 1 {
            return (c, AffineForm::zero());
        }
        let shift = e.constant_term().to_i64().expect("exponent constant fits in i64");
        (c.mul_k_pow(shift), e.linear_part())
    }
    fn base_symbol(&self) -> String {
        self.k.to_string()
    }
}

/// `Z_n[t, t^-1]` (`n == 0` means `Z`) with base `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicRing {
    pub n: u64,
}

impl CyclicRing {
    pub fn reduce(&self, v: BigInt) -> BigInt {
        if self.n == 0 {
            v
        } else {
            v.mod_floor(&BigInt::from(self.n))
        }
    }
}

impl ExpRing for CyclicRing {
    type C = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_int(&self, v: &BigInt) -> BigInt {
        self.reduce(v.clone())
    }
    fn is_zero(&self, c: &BigInt) -> bool {
        c.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a + b)
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(-a)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a * b)
    }
    fn absorb(&self, c: BigInt, e: AffineForm) -> (BigInt, AffineForm) {
        (c, e)
    }
    fn base_symbol(&self) -> String {
        "t".into()
    }
}

/// Key of one term: optional atomic unknown and the exponent of the base.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermKey {
    pub atom: Option<usize>,
    pub exp: AffineForm,
}

/// `sum c * base^exp * atom`, at most one atom per term. Zero terms are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpSum<R: ExpRing> {
    ring: R,
    terms: BTreeMap<TermKey, R::C>,
}

impl<R: ExpRing> ExpSum<R> {
    pub fn zero(ring: &R) -> Self {
        ExpSum { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &R, c: R::C) -> Self {
        let mut s = Self::zero(ring);
        s.add_term(None, AffineForm::zero(), c);
        s
    }

    pub fn monomial(ring: &R, atom: Option<usize>, exp: AffineForm, c: R::C) -> Self {
        let mut s = Self::zero(ring);
        s.add_term(atom, exp, c);
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn add_term(&mut self, atom: Option<usize>, exp: AffineForm, c: R::C) {
        let (c, exp) = self.ring.absorb(c, exp);
        if self.ring.is_zero(&c) {
            return;
        }
        let key = TermKey { atom, exp };
        let sum = match self.terms.get(&key) {
            Some(old) => self.ring.add(old, &c),
            None => c,
        };
        if self.ring.is_zero(&sum) {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &R::C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A single term: nonzero for every value of the exponent variables.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The scalar value, when the sum has no atoms and no nonzero exponents.
    pub fn as_constant(&self) -> Option<R::C> {
        match self.terms.len() {
            0 => Some(self.ring.zero()),
            1 => {
                let (k, c) = self.terms.iter().next().unwrap();
                (k.atom.is_none() && k.exp.is_zero()).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// No atoms and no exponent variables: a fixed ring element.
    pub fn is_ground(&self) -> bool {
        self.terms.keys().all(|k| k.atom.is_none() && k.exp.is_constant())
    }

    pub fn atoms(&self) -> BTreeSet<usize> {
        self.terms.keys().filter_map(|k| k.atom).collect()
    }

    pub fn has_atoms(&self) -> bool {
        self.terms.keys().any(|k| k.atom.is_some())
    }

    pub fn exp_vars(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|k| k.exp.vars().cloned()).collect()
    }

    /// Atom-free coefficient of `atom`.
    pub fn coefficient(&self, atom: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, c) in &self.terms {
            if k.atom == Some(atom) {
                out.terms.insert(TermKey { atom: None, exp: k.exp.clone() }, c.clone());
            }
        }
        out
    }

    /// Terms without atoms.
    pub fn atom_free_part(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, c) in &self.terms {
            if k.atom.is_none() {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Copy with every `atom` term removed.
    pub fn drop_atom(&self, atom: usize) -> Self {
        let mut out = self.clone();
        out.terms.retain(|k, _| k.atom != Some(atom));
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.atom, k.exp.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, c) in &self.terms {
            out.terms.insert(k.clone(), self.ring.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::C) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, v) in &self.terms {
            out.add_term(k.atom, k.exp.clone(), self.ring.mul(v, c));
        }
        out
    }

    /// Product; at most one factor may carry atoms.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(!(self.has_atoms() && other.has_atoms()), "product of two atom-carrying sums");
        let mut out = Self::zero(&self.ring);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_term(k1.atom.or(k2.atom), k1.exp.add(&k2.exp), self.ring.mul(c1, c2));
            }
        }
        out
    }

    /// Multiply by `base^e`.
    pub fn mul_base_pow(&self, e: &AffineForm) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, c) in &self.terms {
            out.add_term(k.atom, k.exp.add(e), c.clone());
        }
        out
    }

    pub fn substitute(&self, sub: &Substitution) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, c) in &self.terms {
            out.add_term(k.atom, k.exp.substitute(sub), c.clone());
        }
        out
    }

    pub fn map_atoms(&self, f: impl Fn(usize) -> Option<usize>) -> Self {
        let mut out = Self::zero(&self.ring);
        for (k, c) in &self.terms {
            out.add_term(k.atom.and_then(&f), k.exp.clone(), c.clone());
        }
        out
    }

    /// Text form with `atoms[i]` naming atom `i`.
    pub fn render(&self, atoms: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let base = self.ring.base_symbol();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut s = format!("{c}");
                if !k.exp.is_zero() {
                    s.push_str(&format!("*{base}^({})", k.exp));
                }
                if let Some(a) = k.atom {
                    s.push('*');
                    s.push_str(atoms.get(a).map_or("?", |x| x.as_str()));
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

impl<R: ExpRing> fmt::Display for ExpSum<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.atoms().last().copied().unwrap_or(0)).map(|i| format!("@{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

impl ExpSum<KRing> {
    /// Value at integer exponents and atom values.
    pub fn eval(&self, point: &BTreeMap<String, BigInt>, atoms: &[ZkFrac]) -> Option<ZkFrac> {
        let mut acc = ZkFrac::zero(self.ring.k);
        for (key, c) in &self.terms {
            let e = key.exp.eval(point)?.to_i64()?;
            let mut v = if self.ring.k == 1 { c.clone() } else { c.mul_k_pow(e) };
            if let Some(a) = key.atom {
                v = v.mul(atoms.get(a)?);
            }
            acc = acc.add(&v);
        }
        Some(acc)
    }
}

/// Sparse Laurent polynomial over `Z` or `Z_n` used for concrete evaluation.
pub type IntLaurent = BTreeMap<i64, BigInt>;

pub fn laurent_add_term(p: &mut IntLaurent, d: i64, c: BigInt, ring: &CyclicRing) {
    let v = ring.reduce(p.get(&d).cloned().unwrap_or_default() + c);
    if v.is_zero() {
        p.remove(&d);
    } else {
        p.insert(d, v);
    }
}

impl ExpSum<CyclicRing> {
    /// Value as a Laurent polynomial at integer exponents and atom values.
    pub fn eval(&self, point: &BTreeMap<String, BigInt>, atoms: &[IntLaurent]) -> Option<IntLaurent> {
        let mut acc = IntLaurent::new();
        for (key, c) in &self.terms {
            let e = key.exp.eval(point)?.to_i64()?;
            match key.atom {
                None => laurent_add_term(&mut acc, e, c.clone(), &self.ring),
                Some(a) => {
                    for (d, v) in atoms.get(a)? {
                        laurent_add_term(&mut acc, e + d, c * v, &self.ring);
                    }
                }
            }
        }
        Some(acc)
    }
}
