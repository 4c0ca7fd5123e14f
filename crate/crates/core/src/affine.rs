//! Integer affine forms `sum c_v * v + c` over named variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm {
    coeffs: BTreeMap<String, BigInt>,
    constant: BigInt,
}

pub type Substitution = BTreeMap<String, AffineForm>;

impl AffineForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        AffineForm { coeffs: BTreeMap::new(), constant: c.into() }
    }

    pub fn var(name: &str) -> Self {
        Self::term(name, 1)
    }

    pub fn term(name: &str, c: impl Into<BigInt>) -> Self {
        let mut f = Self::zero();
        f.add_term(name, &c.into());
        f
    }

    pub fn from_parts(terms: impl IntoIterator<Item = (String, BigInt)>, constant: impl Into<BigInt>) -> Self {
        let mut f = Self::constant(constant);
        for (v, c) in terms {
            f.add_term(&v, &c);
        }
        f
    }

    pub fn add_term(&mut self, name: &str, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(name.to_string()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(name);
        }
    }

    pub fn add_constant(&mut self, c: &BigInt) {
        self.constant += c;
    }

    pub fn coeff(&self, name: &str) -> BigInt {
        self.coeffs.get(name).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &BTreeMap<String, BigInt> {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.coeffs.keys()
    }

    /// The same form with its constant dropped.
    pub fn linear_part(&self) -> AffineForm {
        AffineForm { coeffs: self.coeffs.clone(), constant: BigInt::zero() }
    }

    pub fn add(&self, other: &AffineForm) -> AffineForm {
        let mut out = self.clone();
        for (v, c) in &other.coeffs {
            out.add_term(v, c);
        }
        out.constant += &other.constant;
        out
    }

    pub fn neg(&self) -> AffineForm {
        self.scale(&-BigInt::one())
    }

    pub fn sub(&self, other: &AffineForm) -> AffineForm {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> AffineForm {
        if c.is_zero() {
            return AffineForm::zero();
        }
        AffineForm {
            coeffs: self.coeffs.iter().map(|(v, a)| (v.clone(), a * c)).collect(),
            constant: &self.constant * c,
        }
    }

    /// Replace variables bound in `sub`; unbound variables are kept.
    pub fn substitute(&self, sub: &Substitution) -> AffineForm {
        let mut out = AffineForm::constant(self.constant.clone());
        for (v, c) in &self.coeffs {
            match sub.get(v) {
                Some(f) => out = out.add(&f.scale(c)),
                None => out.add_term(v, c),
            }
        }
        out
    }

    pub fn rename(&self, f: impl Fn(&str) -> String) -> AffineForm {
        AffineForm::from_parts(self.coeffs.iter().map(|(v, c)| (f(v), c.clone())), self.constant.clone())
    }

    pub fn eval(&self, values: &BTreeMap<String, BigInt>) -> Option<BigInt> {
        let mut acc = self.constant.clone();
        for (v, c) in &self.coeffs {
            acc += c * values.get(v)?;
        }
        Some(acc)
    }

    /// Sign-normalized copy: first nonzero coefficient (or the constant) positive.
    pub fn normalized_sign(&self) -> AffineForm {
        let lead = self.coeffs.values().next().unwrap_or(&self.constant);
        if lead.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.coeffs {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{mag}*{v}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if !self.constant.is_zero() {
            let sign = if self.constant.is_negative() { "-" } else { "+" };
            write!(f, " {sign} {}", self.constant.abs())
        } else {
            Ok(())
        }
    }
}
