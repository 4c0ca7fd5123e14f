use std::fmt;

use super::{gcd_u64, RingError};

/// A residue class in `Z_n`, canonical representative in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    pub value: u64,
    pub modulus: u64,
}

impl Residue {
    pub fn new(value: i128, modulus: u64) -> Self {
        Residue { value: value.rem_euclid(modulus as i128) as u64, modulus }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        Residue::new(self.value as i128 + o.value as i128, self.modulus)
    }

    pub fn neg(&self) -> Self {
        Residue::new(-(self.value as i128), self.modulus)
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        Residue { value: ((self.value as u128 * o.value as u128) % self.modulus as u128) as u64, modulus: self.modulus }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Dense polynomial over `Z_n`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZnPoly {
    n: u64,
    coeffs: Vec<u64>,
}

impl ZnPoly {
    pub fn new(n: u64, coeffs: impl IntoIterator<Item = i128>) -> Self {
        assert!(n >= 2, "modulus must be at least 2");
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c.rem_euclid(n as i128) as u64).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ZnPoly { n, coeffs }
    }

    pub fn zero(n: u64) -> Self {
        ZnPoly::new(n, [])
    }

    pub fn one(n: u64) -> Self {
        ZnPoly::new(n, [1])
    }

    /// The monomial `t^e`.
    pub fn t_pow(n: u64, e: usize) -> Self {
        let mut c = vec![0i128; e + 1];
        c[e] = 1;
        ZnPoly::new(n, c)
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.degree(), Some(d) if d >= 1 && self.coeffs[d] == 1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        ZnPoly::new(self.n, (0..len).map(|i| self.coeff(i) as i128 + o.coeff(i) as i128))
    }

    pub fn neg(&self) -> Self {
        ZnPoly::new(self.n, self.coeffs.iter().map(|&c| -(c as i128)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ZnPoly::zero(self.n);
        }
        let mut acc = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        let n = self.n as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % n;
            }
        }
        ZnPoly::new(self.n, acc.into_iter().map(|c| c as i128))
    }

    /// Remainder on division by a monic `h`.
    pub fn rem(&self, h: &ZnPoly) -> ZnPoly {
        assert!(h.is_monic(), "division by non-monic polynomial");
        let d = h.degree().unwrap();
        let n = self.n as i128;
        let mut r: Vec<i128> = self.coeffs.iter().map(|&c| c as i128).collect();
        while r.len() > d {
            let top = r.len() - 1;
            let lead = r[top];
            if lead != 0 {
                for (j, &hc) in h.coeffs.iter().enumerate() {
                    let idx = top - d + j;
                    r[idx] = (r[idx] - lead * hc as i128).rem_euclid(n);
                }
            }
            r.pop();
        }
        ZnPoly::new(self.n, r)
    }
}

impl fmt::Display for ZnPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// A residue class of `Z_n[t]` modulo a monic `h(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    h: ZnPoly,
    rem: ZnPoly,
}

impl ModPoly {
    pub fn modulus_poly(&self) -> &ZnPoly {
        &self.h
    }

    pub fn value(&self) -> &ZnPoly {
        &self.rem
    }

    pub fn is_zero(&self) -> bool {
        self.rem.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ModPoly { h: self.h.clone(), rem: self.rem.add(&o.rem) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        poly_reduce(&self.rem.mul(&o.rem), &self.h)
    }

    /// Coordinates in the basis `1, t, ..., t^{d-1}`.
    pub fn coords(&self) -> Vec<u64> {
        let d = self.h.degree().unwrap();
        (0..d).map(|i| self.rem.coeff(i)).collect()
    }
}

/// Reduce `f` modulo the monic polynomial `h`.
pub fn poly_reduce(f: &ZnPoly, h: &ZnPoly) -> ModPoly {
    ModPoly { h: h.clone(), rem: f.rem(h) }
}

/// Least `P > 0` with `t^P = 1` modulo `h(t)` over `Z_n`.
pub fn t_period(h: &ZnPoly) -> Result<u64, RingError> {
    if !h.is_monic() {
        return Err(RingError::NotMonic(h.to_string()));
    }
    if gcd_u64(h.coeff(0), h.modulus()) != 1 {
        return Err(RingError::NonUnitConstant(h.to_string()));
    }
    let n = h.modulus();
    let t = poly_reduce(&ZnPoly::t_pow(n, 1), h);
    let one = ZnPoly::one(n);
    let mut acc = t.clone();
    let mut p = 1u64;
    while acc.rem != one {
        acc = acc.mul(&t);
        p += 1;
    }
    Ok(p)
}

/// All monic polynomials of degree `d` over `Z_n`, counting through the
/// lower coefficients with the constant term varying fastest.
pub fn monic_enum(n: u64, d: usize) -> Vec<ZnPoly> {
    assert!(n >= 2 && d >= 1);
    let count = (n as usize).pow(d as u32);
    (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((idx % n as usize) as i128);
                idx /= n as usize;
            }
            c.push(1);
            ZnPoly::new(n, c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u64, c: &[i128]) -> ZnPoly {
        ZnPoly::new(n, c.iter().copied())
    }

    #[test]
    fn period_examples() {
        assert_eq!(t_period(&p(2, &[1, 1, 1])), Ok(3));
        assert_eq!(t_period(&p(5, &[-1, 1])), Ok(1));
        assert_eq!(t_period(&p(3, &[1, 1])), Ok(2));
        assert!(matches!(t_period(&p(2, &[0, 1])), Err(RingError::NonUnitConstant(_))));
        assert!(matches!(t_period(&p(3, &[1, 2])), Err(RingError::NotMonic(_))));
    }

    #[test]
    fn monic_enumeration() {
        let lin: Vec<String> = monic_enum(2, 1).iter().map(|h| h.to_string()).collect();
        assert_eq!(lin, vec!["t", "t+1"]);
        let lin3: Vec<String> = monic_enum(3, 1).iter().map(|h| h.to_string()).collect();
        assert_eq!(lin3, vec!["t", "t+1", "t+2"]);
        let quad = monic_enum(2, 2);
        assert_eq!(quad.len(), 4);
        assert!(quad.iter().all(|h| h.is_monic() && h.degree() == Some(2)));
        let mut dedup = quad.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 4);
    }

    #[test]
    fn reduce_examples() {
        let h = p(2, &[1, 1, 1]);
        // t^3 = (t+1)(t^2+t+1) + 1 over Z_2
        assert_eq!(poly_reduce(&ZnPoly::t_pow(2, 3), &h).value(), &ZnPoly::one(2));
        for n in [2, 3, 7] {
            let h = p(n, &[2, 0, 1, 1]);
            assert!(poly_reduce(&h, &h).is_zero());
        }
        let f = p(3, &[1, 1]);
        assert_eq!(poly_reduce(&f, &p(3, &[0, 0, 1])).value(), &f);
    }

    fn zn_poly(n: u64) -> impl Strategy<Value = ZnPoly> {
        proptest::collection::vec(0i128..n as i128, 0..7).prop_map(move |c| ZnPoly::new(n, c))
    }

    proptest! {
        #[test]
        fn reduction_is_multiplicative(f in zn_poly(6), g in zn_poly(6), low in proptest::collection::vec(0i128..6, 1..4)) {
            let mut hc = low.clone();
            hc.push(1);
            let h = ZnPoly::new(6, hc);
            let lhs = poly_reduce(&f.mul(&g), &h);
            let rhs = poly_reduce(&f, &h).mul(&poly_reduce(&g, &h));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn period_is_least(n in 2u64..6, low in proptest::collection::vec(0i128..6, 1..3)) {
            let mut hc = low.clone();
            hc.push(1);
            let h = ZnPoly::new(n, hc);
            if let Ok(period) = t_period(&h) {
                let one = ZnPoly::one(n);
                prop_assert_eq!(poly_reduce(&ZnPoly::t_pow(n, period as usize), &h).value().clone(), one.clone());
                for j in 1..period {
                    prop_assert_ne!(poly_reduce(&ZnPoly::t_pow(n, j as usize), &h).value().clone(), one.clone());
                }
            }
        }
    }
}
