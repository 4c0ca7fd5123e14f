use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An element `z * k^-i` of `Z[1/k]`, kept in canonical form: either
/// `i == 0` or `k` does not divide `z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZkFrac {
    z: BigInt,
    i: u64,
    k: u32,
}

/// Canonical form of `z * k^-i`.
pub fn zk_normalize(z: BigInt, i: u64, k: u32) -> ZkFrac {
    assert!(k >= 1, "base must be positive");
    let mut z = z;
    let mut i = i;
    if z.is_zero() || k == 1 {
        // BS(1,1) has no k-adic denominators at all.
        return ZkFrac { z, i: 0, k };
    }
    let kb = BigInt::from(k);
    while i > 0 {
        let (q, r) = z.div_rem(&kb);
        if !r.is_zero() {
            break;
        }
        z = q;
        i -= 1;
    }
    ZkFrac { z, i, k }
}

impl ZkFrac {
    pub fn new(z: impl Into<BigInt>, i: u64, k: u32) -> Self {
        zk_normalize(z.into(), i, k)
    }

    pub fn from_int(z: impl Into<BigInt>, k: u32) -> Self {
        ZkFrac { z: z.into(), i: 0, k }
    }

    pub fn zero(k: u32) -> Self {
        ZkFrac { z: BigInt::zero(), i: 0, k }
    }

    pub fn one(k: u32) -> Self {
        ZkFrac { z: BigInt::one(), i: 0, k }
    }

    /// `k^e` for any integer `e`.
    pub fn k_pow(k: u32, e: i64) -> Self {
        Self::one(k).mul_k_pow(e)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.z
    }

    pub fn depth(&self) -> u64 {
        self.i
    }

    pub fn base(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.i == 0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        (self.i == 0).then(|| self.z.clone())
    }

    pub fn signum(&self) -> i32 {
        match self.z.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        ZkFrac { z: self.z.abs(), i: self.i, k: self.k }
    }

    fn check_base(&self, other: &Self) {
        assert_eq!(self.k, other.k, "mixing Z[1/k] elements of different bases");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_base(other);
        let i = self.i.max(other.i);
        let kb = BigInt::from(self.k);
        let a = &self.z * num_traits::pow(kb.clone(), (i - self.i) as usize);
        let b = &other.z * num_traits::pow(kb, (i - other.i) as usize);
        zk_normalize(a + b, i, self.k)
    }

    pub fn neg(&self) -> Self {
        ZkFrac { z: -&self.z, i: self.i, k: self.k }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_base(other);
        zk_normalize(&self.z * &other.z, self.i + other.i, self.k)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        zk_normalize(&self.z * c, self.i, self.k)
    }

    /// Multiply by `k^e`.
    pub fn mul_k_pow(&self, e: i64) -> Self {
        if self.k == 1 || self.z.is_zero() {
            return self.clone();
        }
        if e >= 0 {
            let e = e as u64;
            if self.i >= e {
                ZkFrac { z: self.z.clone(), i: self.i - e, k: self.k }
            } else {
                let lift = num_traits::pow(BigInt::from(self.k), (e - self.i) as usize);
                ZkFrac { z: &self.z * lift, i: 0, k: self.k }
            }
        } else {
            zk_normalize(self.z.clone(), self.i + e.unsigned_abs(), self.k)
        }
    }

    /// Image in `Z/q` given `k^-1 mod q`.
    pub fn residue(&self, q: u64, k_inv: u64) -> u64 {
        let zq = self.z.mod_floor(&BigInt::from(q));
        let zq: u64 = zq.try_into().expect("residue fits");
        let d = super::pow_mod(k_inv, self.i, q);
        ((zq as u128 * d as u128) % q as u128) as u64
    }

    /// Compare absolute values.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.check_base(other);
        let i = self.i.max(other.i);
        let kb = BigInt::from(self.k);
        let a = self.z.abs() * num_traits::pow(kb.clone(), (i - self.i) as usize);
        let b = other.z.abs() * num_traits::pow(kb, (i - other.i) as usize);
        a.cmp(&b)
    }
}

impl fmt::Display for ZkFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i == 0 {
            write!(f, "{}", self.z)
        } else {
            write!(f, "{}*{}^-{}", self.z, self.k, self.i)
        }
    }
}
