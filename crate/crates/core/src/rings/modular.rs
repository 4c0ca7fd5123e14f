use super::RingError;

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd_u64(a, b) * b
}

pub fn pow_mod(base: u64, mut e: u64, q: u64) -> u64 {
    if q == 1 {
        return 0;
    }
    let mut b = (base % q) as u128;
    let mut acc: u128 = 1;
    let q = q as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `q`.
pub fn inv_mod(a: u64, q: u64) -> Result<u64, RingError> {
    if q < 2 {
        return Err(RingError::BadModulus(q));
    }
    let (mut old_r, mut r) = ((a % q) as i128, q as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return Err(RingError::NotCoprime { k: a, q });
    }
    Ok(old_s.rem_euclid(q as i128) as u64)
}

/// Least `P > 0` with `k^P = 1 (mod q)`.
pub fn mult_order(k: u64, q: u64) -> Result<u64, RingError> {
    if q < 2 {
        return Err(RingError::BadModulus(q));
    }
    if gcd_u64(k % q, q) != 1 {
        return Err(RingError::NotCoprime { k, q });
    }
    let k = k % q;
    let mut acc = k;
    let mut p = 1;
    while acc != 1 {
        acc = ((acc as u128 * k as u128) % q as u128) as u64;
        p += 1;
    }
    Ok(p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// Prime powers `p^m <= max` with `p` not dividing `k`, in increasing order.
pub fn prime_powers_coprime_to(k: u64, max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in primes_up_to(max) {
        if k.is_multiple_of(p) {
            continue;
        }
        let mut q = p;
        while q <= max {
            out.push(q);
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
    out.sort_unstable();
    out
}

/// Divisors of `n` greater than one, in decreasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (2..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.reverse();
    out
}
