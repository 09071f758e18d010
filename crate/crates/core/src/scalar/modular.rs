//! Small integer helpers for arithmetic modulo prime powers.

/// Largest exponent `k` with `p^k < 2^62`, so products of two residues fit in a `u128`.
pub fn digit_cap(p: u64) -> i64 {
    let mut k = 0;
    let mut acc: u128 = 1;
    while acc * (p as u128) < (1u128 << 62) {
        acc *= p as u128;
        k += 1;
    }
    k
}

pub fn pow_u128(p: u64, k: i64) -> u128 {
    debug_assert!(k >= 0);
    (p as u128).pow(k as u32)
}

/// p-adic valuation of a nonzero integer.
pub fn vp_i128(mut n: i128, p: u64) -> i64 {
    debug_assert!(n != 0);
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn vp_u128(mut n: u128, p: u64) -> i64 {
    if n == 0 {
        return i64::MAX;
    }
    let p = p as u128;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Reduce a signed integer to its least nonnegative residue modulo `m`.
pub fn reduce_i128(n: i128, m: u128) -> u128 {
    let m_i = m as i128;
    let r = n % m_i;
    (if r < 0 { r + m_i } else { r }) as u128
}

/// Inverse of `a` modulo `m` (gcd must be 1).
pub fn inv_mod(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(reduce_i128(old_s, m))
}

#[inline]
pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    (a * b) % m
}

/// Deterministic primality check for the small primes used as `p`.
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
