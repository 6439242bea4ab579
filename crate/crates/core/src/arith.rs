//! Small integer helpers shared by the field and parameter code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// gcd of a signed value with a positive modulus-like quantity.
pub fn gcd_signed(a: i128, b: u64) -> u64 {
    gcd((a.unsigned_abs() % (b as u128).max(1)) as u64, b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n` in increasing order, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduce a signed integer into `[0, m)`.
pub fn reduce(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// Multiplicative inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    (old_r == 1).then(|| reduce(old_s, m))
}

/// Smallest positive `k` with `d * q^k == d (mod modulus)`: the size of the
/// q-cyclotomic orbit of `d`.
pub fn cyclotomic_orbit_size(d: u64, q: u64, modulus: u64) -> u32 {
    let d = d % modulus;
    let mut cur = mul_mod(d, q, modulus);
    let mut k = 1;
    while cur != d {
        cur = mul_mod(cur, q, modulus);
        k += 1;
    }
    k
}

/// The q-cyclotomic orbit of `d` modulo `modulus`, in generation order.
pub fn cyclotomic_orbit(d: u64, q: u64, modulus: u64) -> Vec<u64> {
    let d = d % modulus;
    let mut out = vec![d];
    let mut cur = mul_mod(d, q, modulus);
    while cur != d {
        out.push(cur);
        cur = mul_mod(cur, q, modulus);
    }
    out
}

pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(3) && is_prime(65537));
        assert!(!is_prime(1) && !is_prime(0) && !is_prime(91));
        assert_eq!(prime_factors(728), vec![2, 7, 13]);
        assert_eq!(prime_factors(255), vec![3, 5, 17]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors((1u64 << 32) - 1), vec![3, 5, 17, 257, 65537]);
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(2, 15), Some(8));
        assert_eq!(inv_mod(2, 255), Some(128));
        assert_eq!(inv_mod(2, 8), None);
        assert_eq!(inv_mod(5, 1), Some(0));
    }

    #[test]
    fn orbits() {
        // 51 * 4 = 204, 204 * 4 = 816 = 51 (mod 255)
        assert_eq!(cyclotomic_orbit_size(51, 4, 255), 2);
        assert_eq!(cyclotomic_orbit_size(66, 4, 255), 4);
        assert_eq!(cyclotomic_orbit_size(0, 4, 255), 1);
        assert_eq!(cyclotomic_orbit(66, 4, 255), vec![66, 9, 36, 144]);
    }

    #[test]
    fn signed_helpers() {
        assert_eq!(reduce(-1, 255), 254);
        assert_eq!(gcd_signed(-6, 15), 3);
        assert_eq!(gcd_signed(0, 15), 15);
    }
}
