//! Small integer helpers shared by the field and cyclotomy code.

use alloc::vec::Vec;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
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

/// Returns `(p, m)` with `q = p^m` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = *prime_factors(q).first()?;
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// All odd prime powers `q <= max` as `(p, m)`, ordered by `q`.
pub fn odd_prime_powers(max: u64) -> Vec<(u64, u32)> {
    (3..=max)
        .filter_map(prime_power)
        .filter(|&(p, _)| p != 2)
        .collect()
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Newton iteration from above
    let mut x = n;
    let mut y = x.div_ceil(2);
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Reduces a possibly negative index into `[0, e)`.
#[inline]
pub fn modulo(x: i64, e: usize) -> usize {
    x.rem_euclid(e as i64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(13) && is_prime(2) && !is_prime(1) && !is_prime(91));
        assert_eq!(prime_factors(360), [2, 3, 5]);
        assert_eq!(prime_power(125), Some((5, 3)));
        assert_eq!(prime_power(12), None);
        let qs: Vec<u64> = odd_prime_powers(30)
            .into_iter()
            .map(|(p, m)| p.pow(m))
            .collect();
        assert_eq!(qs, [3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(14, 7), 3432);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(22, 11), 705_432);
    }

    #[test]
    fn isqrt_edges() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
