//! Small integer helpers shared across modules: primality by trial division,
//! factorization, and modular powers. All inputs in this crate are far below
//! the range where these become a bottleneck.

/// Deterministic primality test by trial division. Fine for the word-sized
/// inputs used throughout the census.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`, ascending. Empty for n <= 1.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Prime factorization of `n` as (prime, exponent) pairs, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// x^e mod m via binary powering (m > 0, m^2 must fit in u64; true for all
/// moduli handled here).
pub fn pow_mod(mut x: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    x %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * x % m;
        }
        x = x * x % m;
        e >>= 1;
    }
    acc
}

/// Multiplicative order of `x` modulo `m`, or None if gcd(x, m) != 1.
pub fn mult_order(x: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if num::integer::gcd(x, m) != 1 {
        return None;
    }
    let mut acc = x % m;
    let mut ord = 1u64;
    while acc != 1 {
        acc = acc * (x % m) % m;
        ord += 1;
    }
    Some(ord)
}

/// Least u in 2..m with multiplicative order exactly `k` modulo the prime `m`.
pub fn least_root_of_order(k: u64, m: u64) -> Option<u64> {
    (2..m).find(|&u| mult_order(u, m) == Some(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn factorization_roundtrip() {
        for n in 2..500u64 {
            let f = factorize(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn orders_mod_primes() {
        assert_eq!(mult_order(3, 7), Some(6));
        assert_eq!(mult_order(2, 7), Some(3));
        assert_eq!(least_root_of_order(6, 7), Some(3));
        assert_eq!(least_root_of_order(10, 11), Some(2));
        assert_eq!(least_root_of_order(8, 17), Some(2));
        assert_eq!(mult_order(2, 4), None);
    }
}
